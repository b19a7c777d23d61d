import json

import pytest

from ihfan import cli
from ihfan.io import (ParseError, dumps, fan_to_doc, fixture, read_fan, read_polytope,
                      verify_report)


def run(*argv):
    code, report = cli.run(list(argv))
    return code, json.loads(dumps(report))


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


QUADRANT = {"field": "Q", "dim": 2, "rays": [["1", "0"], ["0", "1"], ["-1", "0"], ["0", "-1"]],
            "cones": [[0, 1], [1, 2], [2, 3], [3, 0]],
            "functions": {"l": [["1", "1"], ["-1", "1"], ["-1", "-1"], ["1", "-1"]],
                          "flat": [["1", "0"], ["1", "0"], ["1", "0"], ["1", "0"]]}}


def test_ih_cube_face_fan():
    code, rep = run("ih", fixture("cube-face-fan"))
    assert code == 0 and rep["result"]["ih"] == [1, 5, 5, 1]
    assert set(map(tuple, rep["result"]["nonsimplicial_stalks"].values())) == {(0, 2)}


def test_check_hr_square_fan():
    code, rep = run("check-hr", fixture("square-fan"), "--lefschetz", "Hsquare")
    assert code == 0 and rep["pass"]
    for f in rep["result"]["hr"]["forms"].values():
        assert all(json.loads(p) > 0 for p in f["pivots"])


def test_zeta_square_fan():
    code, rep = run("zeta", fixture("square-fan"), "--function", "Hsquare", "--power", "2")
    assert code == 0 and rep["result"]["zeta"] == "2"


def test_sqrt2_report_strings():
    code, rep = run("check-hl", fixture("cube-face-fan-sqrt2"), "--lefschetz", "Hoct")
    assert code == 0 and rep["field_sqrt"] == 2
    assert any("sqrt2" in m["determinant"] for m in rep["result"]["hl"]["maps"].values())
    assert verify_report(rep) == (True, [])


@pytest.mark.parametrize("argv", [
    ("check-hr", "cube-face-fan", "--lefschetz", "Hoct"),
    ("pairing", "pyramid-fan"),
    ("ih", "pyramid-fan"),
])
def test_reports_verify_offline(argv):
    code, rep = run(argv[0], fixture(argv[1]), *argv[2:])
    assert code == 0
    assert verify_report(rep) == (True, [])


def test_tampered_report_fails_verification():
    _, rep = run("check-hr", fixture("square-fan"), "--lefschetz", "Hsquare")
    rep["result"]["hl"]["maps"]["2"]["determinant"] = "3"
    ok, problems = verify_report(rep)
    assert not ok and problems
    _, rep = run("pairing", fixture("square-fan"))
    rep["result"]["pairing"]["blocks"]["2"][0][1] = "5"
    assert not verify_report(rep)[0]


def test_reports_are_byte_identical(capsys):
    outs = []
    for _ in range(2):
        assert cli.main(["pairing", fixture("cube-face-fan")]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_timings_only_on_request():
    _, rep = run("ih", fixture("f1"))
    assert "seconds" not in rep
    _, rep = run("ih", fixture("f1"), "--timings")
    assert "seconds" in rep


def test_other_commands(tmp_path):
    assert run("hvector", "--polytope", fixture("pyramid"))[1]["result"]["h"] == [1, 2, 2, 1]
    assert run("hvector", fixture("pyramid-fan"))[0] == 0
    code, rep = run("subdivide", fixture("pyramid-fan"), "--lefschetz", "Hpyr")
    assert code == 0 and rep["result"]["simplicial"] and rep["result"]["strictly_convex"]
    # the subdivided fan is itself a valid fan file
    path = write(tmp_path, "sub.json", rep["result"]["final"])
    fan, funcs = read_fan(path)
    assert fan.is_simplicial() and "l" in funcs
    assert run("volume-poly", "--polytope", fixture("unit-cube"))[0] == 0
    code, rep = run("polytope-algebra", "--polytope", fixture("unit-square"), "--seed", "4")
    assert code == 0 and rep["seed"] == 4
    assert run("kunneth", fixture("f1"), fixture("square-fan"))[0] == 0
    assert run("local-global", fixture("square-fan"), "--ray", "0")[0] == 0
    assert run("check-hl", fixture("f1-x-square-fan"), "--lefschetz", "l")[0] == 3


# exit codes

def test_parse_errors(tmp_path):
    bad_json = write(tmp_path, "a.json", "{not json")
    assert run("ih", bad_json)[0] == cli.EXIT_PARSE
    doc = dict(QUADRANT, rays=[["1", "0"], ["0", "x"], ["-1", "0"], ["0", "-1"]])
    assert run("ih", write(tmp_path, "b.json", doc))[0] == cli.EXIT_PARSE
    doc = dict(QUADRANT, field={"sqrt": 4})
    assert run("ih", write(tmp_path, "c.json", doc))[0] == cli.EXIT_PARSE
    doc = dict(QUADRANT, rays=[["1", "sqrt3"], ["0", "1"], ["-1", "0"], ["0", "-1"]], field={"sqrt": 2})
    assert run("ih", write(tmp_path, "d.json", doc))[0] == cli.EXIT_PARSE
    doc = dict(QUADRANT, rays=[["1"], ["0", "1"], ["-1", "0"], ["0", "-1"]])
    assert run("ih", write(tmp_path, "e.json", doc))[0] == cli.EXIT_PARSE
    assert run("ih", str(tmp_path / "missing.json"))[0] == cli.EXIT_PARSE


def test_precondition_failures(tmp_path):
    q = write(tmp_path, "q.json", QUADRANT)
    assert run("check-hl", q)[0] == cli.EXIT_PRECONDITION
    assert run("check-hl", q, "--lefschetz", "nope")[0] == cli.EXIT_PRECONDITION
    assert run("check-hl", q, "--lefschetz", "flat")[0] == cli.EXIT_PRECONDITION
    assert run("check-hl", q, "--lefschetz", "l")[0] == 0
    assert run("zeta", fixture("cube-face-fan"), "--function", "Hoct")[0] == cli.EXIT_PRECONDITION
    assert run("volume-poly")[0] == cli.EXIT_PRECONDITION
    assert run("volume-poly", "--polytope", fixture("octahedron"))[0] == cli.EXIT_PRECONDITION
    assert run("local-global", q)[0] == cli.EXIT_PRECONDITION
    overlap = dict(QUADRANT, cones=[[0, 1], [1, 2], [2, 3], [3, 0], [0, 2]])
    code, rep = run("ih", write(tmp_path, "o.json", overlap))
    assert code == cli.EXIT_PRECONDITION and rep["error"]["kind"] == "precondition"
    nonpure = {"dim": 2, "rays": [["1", "0"], ["0", "1"], ["-1", "-1"]], "cones": [[0, 1], [2]]}
    assert run("ih", write(tmp_path, "np.json", nonpure))[0] == cli.EXIT_PRECONDITION


def test_falsification_exit_code(monkeypatch):
    monkeypatch.setitem(cli.COMMANDS, "ih", lambda args: ({"ih": []}, False))
    code, rep = run("ih", fixture("f1"))
    assert code == cli.EXIT_FALSIFIED and rep["pass"] is False


# file formats

def test_fan_roundtrip(fans):
    fan, funcs = fans("pyramid-fan")
    again, f2 = read_fan(fan_to_doc(fan, funcs))
    assert again.rays == fan.rays and again.maximal == fan.maximal
    assert f2["Hpyr"].pieces == funcs["Hpyr"].pieces


def test_function_rows_must_match_cones():
    doc = dict(QUADRANT, functions={"l": [["1", "1"]]})
    with pytest.raises(ParseError):
        read_fan(doc)


def test_polytope_file():
    P = read_polytope(fixture("octahedron-sqrt2"))
    assert P.f_vector() == [6, 12, 8]
    with pytest.raises(ParseError):
        read_polytope({"dim": 2})
