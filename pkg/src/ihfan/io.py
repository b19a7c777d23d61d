"""Fan and polytope files, report serialization and offline re-verification.

A fan file is JSON::

    {"field": "Q" | {"sqrt": 2}, "dim": 2,
     "rays": [["1", "0"], ["0", "1"], ...],
     "cones": [[0, 1], [1, 2], ...],
     "functions": {"H": [["1", "1"], ...]}}

Function rows give one linear form per listed cone, in the order of
``cones``.  A polytope file has ``"vertices"`` instead of rays and cones.
Scalars are strings such as ``"-3/2"`` or ``"1/2+1/3*sqrt2"``.
"""

import json
from fractions import Fraction
from importlib import resources

from .exactalg.linalg import det, leading_pivots
from .exactalg.poly import Poly
from .exactalg.scalar import QuadElt, _is_squarefree, parse_scalar, sign, to_str
from .fan.fan import validate_fan
from .fan.functions import ConewiseFunction
from .fan.polytope import Polytope


class ParseError(ValueError):
    pass


def _field(doc):
    f = doc.get("field", "Q")
    if f == "Q":
        return None
    if isinstance(f, dict) and set(f) == {"sqrt"} and isinstance(f["sqrt"], int) \
            and _is_squarefree(f["sqrt"]):
        return f["sqrt"]
    raise ParseError(f"unknown field descriptor {f!r}")


def _rows(rows, d, n, what):
    out = []
    for r in rows:
        if not isinstance(r, list) or len(r) != n:
            raise ParseError(f"{what} row {r!r} does not have {n} entries")
        try:
            out.append(tuple(parse_scalar(x, d) for x in r))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar in {what}: {exc}") from None
    return out


def _load(source):
    if isinstance(source, dict):
        return source
    try:
        with open(source) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: not valid JSON ({exc})") from None


def read_fan(source):
    """Return ``(fan, functions)`` from a fan file or an already-loaded dict."""
    doc = _load(source)
    for key in ("dim", "rays", "cones"):
        if key not in doc:
            raise ParseError(f"fan file lacks {key!r}")
    d = _field(doc)
    n = doc["dim"]
    rays = _rows(doc["rays"], d, n, "ray")
    cones = doc["cones"]
    if not all(isinstance(c, list) and all(isinstance(i, int) for i in c) for c in cones):
        raise ParseError("cones must be lists of ray indices")
    fan = validate_fan(rays, cones, field=d)
    funcs = {}
    for name, rows in doc.get("functions", {}).items():
        if len(rows) != len(cones):
            raise ParseError(f"function {name!r} needs one row per cone")
        coeffs = _rows(rows, d, n, f"function {name}")
        pieces = {frozenset(c): Poly.linear(list(r)) for c, r in zip(cones, coeffs)}
        funcs[name] = ConewiseFunction(fan, pieces)
    return fan, funcs


def read_polytope(source):
    doc = _load(source)
    if "vertices" not in doc or "dim" not in doc:
        raise ParseError("polytope file needs 'dim' and 'vertices'")
    d = _field(doc)
    return Polytope(_rows(doc["vertices"], d, doc["dim"], "vertex"))


def fixture(name):
    """Path of a shipped fixture, e.g. ``fixture("cube-face-fan")``."""
    return str(resources.files("ihfan") / "fixtures" / f"{name}.json")


def _field_doc(field):
    return "Q" if field is None else {"sqrt": field}


def fan_to_doc(fan, functions=None, name=None):
    used = fan.used_rays()
    index = {i: k for k, i in enumerate(used)}
    cones = [sorted(index[i] for i in c) for c in fan.maximal]
    doc = {"field": _field_doc(fan.field), "dim": fan.n,
           "rays": [[to_str(x) for x in fan.rays[i]] for i in used], "cones": cones}
    if name:
        doc["name"] = name
    if functions:
        doc["functions"] = {}
        for key, f in functions.items():
            rows = []
            for c in fan.maximal:
                p = f.pieces[c]
                rows.append([to_str(p.terms.get(tuple(int(j == i) for j in range(fan.n)), 0))
                             for i in range(fan.n)])
            doc["functions"][key] = rows
    return doc


def polytope_to_doc(P, name=None, field=None):
    doc = {"field": _field_doc(field), "dim": P.n,
           "vertices": [[to_str(x) for x in v] for v in P.vertices]}
    if name:
        doc["name"] = name
    return doc


# reports

def encode(obj):
    """Turn results into JSON-ready data with exact scalars as strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, (Fraction, QuadElt)):
        return to_str(obj)
    if isinstance(obj, Poly):
        return str(obj)
    if isinstance(obj, frozenset):
        return sorted(obj)
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    return str(obj)


def dumps(report):
    return json.dumps(encode(report), sort_keys=True, indent=2) + "\n"


def _scalar(s, d):
    return parse_scalar(s, d)


def _matrix(rows, d):
    return [[_scalar(x, d) for x in r] for r in rows]


def verify_report(doc):
    """Re-check the arithmetic stored in a report; returns ``(ok, problems)``.

    Determinants of Lefschetz and pairing blocks are recomputed, Gram
    matrices are re-pivoted and compared with the stored pivots, and
    Poincare symmetry of ih vectors is checked.
    """
    problems = []
    d = doc.get("field_sqrt")
    res = doc.get("result", {})
    cmd = doc.get("command")
    if "ih" in res and cmd in ("ih", "check-hl", "check-hr") and not res.get("relative"):
        v = res["ih"]
        if v != v[::-1]:
            problems.append("ih vector is not palindromic")
    hl = res.get("hl")
    if hl:
        for k, m in hl.get("maps", {}).items():
            mat = _matrix(m["matrix"], d)
            got = det(mat) if mat else Fraction(1)
            if to_str(got) != m["determinant"]:
                problems.append(f"l^{k} determinant mismatch")
            if got == 0:
                problems.append(f"l^{k} is singular")
    hr = res.get("hr")
    if hr:
        for k, f in hr.get("forms", {}).items():
            g = _matrix(f["gram"], d)
            piv = leading_pivots(g) if g else []
            if [to_str(p) for p in piv] != f["pivots"]:
                problems.append(f"pivots of form {k} do not match")
            if f["method"] == "pivots" and not all(sign(p) > 0 for p in piv):
                problems.append(f"form {k} is not positive definite")
    pm = res.get("pairing")
    if pm:
        for deg, blk in pm.get("blocks", {}).items():
            mat = _matrix(blk, d)
            got = det(mat) if mat and len(mat) == len(mat[0]) else Fraction(0)
            if to_str(got) != pm["determinants"][deg]:
                problems.append(f"pairing block {deg} determinant mismatch")
    return not problems, problems
