"""Command line front end.  Every subcommand prints one JSON report.

Exit codes: 0 pass, 2 input could not be parsed, 3 a precondition failed,
4 a certificate or oracle comparison was falsified.
"""

import argparse
import sys
import time

from . import __version__
from .exactalg.scalar import FieldMismatch
from .fan.fan import FanError
from .fan.functions import IncompatibleFunction, is_strictly_convex
from .io import ParseError, dumps, fan_to_doc, read_fan, read_polytope

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_FALSIFIED = 0, 2, 3, 4


class Precondition(Exception):
    pass


def _function(funcs, name, flag="--function"):
    if name is None:
        raise Precondition(f"{flag} NAME is required")
    if name not in funcs:
        raise Precondition(f"no function named {name!r} in the fan file")
    return funcs[name]


def _sheaf_and_ih(fan, relative=False, cutoff=None):
    from .sheafih import build_minimal_sheaf, ih
    sheaf = build_minimal_sheaf(fan)
    return sheaf, ih(sheaf, fan, relative=relative, cutoff=cutoff)


def cmd_ih(args):
    from .sheafih import quasiconvex_certificate
    fan, _ = read_fan(args.fan)
    sheaf, space = _sheaf_and_ih(fan, args.relative, args.degree_cutoff)
    stalks = {" ".join(map(str, sorted(c))): list(sheaf.gens[c])
              for c in fan.cones if len(c) > fan.dim(c)}
    cert = quasiconvex_certificate(sheaf, fan)
    return {"ih": list(space.dims), "relative": args.relative, "fan": fan.describe(),
            "nonsimplicial_stalks": stalks, "quasi_convex": cert["reason"]}, True


def cmd_hvector(args):
    from .hvec import FaceLattice, compare_ih, generalized_h
    if args.polytope:
        P = read_polytope(args.polytope)
        h = generalized_h(FaceLattice.of_polytope(P))
        return {"h": list(h), "source": "face lattice", "f": P.f_vector()}, True
    if not args.fan:
        raise Precondition("give a fan file or --polytope")
    fan, _ = read_fan(args.fan)
    if not fan.complete:
        raise Precondition("the cone poset of a complete fan is required")
    rep = compare_ih(fan)
    return {"h": list(rep["h"]), "ih": list(rep["ih"]), "match": rep["match"],
            "source": "cone poset"}, rep["match"]


def _certify(args):
    from .lefschetz import certify
    fan, funcs = read_fan(args.fan)
    l = _function(funcs, args.lefschetz, "--lefschetz")
    ok, wit = is_strictly_convex(l)
    if not ok:
        raise Precondition(f"{args.lefschetz} is not strictly convex (witness {wit})")
    if not fan.complete:
        raise Precondition("fan is not complete")
    return certify(fan, l)


def _hl_doc(hl):
    return {"maps": {str(k): {"source_degree": m["source_degree"], "matrix": m["matrix"],
                              "determinant": m["determinant"], "ok": m["ok"]}
                     for k, m in hl["maps"].items()},
            "unimodal": hl["unimodal"], "pass": hl["pass"]}


def _hr_doc(hr):
    return {"forms": {str(k): {"degree": f["degree"], "prim_dim": f["prim_dim"],
                               "sign": f["sign"], "gram": f["gram"], "pivots": f["pivots"],
                               "method": f["method"], "ok": f["ok"]}
                      for k, f in hr["forms"].items()},
            "decomposition": hr["decomposition"], "pass": hr["pass"]}


def cmd_check_hl(args):
    c = _certify(args)
    return {"ih": list(c["ih"]), "hl": _hl_doc(c["hl"])}, c["hl"]["pass"]


def cmd_check_hr(args):
    c = _certify(args)
    ok = c["hl"]["pass"] and c["hr"]["pass"]
    return {"ih": list(c["ih"]), "hl": _hl_doc(c["hl"]), "hr": _hr_doc(c["hr"]),
            "self_adjoint": c["self_adjoint"]}, ok and c["self_adjoint"]


def cmd_zeta(args):
    from .pairing import brion_zeta
    fan, funcs = read_fan(args.fan)
    f = _function(funcs, args.function)
    if not fan.is_simplicial():
        raise Precondition("zeta is defined on simplicial fans")
    if not fan.complete:
        raise Precondition("zeta of a global function needs a complete fan")
    value = brion_zeta(fan, f ** args.power)
    return {"function": args.function, "power": args.power, "zeta": value}, True


def cmd_pairing(args):
    from .pairing import ih_pairing_matrix
    fan, _ = read_fan(args.fan)
    pm = ih_pairing_matrix(fan)
    dets = pm.determinants()
    ok = pm.nondegenerate()
    return {"pairing": {"blocks": {str(d): b for d, b in pm.blocks.items()},
                        "determinants": {str(d): v for d, v in dets.items()}},
            "ih": list(pm.row_dims), "relative_ih": list(pm.col_dims),
            "nondegenerate": ok}, ok


def cmd_subdivide(args):
    from .fan.subdivision import desingularize
    fan, funcs = read_fan(args.fan)
    l = funcs[args.lefschetz] if args.lefschetz else None
    if args.lefschetz and args.lefschetz not in funcs:
        raise Precondition(f"no function named {args.lefschetz!r}")
    if l is not None and not is_strictly_convex(l)[0]:
        raise Precondition("function is not strictly convex")
    steps = desingularize(fan, l)
    final = steps[-1].fan if steps else fan
    out = {"steps": [{"cone": sorted(s.sigma), "ray": list(s.fan.rays[s.ray]),
                      "epsilon": s.epsilon} for s in steps],
           "final": fan_to_doc(final, {"l": steps[-1].function} if steps and l else None),
           "simplicial": final.is_simplicial()}
    ok = final.is_simplicial()
    if l is not None and steps:
        out["strictly_convex"] = is_strictly_convex(steps[-1].function)[0]
        ok = ok and out["strictly_convex"]
    return out, ok


def _polytope(args):
    if not args.polytope:
        raise Precondition("--polytope FILE is required")
    return read_polytope(args.polytope)


def cmd_volume_poly(args):
    from .timorin import VolumePolynomial
    P = _polytope(args)
    if not P.is_simple():
        raise Precondition("polytope is not simple")
    V = VolumePolynomial(P)
    return {"vol": V.poly, "support": V.H, "volume": V.volume,
            "normals": [list(x) for x in P.normals],
            "translation_invariant": V.translation_invariant()}, V.translation_invariant()


def cmd_polytope_algebra(args):
    from .timorin import (PolytopeAlgebra, VolumePolynomial, beta_compare,
                          lefschetz_LP_check, vertex_basis)
    P = _polytope(args)
    if not P.is_simple():
        raise Precondition("polytope is not simple")
    alg = PolytopeAlgebra(VolumePolynomial(P))
    vb = vertex_basis(P, alg, seed=args.seed)
    lp = lefschetz_LP_check(alg)
    beta = beta_compare(P, alg)
    rels = alg.empty_intersection_relations()
    ok = (vb["independent"] and vb["dims"] == alg.dims and lp["pass"] and beta["pass"]
          and all(r for _, r in rels))
    return {"dims": list(alg.dims),
            "vertex_basis": {"t": vb["t"], "dims": list(vb["dims"]),
                             "independent": vb["independent"]},
            "lefschetz": {"LnVol": lp["LnVol"], "n!Vol": lp["n!Vol"],
                          "hl_determinants": {str(k): v for k, v in lp["hl"].items()},
                          "hr_pivots": {str(k): v["pivots"] for k, v in lp["hr"].items()}},
            "beta": {"isometry": beta["isometry"], "dims_match": beta["dims_match"],
                     "beta_LP_is_HP": beta["beta_LP_is_HP"]},
            "ideal": "consistent with generation by the translation and empty-face relations",
            "seed": args.seed}, ok


def cmd_kunneth(args):
    from .pairing import kunneth_pairing
    from .sheafih import kunneth_check
    left, _ = read_fan(args.fan)
    if not args.other:
        raise Precondition("kunneth needs two fan files")
    right, _ = read_fan(args.other)
    rep = kunneth_check(left, right)
    kp = kunneth_pairing(left, right)
    b = kp["binomial"]
    scaled = all(p == b * q for r1, r2 in zip(kp["product"], kp["kron"]) for p, q in zip(r1, r2))
    ok = rep["absolute"]["match"] and rep["relative"]["match"] and scaled
    return {"absolute": {k: list(v) if isinstance(v, tuple) else v
                         for k, v in rep["absolute"].items()},
            "relative": {k: list(v) if isinstance(v, tuple) else v
                         for k, v in rep["relative"].items()},
            "pairing_product": kp["product"], "pairing_kron": kp["kron"],
            "binomial": b, "product_equals_binomial_times_kron": scaled,
            "product_equals_kron": kp["product"] == kp["kron"]}, ok


def cmd_local_global(args):
    from .pairing import local_global_check
    fan, _ = read_fan(args.fan)
    if args.ray is None:
        raise Precondition("--ray INDEX is required")
    try:
        rep = local_global_check(fan, args.ray)
    except ValueError as exc:
        raise Precondition(str(exc)) from None
    ok = rep["holds"] and rep["psi_iso"]["bijective"]
    return {"lhs": rep["lhs"], "rhs": rep["rhs"], "max_discrepancy": rep["max_discrepancy"],
            "projected_ih": list(rep["phi_ih"]), "psi_bijective": rep["psi_iso"]["bijective"],
            "holds": rep["holds"]}, ok


COMMANDS = {
    "ih": cmd_ih, "hvector": cmd_hvector, "check-hl": cmd_check_hl, "check-hr": cmd_check_hr,
    "zeta": cmd_zeta, "pairing": cmd_pairing, "subdivide": cmd_subdivide,
    "volume-poly": cmd_volume_poly, "polytope-algebra": cmd_polytope_algebra,
    "kunneth": cmd_kunneth, "local-global": cmd_local_global,
}


def build_parser():
    p = argparse.ArgumentParser(prog="ihfan", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"ihfan {__version__}")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("fan", nargs="?", help="fan file")
    p.add_argument("other", nargs="?", help="second fan file (kunneth)")
    p.add_argument("--lefschetz", metavar="NAME")
    p.add_argument("--function", metavar="NAME")
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--polytope", metavar="FILE")
    p.add_argument("--relative", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ray", type=int)
    p.add_argument("--degree-cutoff", type=int)
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock timings (reports are then not reproducible)")
    return p


def _field_sqrt(args):
    import json
    for path in (args.fan, args.polytope):
        if path:
            try:
                with open(path) as fh:
                    f = json.load(fh).get("field", "Q")
                return f.get("sqrt") if isinstance(f, dict) else None
            except (OSError, ValueError, AttributeError):
                return None
    return None


def run(argv=None):
    """Run a command; returns ``(exit code, report dict)``."""
    args = build_parser().parse_args(argv)
    report = {"command": args.command, "tool": "ihfan", "version": __version__}
    if args.command == "polytope-algebra":
        report["seed"] = args.seed
    t0 = time.perf_counter()
    try:
        result, ok = COMMANDS[args.command](args)
        code = EXIT_OK if ok else EXIT_FALSIFIED
        report["result"] = result
        report["pass"] = ok
    except (ParseError, FieldMismatch, OSError) as exc:
        code = EXIT_PARSE
        report["error"] = {"kind": "parse", "message": str(exc)}
    except (Precondition, FanError, IncompatibleFunction) as exc:
        code = EXIT_PRECONDITION
        report["error"] = {"kind": "precondition", "message": str(exc)}
    except Exception as exc:  # reported, not swallowed: exit code says falsified
        from .sheafih import SheafError
        if isinstance(exc, SheafError) and "quasi-convex" in str(exc):
            code = EXIT_PRECONDITION
            report["error"] = {"kind": "precondition", "message": str(exc)}
        else:
            raise
    report["field_sqrt"] = _field_sqrt(args)
    if args.timings:
        report["seconds"] = round(time.perf_counter() - t0, 3)
    return code, report


def main(argv=None):
    code, report = run(argv)
    sys.stdout.write(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
