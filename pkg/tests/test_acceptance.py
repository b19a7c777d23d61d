"""Acceptance criteria 1-11, all exact.  Each test records one verdict line,
printed again in the terminal summary under "acceptance criteria"."""

import time

import pytest

from ihfan import cli
from ihfan.exactalg import Poly
from ihfan.fan import ConewiseFunction, normal_fan, product_fan, star_fan, star_subdivision
from ihfan.hvec import FaceLattice, generalized_h
from ihfan.io import dumps, fixture
from ihfan.lefschetz import certify
from ihfan.pairing import (PairingContext, brion_zeta, kunneth_pairing, local_global_check,
                           phi)
from ihfan.sheafih import MinimalSheaf, build_minimal_sheaf, ih, kunneth_check
from ihfan.timorin import (PolytopeAlgebra, VolumePolynomial, beta_compare, lefschetz_LP_check,
                           vertex_basis)
from oracles import boundary_residue_dims

CERT_SET = [("square-fan", "Hsquare"), ("cube-fan", "Hcube"),
            ("cube-face-fan", "Hoct"), ("pyramid-fan", "Hpyr")]


@pytest.fixture(scope="module")
def certificates(fans):
    return {name: certify(fans(name)[0], fans(name)[1][fname]) for name, fname in CERT_SET}


def test_criterion_1_ih_equals_stanley_h(fans, criterion):
    names = ["f1"] + [f"{m}-gon-fan" for m in range(3, 8)] + \
        ["cube-fan", "cube-face-fan", "pyramid-fan"]
    bad, slow = [], []
    for name in names:
        fan, _ = fans(name)
        t0 = time.perf_counter()
        dims = ih(build_minimal_sheaf(fan), fan).dims
        if time.perf_counter() - t0 >= 30:
            slow.append(name)
        if dims != generalized_h(FaceLattice.of_fan(fan)):
            bad.append(name)
    criterion(1, not bad and not slow,
              f"{len(names)} normal fans; mismatches {bad or 'none'}; over 30 s {slow or 'none'}")
    assert not bad and not slow


def test_criterion_2_square_cone_stalks(fans, criterion):
    fan, _ = fans("cube-face-fan")
    sheaf = build_minimal_sheaf(fan)
    squares = [c for c in fan.maximal if len(c) == 4]
    ok = True
    for sigma in squares:
        oracle = boundary_residue_dims(fan, sigma, 1)
        degs = [2 * k for k, d in enumerate(oracle) for _ in range(d)]
        ok = ok and list(sheaf.gens[sigma]) == degs == [0, 2]
    criterion(2, ok, f"{len(squares)} square cones, generator degrees (0, 2) match the oracle")
    assert ok


def test_criterion_3_nonrational_run(fans, criterion):
    fan, funcs = fans("cube-face-fan-sqrt2")
    t0 = time.perf_counter()
    c = certify(fan, funcs["Hoct"])
    secs = time.perf_counter() - t0
    oracle = generalized_h(FaceLattice.of_fan(fan))
    certs = c["hl"]["pass"] and c["hr"]["pass"] and secs < 120
    literal = c["ih"] == (1, 3, 3, 1)
    criterion(3, literal and certs,
              f"ih {c['ih']} (stated (1,3,3,1); Stanley h of this fan {oracle}); "
              f"HL/HR {'pass' if certs else 'fail'} in {secs:.0f} s")
    assert c["ih"] == oracle
    assert certs


@pytest.mark.xfail(strict=True, reason="the face fan of the cube has ih = h(cube) = (1,5,5,1)")
def test_criterion_3_literal_ih(fans):
    fan, _ = fans("cube-face-fan-sqrt2")
    assert ih(build_minimal_sheaf(fan), fan).dims == (1, 3, 3, 1)


def test_criterion_4_hard_lefschetz(certificates, criterion):
    ok = all(c["hl"]["pass"] and c["hl"]["unimodal"] for c in certificates.values())
    dets = {n: [str(m["determinant"]) for m in c["hl"]["maps"].values()]
            for n, c in certificates.items()}
    criterion(4, ok, f"nonzero determinants {dets}")
    assert ok


def test_criterion_5_hodge_riemann(certificates, criterion):
    ok = all(c["hr"]["pass"] for c in certificates.values())
    q = certificates["square-fan"]["hr"]["forms"][0]
    raw = q["sign"] * q["gram"][0][0]
    ok = ok and q["degree"] == 2 and raw < 0
    criterion(5, ok, f"all pivots positive on {len(certificates)} fans; quadrant (a,a) = {raw} on Prim IH^2")
    assert ok


def test_criterion_6_zeta(fans, criterion):
    ok = True
    count = 0
    for name in ["f1", "square-fan", "cube-fan", "triangle-fan", "simplex-3-fan",
                 "5-gon-fan", "f1-x-square-fan"]:
        fan, _ = fans(name)
        for sigma in fan.maximal:
            ok = ok and brion_zeta(fan, phi(fan, sigma)) == Poly.const(fan.n, 1)
            count += 1
    vols = {}
    for name, fname, want in [("f1", "H", 2), ("square-fan", "Hsquare", 2),
                              ("cube-fan", "Hcube", 6), ("triangle-fan", "H", 1),
                              ("simplex-3-fan", "H", 1)]:
        fan, funcs = fans(name)
        z = brion_zeta(fan, funcs[fname] ** fan.n)
        vols[name] = str(z)
        ok = ok and z == Poly.const(fan.n, want)
    criterion(6, ok, f"zeta(phi_sigma) = 1 on {count} cones; zeta(H^n) = {vols}")
    assert ok


def _zeros(sheaf, m, n):
    return [Poly.zero(n) for _ in sheaf.gens[m]]


def test_criterion_7_pairing_compatibilities(fans, criterion):
    fan, _ = fans("cube-face-fan")
    n = fan.n
    sheaf = MinimalSheaf(fan)
    bary = PairingContext(fan, sheaf, ray_rule="barycentric")
    weig = PairingContext(fan, sheaf, ray_rule="weighted")
    mb = bary.matrix()
    invariance = mb.blocks == weig.matrix().blocks and bary.theta.rays != weig.theta.rays

    # embedding adjointness on [St(v)]
    v = min(fan.used_rays())
    delta = star_fan(fan, [v])
    cdel = PairingContext(delta, sheaf)
    A, R = bary.absolute, cdel.relative
    adjoint = True
    for d, rows in A.lifts.items():
        for a in rows:
            ca = A.space.unpack(d, a)
            for b in R.lifts.get(2 * n - d, []):
                cb = R.space.unpack(2 * n - d, b)
                ext = {m: cb.get(m) or _zeros(sheaf, m, n) for m in fan.maximal}
                lhs = bary.scalar(bary.push(ca), bary.push(ext))
                rhs = cdel.scalar(cdel.push({m: ca[m] for m in delta.maximal}), cdel.push(cb))
                adjoint = adjoint and lhs == rhs

    symmetric = all(blk == [list(r) for r in zip(*mb.blocks[2 * n - d])]
                    for d, blk in mb.blocks.items())

    # disjoint supports: stars of opposite vertices
    w = next(i for i in fan.used_rays() if fan.rays[i] == tuple(-x for x in fan.rays[v]))
    r1 = PairingContext(star_fan(fan, [v]), sheaf).relative
    r2 = PairingContext(star_fan(fan, [w]), sheaf).relative
    vanish = True
    for d, rows in r1.lifts.items():
        for a in rows:
            ca = r1.space.unpack(d, a)
            ea = {m: ca.get(m) or _zeros(sheaf, m, n) for m in fan.maximal}
            for b in r2.lifts.get(2 * n - d, []):
                cb = r2.space.unpack(2 * n - d, b)
                eb = {m: cb.get(m) or _zeros(sheaf, m, n) for m in fan.maximal}
                vanish = vanish and bary.scalar(bary.push(ea), bary.push(eb)) == 0
    ok = invariance and adjoint and symmetric and vanish
    criterion(7, ok, f"subdivision invariance {invariance}, adjointness {adjoint}, "
                     f"symmetry {symmetric}, disjoint vanishing {vanish}")
    assert ok


def test_criterion_8_local_global(fans, criterion):
    sq, _ = fans("square-fan")
    r1 = local_global_check(sq, 0)
    cf, _ = fans("cube-face-fan")
    sigma = cf.maximal[0]
    sub = star_subdivision(cf, sigma, tuple(sum(cf.rays[i][j] for i in sigma) for j in range(3)))
    r2 = local_global_check(sub, len(cf.rays))
    ok = all(r["holds"] and r["psi_iso"]["bijective"] for r in (r1, r2))
    criterion(8, ok, f"quadrant ray: discrepancy {r1['max_discrepancy']}; subdivided cube face fan: "
                     f"discrepancy {r2['max_discrepancy']}; psi bijective in all degrees")
    assert ok


def _sum_function(prod, fa, fb):
    left, right = prod.factors
    off = len(left.rays)
    vals = {i: fa.value_at_ray(i) for i in left.used_rays()}
    vals.update({off + i: fb.value_at_ray(i) for i in right.used_rays()})
    return ConewiseFunction.from_ray_values(prod, vals)


KUNNETH = [("f1", "H", "f1", "H"), ("f1", "H", "square-fan", "Hsquare")]


def test_criterion_9_kunneth(fans, criterion):
    dims_ok = scaled_ok = literal_ok = certs_ok = True
    for a, fa, b, fb in KUNNETH:
        (l, lf), (r, rf) = fans(a), fans(b)
        rep = kunneth_check(l, r)
        dims_ok = dims_ok and rep["absolute"]["match"] and rep["relative"]["match"]
        kp = kunneth_pairing(l, r)
        k = kp["binomial"]
        scaled_ok = scaled_ok and kp["product"] == [[k * x for x in row] for row in kp["kron"]]
        literal_ok = literal_ok and kp["product"] == kp["kron"]
        prod = product_fan(l, r)
        c = certify(prod, _sum_function(prod, lf[fa], rf[fb]))
        certs_ok = certs_ok and c["hl"]["pass"] and c["hr"]["pass"]
    criterion(9, dims_ok and literal_ok and certs_ok,
              f"ih convolution {dims_ok}; pairing = kron {literal_ok} "
              f"(= C(n,n1) * kron {scaled_ok}); HL/HR with l1+l2 {certs_ok}")
    assert dims_ok and scaled_ok and certs_ok


@pytest.mark.xfail(strict=True, reason="with n! zeta on every factor the product pairing is C(n, n1) times the tensor")
def test_criterion_9_literal_tensor(fans):
    for a, _, b, _ in KUNNETH:
        kp = kunneth_pairing(fans(a)[0], fans(b)[0])
        assert kp["product"] == kp["kron"]


def test_criterion_10_timorin(polytopes, criterion):
    parts = {}
    for name in ["unit-square", "unit-cube", "triangle", "simplex-3", "segment"]:
        P = polytopes(name)
        alg = PolytopeAlgebra(VolumePolynomial(P))
        h = generalized_h(FaceLattice.of_fan(normal_fan(P)[0]))
        vb = vertex_basis(P, alg)
        lp = lefschetz_LP_check(alg)
        beta = beta_compare(P, alg)
        parts[name] = (alg.dims == h and vb["independent"] and vb["dims"] == h
                       and lp["pass"] and beta["isometry"] and beta["pass"], str(lp["LnVol"]))
    want = {"segment": "2", "unit-square": "2", "unit-cube": "6"}
    values = all(parts[k][1] == v for k, v in want.items())
    ok = all(p[0] for p in parts.values()) and values
    criterion(10, ok, "dims = h, vertex bases, L_P^n Vol = n!Vol "
                      f"{ {k: parts[k][1] for k in want} }, beta isometry on {len(parts)} polytopes")
    assert ok


F = fixture
SUITE = [
    ["ih", F("cube-face-fan")], ["ih", F("pyramid-fan")], ["hvector", F("cube-face-fan")],
    ["check-hr", F("square-fan"), "--lefschetz", "Hsquare"],
    ["check-hr", F("cube-face-fan"), "--lefschetz", "Hoct"],
    ["zeta", F("square-fan"), "--function", "Hsquare", "--power", "2"],
    ["pairing", F("pyramid-fan")], ["subdivide", F("cube-face-fan"), "--lefschetz", "Hoct"],
    ["volume-poly", "--polytope", F("unit-cube")],
    ["polytope-algebra", "--polytope", F("unit-cube")],
    ["kunneth", F("f1"), F("square-fan")], ["local-global", F("square-fan"), "--ray", "0"],
]


def _suite_reports():
    out = []
    for argv in SUITE:
        code, rep = cli.run(argv)
        out.append((code, dumps(rep)))
    return out


def test_criterion_11_determinism(criterion):
    t0 = time.perf_counter()
    first = _suite_reports()
    secs = time.perf_counter() - t0
    second = _suite_reports()
    same = first == second
    codes = all(code == 0 for code, _ in first)
    ok = same and codes and secs < 600
    criterion(11, ok, f"{len(SUITE)} reports byte-identical across two runs {same}; "
                      f"one pass takes {secs:.0f} s")
    assert ok
