"""Volume polynomial and polytope algebra of a simple polytope.

``Vol(H_1, ..., H_m)`` is the volume of ``{x : xi_i . x <= H_i}`` near the
support numbers of ``P``; it is recovered by exact interpolation from
volumes of nearby polytopes of the same combinatorial type.  The algebra
``A(P)`` is realized through derivatives of ``Vol``: ``A_k`` is the span of
``d^alpha Vol`` over ``|alpha| = k``.
"""

import random
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial

from .exactalg.linalg import Echelon, det, kernel, leading_pivots, solve, sparse
from .exactalg.poly import Poly, monomials
from .exactalg.scalar import sign
from .fan.fan import FanError
from .fan.geometry import dot


class CombinatorialTypeError(RuntimeError):
    pass


def _pulling_triangulation(P):
    """Simplices (as vertex-index tuples) of a triangulation of ``P``."""
    fl = P.face_lattice()
    by_dim = {}
    for f, d in fl.items():
        by_dim.setdefault(d, []).append(f)

    def facets_of(face, d):
        return [g for g in by_dim.get(d - 1, []) if g < face]

    memo = {}

    def tri(face, d):
        key = face
        if key in memo:
            return memo[key]
        if d == 0:
            out = [(min(face),)]
        else:
            v0 = min(face)
            out = []
            for g in facets_of(face, d):
                if v0 in g:
                    continue
                for s in tri(g, d - 1):
                    out.append((v0,) + s)
        memo[key] = out
        return out

    return tri(frozenset(range(len(P.vertices))), P.n)


def _vertices_for(P, H):
    """Vertex coordinates of the polytope with the same normals and support ``H``."""
    out = []
    for fs in P.vertex_facets:
        idx = sorted(fs)[:P.n]
        rows = [sparse(P.normals[i]) for i in idx]
        x = solve(rows, [H[i] for i in idx], P.n)
        out.append(tuple(x.get(j, Fraction(0)) for j in range(P.n)))
    return out


def _same_type(P, H, verts):
    for v, fs in zip(verts, P.vertex_facets):
        for i, (xi, h) in enumerate(zip(P.normals, H)):
            s = sign(h - dot(xi, v))
            if (i in fs and s != 0) or (i not in fs and s <= 0):
                return False
    return True


def _volume(P, simplices, verts):
    n = P.n
    total = Fraction(0)
    for s in simplices:
        base = verts[s[0]]
        mat = [[verts[i][j] - base[j] for j in range(n)] for i in s[1:]]
        total = total + abs(det(mat))
    return total / factorial(n)


class VolumePolynomial:
    """``Vol`` as a homogeneous degree-``n`` Poly in the support numbers."""

    def __init__(self, P, max_halvings=20):
        if not P.is_simple():
            raise FanError("volume polynomial needs a simple polytope")
        self.P = P
        self.n, self.m = P.n, P.m
        self.H = list(P.support)
        simp = _pulling_triangulation(P)
        self.volume = _volume(P, simp, P.vertices)
        slack = min(self.H[i] - dot(P.normals[i], v)
                    for v, fs in zip(P.vertices, P.vertex_facets)
                    for i in range(self.m) if i not in fs)
        mons = monomials(self.m, self.n)
        r = slack / 4
        for _ in range(max_halvings + 1):
            nodes = [[h + r * e for h, e in zip(self.H, mon)] for mon in mons]
            samples = []
            for node in nodes:
                verts = _vertices_for(P, node)
                if not _same_type(P, node, verts):
                    break
                samples.append(_volume(P, simp, verts))
            else:
                if sum(self.H) + r * self.n != 0:
                    break
            r = r / 2
        else:
            raise CombinatorialTypeError("no sample radius keeps the combinatorial type")
        self.radius = r
        rows = [sparse([_monomial_value(node, mon) for mon in mons]) for node in nodes]
        x = solve(rows, samples, len(mons))
        if x is None:
            raise CombinatorialTypeError("interpolation system is inconsistent")
        self.poly = Poly(self.m, {mon: c for mon, c in ((mons[i], x.get(i, 0)) for i in range(len(mons))) if c != 0})
        if self.poly.evaluate(self.H) != self.volume:
            raise CombinatorialTypeError("interpolated polynomial misses Vol(P)")

    def __call__(self, H):
        return self.poly.evaluate(H)

    def translation_invariant(self):
        """``sum_i xi_i(a) d_i Vol = 0`` for every coordinate vector ``a``."""
        for a in range(self.n):
            total = Poly.zero(self.m)
            for i, xi in enumerate(self.P.normals):
                if xi[a] != 0:
                    total = total + self.poly.diff(i).scale(xi[a])
            if total:
                return False
        return True


def _monomial_value(point, mon):
    v = Fraction(1)
    for x, e in zip(point, mon):
        if e:
            v = v * x ** e
    return v


def volume_polynomial(P):
    return VolumePolynomial(P)


def _derivative(poly, alpha):
    """Apply ``d^alpha`` (alpha given as a tuple of variable indices)."""
    for i in alpha:
        poly = poly.diff(i)
        if not poly:
            break
    return poly


class PolytopeAlgebra:
    """Graded pieces ``A_k`` with echelon bases of derivative monomials."""

    def __init__(self, vol):
        self.vol = vol
        self.n, self.m = vol.n, vol.m
        self.basis = {}
        self._ech = {}
        for k in range(self.n + 1):
            e = Echelon()
            chosen = []
            deg = self.n - k
            for alpha in combinations_with_replacement(range(self.m), k):
                img = _derivative(vol.poly, alpha)
                if e.insert(sparse(img.vector(deg)), {len(chosen): Fraction(1)}) is not None:
                    chosen.append(alpha)
            self.basis[k] = chosen
            self._ech[k] = e

    @property
    def dims(self):
        return tuple(len(self.basis[k]) for k in range(self.n + 1))

    def image(self, alpha):
        return _derivative(self.vol.poly, alpha)

    def coords(self, k, poly):
        """Coordinates in the ``A_k`` basis of a polynomial of degree ``n - k``."""
        c = self._ech[k].coordinates(sparse(poly.vector(self.n - k)))
        return [c.get(i, Fraction(0)) for i in range(len(self.basis[k]))]

    def in_ideal(self, alpha):
        return not self.image(alpha)

    def empty_intersection_relations(self):
        """``D_{i1..ik}`` lies in ``I`` whenever those facets do not meet."""
        P = self.vol.P
        out = []
        for k in range(2, self.n + 1):
            for idx in combinations_with_replacement(range(self.m), k):
                if len(set(idx)) < k:
                    continue
                meet = frozenset.intersection(*[P.facet_vertices[i] for i in idx])
                if not meet:
                    out.append((idx, self.in_ideal(idx)))
        return out

    def pairing(self, k):
        """``(a, b)_T = a b Vol`` between the bases of ``A_k`` and ``A_{n-k}``."""
        return [[_derivative(self.vol.poly, a + b).constant() for b in self.basis[self.n - k]]
                for a in self.basis[k]]

    def lefschetz(self):
        H = self.vol.H
        return lambda poly: sum((poly.diff(i).scale(h) for i, h in enumerate(H) if h != 0),
                                Poly.zero(self.m))


def polytope_algebra(vol):
    return PolytopeAlgebra(vol)


def generic_functional(P, seed=0, tries=100):
    rng = random.Random(seed)
    for _ in range(tries):
        t = [Fraction(rng.randint(-1000, 1000), rng.randint(1, 97)) for _ in range(P.n)]
        vals = [dot(t, v) for v in P.vertices]
        if len(set(vals)) == len(vals):
            return t
    raise ValueError("no generic functional found")


def vertex_basis(P, alg, t=None, seed=0):
    """Monomials ``D_F(p)`` grouped by ``index(p)``, with an independence check."""
    if t is not None:
        vals = [dot(t, v) for v in P.vertices]
        if len(set(vals)) != len(vals):
            t = None
    if t is None:
        t = generic_functional(P, seed)
    fl = P.face_lattice()
    edges = [f for f, d in fl.items() if d == 1]
    vf = P.vertex_facets
    out = {}
    for p, v in enumerate(P.vertices):
        tp = dot(t, v)
        down = [e for e in edges if p in e and dot(t, P.vertices[next(iter(e - {p}))]) < tp]
        facets = [i for i in sorted(vf[p]) if all(i in vf[next(iter(e - {p}))] for e in down)]
        out.setdefault(len(down), []).append((p, tuple(facets)))
    independent = True
    for k, items in out.items():
        e = Echelon()
        for _, fs in items:
            if e.insert(sparse(alg.image(fs).vector(k))) is None:
                independent = False
    dims = tuple(len(out.get(k, [])) for k in range(P.n + 1))
    return {"t": t, "by_index": out, "dims": dims, "independent": independent}


def lefschetz_LP_check(alg):
    """Hard Lefschetz, Hodge-Riemann and ``L^n Vol = n! Vol(P)`` for ``L_P``."""
    n = alg.n
    L = alg.lefschetz()
    vol = alg.vol

    def Lpow(poly, k):
        for _ in range(k):
            poly = L(poly)
        return poly

    top = Lpow(vol.poly, n).constant() if n else vol.poly.constant()
    report = {"LnVol": top, "n!Vol": factorial(n) * vol.volume, "hl": {}, "hr": {}}
    ok = top == factorial(n) * vol.volume
    for i in range(n // 2 + 1):
        j = n - 2 * i
        cols = [alg.coords(n - i, Lpow(alg.image(a), j)) for a in alg.basis[i]]
        mat = [[c[r] for c in cols] for r in range(len(alg.basis[n - i]))]
        d = det(mat) if len(mat) == len(cols) else Fraction(0)
        report["hl"][i] = d
        ok = ok and d != 0
        # primitive part: kernel of L^(j+1) on A_i
        deg = i - 1
        if deg < 0:
            prim = [[Fraction(int(r == c)) for r in range(len(alg.basis[i]))]
                    for c in range(len(alg.basis[i]))]
        else:
            imgs = [Lpow(alg.image(a), j + 1).vector(deg) for a in alg.basis[i]]
            size = len(imgs[0]) if imgs else 0
            rows = [sparse([v[r] for v in imgs]) for r in range(size)]
            prim = [[v.get(c, Fraction(0)) for c in range(len(alg.basis[i]))]
                    for v in kernel(rows, len(alg.basis[i]))]
        s = -1 if i % 2 else 1
        gram = []
        for a in prim:
            row = []
            for b in prim:
                pb = sum((alg.image(be).scale(c) for be, c in zip(alg.basis[i], b) if c),
                         Poly.zero(alg.m))
                val = Fraction(0)
                # (a, L^j b)_T = a L^j b Vol: apply the operator of a to L^j(b Vol)
                lb = Lpow(pb, j)
                for al, c in zip(alg.basis[i], a):
                    if c:
                        val = val + _derivative(lb, al).constant() * c
                row.append(s * val)
            gram.append(row)
        piv = leading_pivots(gram) if gram else []
        pos = all(sign(p) > 0 for p in piv) and len(piv) == len(gram)
        report["hr"][i] = {"prim_dim": len(prim), "gram": gram, "pivots": piv, "ok": pos}
        ok = ok and pos
    report["pass"] = ok
    return report


def beta_compare(P, alg=None):
    """Compare ``A(P)`` with the conewise side on the normal fan of ``P``."""
    from .fan.functions import ConewiseFunction
    from .fan.polytope import normal_fan
    from .pairing import brion_zeta
    from .sheafih import IHSpace, MinimalSheaf
    alg = alg or PolytopeAlgebra(VolumePolynomial(P))
    fan, HP = normal_fan(P)
    n, m = alg.n, alg.m
    lam = [ConewiseFunction.from_ray_values(fan, {i: Fraction(1)}) for i in range(m)]

    def beta(alpha):
        out = ConewiseFunction.constant(fan)
        for i in alpha:
            out = out * lam[i]
        return out

    # translation relations map to global linear functions
    trans_ok = True
    for a in range(n):
        f = ConewiseFunction.constant(fan, 0)
        for i, xi in enumerate(P.normals):
            f = f + lam[i] * xi[a]
        pieces = set(f.pieces.values())
        if len(pieces) != 1 or pieces.pop() != Poly.var(n, a):
            trans_ok = False
    empty_ok = True
    for idx, _ in alg.empty_intersection_relations():
        if any(p for p in beta(idx).pieces.values()):
            empty_ok = False
    LP = ConewiseFunction.constant(fan, 0)
    for i, h in enumerate(alg.vol.H):
        LP = LP + lam[i] * h
    lp_ok = all(LP.pieces[c] == HP.pieces[c] for c in fan.maximal)
    ih_dims = IHSpace(MinimalSheaf(fan), fan).dims
    tables = {}
    equal = True
    for k in range(n + 1):
        T = alg.pairing(k)
        B = [[brion_zeta(fan, beta(a + b)).constant() for b in alg.basis[n - k]]
             for a in alg.basis[k]]
        tables[k] = {"timorin": T, "brion": B}
        equal = equal and T == B
    return {"dims": alg.dims, "fan_dims": ih_dims, "dims_match": alg.dims == ih_dims,
            "translation_killed": trans_ok, "empty_killed": empty_ok, "beta_LP_is_HP": lp_ok,
            "tables": tables, "isometry": equal,
            "pass": equal and trans_ok and empty_ok and lp_ok and alg.dims == ih_dims}
