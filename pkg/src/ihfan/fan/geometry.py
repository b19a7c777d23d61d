"""Cone geometry over an ordered field: ray normalization, facets, faces,
membership and a small Fourier-Motzkin feasibility test."""

from fractions import Fraction
from itertools import combinations

from ..exactalg.graded import span_basis
from ..exactalg.linalg import kernel, rank, sparse
from ..exactalg.scalar import sign


def normalize_ray(v):
    """Scale ``v`` so that its first nonzero coordinate is +1 or -1."""
    v = tuple(Fraction(x) if isinstance(x, int) else x for x in v)
    for x in v:
        if x != 0:
            s = abs(x)
            return tuple(y / s if s != 1 else y for y in v)
    raise ValueError("zero vector is not a ray")


def dot(a, b):
    total = Fraction(0)
    for x, y in zip(a, b):
        if x != 0 and y != 0:
            total = total + x * y
    return total


def vsum(vectors, weights=None):
    vectors = list(vectors)
    n = len(vectors[0])
    out = [Fraction(0)] * n
    for k, v in enumerate(vectors):
        w = 1 if weights is None else weights[k]
        for i in range(n):
            if v[i] != 0:
                out[i] = out[i] + w * v[i]
    return tuple(out)


def local_coords(v, pivots):
    return tuple(v[p] for p in pivots)


def vec_rank(vectors):
    if not vectors:
        return 0
    return rank([sparse(v) for v in vectors])


def fm_feasible(constraints, nvars):
    """Decide whether ``{h : a.h >= b for (a, b) in constraints}`` is nonempty.

    Plain Fourier-Motzkin elimination; fine for the handful of variables and
    constraints met in cone validation.
    """
    cons = [(tuple(a), b) for a, b in constraints]
    for j in range(nvars):
        pos, neg, rest = [], [], []
        for a, b in cons:
            s = sign(a[j])
            (pos if s > 0 else neg if s < 0 else rest).append((a, b))
        new = list(rest)
        for ap, bp in pos:
            for an, bn in neg:
                cp, cn = ap[j], -an[j]
                a = tuple(cn * x + cp * y for x, y in zip(ap, an))
                new.append((a, cn * bp + cp * bn))
        seen = set()
        cons = []
        for a, b in new:
            key = _normalize_constraint(a, b)
            if key not in seen:
                seen.add(key)
                cons.append(key)
    return all(b <= 0 for _, b in cons)


def _normalize_constraint(a, b):
    for x in a:
        if x != 0:
            s = abs(x)
            return tuple(y / s for y in a), b / s
    return a, b


def is_pointed(vectors):
    n = len(vectors[0])
    return fm_feasible([(v, 1) for v in vectors], n)


def separable(r1, r2, common, n):
    """Is there ``h`` positive on ``r1``, negative on ``r2``, zero on ``common``?"""
    cons = [(v, 1) for v in r1]
    cons += [(tuple(-x for x in v), 1) for v in r2]
    for v in common:
        cons.append((v, 0))
        cons.append((tuple(-x for x in v), 0))
    return fm_feasible(cons, n)


def cone_facets(rays, idx):
    """Facets of the cone spanned by ``rays[i]`` for ``i`` in ``idx``.

    Returns a list of frozensets of indices.  Candidate supporting hyperplanes
    come from rank-(k-1) subsets of rays, with the normal computed in local
    coordinates of the span.
    """
    idx = sorted(idx)
    vecs = [rays[i] for i in idx]
    if not vecs:
        return []
    basis, piv = span_basis(vecs)
    k = len(basis)
    if k == 1:
        return [frozenset()]
    loc = [local_coords(v, piv) for v in vecs]
    found = []
    seen = set()
    for sub in combinations(range(len(idx)), k - 1):
        rows = [sparse(loc[i]) for i in sub]
        ker = kernel(rows, k)
        if len(ker) != 1:
            continue
        h = [ker[0].get(j, 0) for j in range(k)]
        vals = [dot(h, v) for v in loc]
        signs = {sign(x) for x in vals}
        if 1 in signs and -1 in signs:
            continue
        facet = frozenset(idx[i] for i, x in enumerate(vals) if x == 0)
        if facet not in seen:
            seen.add(facet)
            found.append(facet)
    return sorted(found, key=lambda f: sorted(f))


def cone_faces(rays, idx, memo=None):
    """All faces of a cone as a dict ``face -> list of its facets``."""
    if memo is None:
        memo = {}
    out = {}
    stack = [frozenset(idx)]
    while stack:
        c = stack.pop()
        if c in out:
            continue
        if c in memo:
            fs = memo[c]
        else:
            fs = cone_facets(rays, c) if c else []
            memo[c] = fs
        out[c] = fs
        stack.extend(fs)
    return out


def inward_normals(rays, idx, n):
    """Inward facet normals of a full-dimensional cone (global coordinates)."""
    idx = sorted(idx)
    out = []
    for facet in cone_facets(rays, idx):
        rows = [sparse(rays[i]) for i in sorted(facet)]
        ker = kernel(rows, n)
        h = [ker[0].get(j, 0) for j in range(n)]
        other = next(i for i in idx if i not in facet)
        if sign(dot(h, rays[other])) < 0:
            h = [-x for x in h]
        out.append(tuple(h))
    return out


def in_cone(v, normals):
    return all(sign(dot(h, v)) >= 0 for h in normals)
