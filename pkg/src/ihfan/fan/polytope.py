"""Full-dimensional polytopes given by vertices, and their outer normal fans."""

from fractions import Fraction
from itertools import combinations

from ..exactalg.linalg import kernel, sparse
from ..exactalg.poly import Poly
from ..exactalg.scalar import sign
from .fan import FanError, validate_fan
from .functions import ConewiseFunction
from .geometry import dot, normalize_ray, vec_rank


class Polytope:
    """Convex hull of the given points; redundant points are dropped."""

    def __init__(self, vertices):
        pts = [tuple(Fraction(x) if isinstance(x, int) else x for x in v) for v in vertices]
        if not pts:
            raise FanError("empty polytope")
        self.n = len(pts[0])
        base = pts[0]
        if vec_rank([tuple(a - b for a, b in zip(p, base)) for p in pts]) != self.n:
            raise FanError("polytope is not full dimensional")
        normals = {}
        for sub in combinations(range(len(pts)), self.n):
            diffs = [sparse([a - b for a, b in zip(pts[i], pts[sub[0]])]) for i in sub[1:]]
            ker = kernel(diffs, self.n)
            if len(ker) != 1:
                continue
            h = [ker[0].get(j, 0) for j in range(self.n)]
            vals = [dot(h, p) for p in pts]
            top = vals[sub[0]]
            s = {sign(v - top) for v in vals}
            if 1 in s and -1 in s:
                continue
            if 1 in s:
                h = [-x for x in h]
            xi = normalize_ray(h)
            normals[xi] = None
        self.normals = sorted(normals, reverse=True)
        self.support = [max(dot(xi, p) for p in pts) for xi in self.normals]
        on = [frozenset(i for i, p in enumerate(pts) if dot(xi, p) == h)
              for xi, h in zip(self.normals, self.support)]
        verts = sorted(set().union(*[{i for i in f} for f in on]))
        # keep only points that are vertices: intersection of the facets through them is itself
        keep = []
        for i in verts:
            through = [f for f in on if i in f]
            inter = frozenset.intersection(*through)
            if inter == {i}:
                keep.append(i)
        remap = {i: k for k, i in enumerate(keep)}
        self.vertices = [pts[i] for i in keep]
        self.facet_vertices = [frozenset(remap[i] for i in f if i in remap) for f in on]
        self.m = len(self.normals)

    @property
    def vertex_facets(self):
        return [frozenset(j for j, f in enumerate(self.facet_vertices) if v in f)
                for v in range(len(self.vertices))]

    def is_simple(self):
        return all(len(fs) == self.n for fs in self.vertex_facets)

    def face_lattice(self):
        """Faces as (vertex set, dimension); includes the empty face and P."""
        faces = {frozenset(range(len(self.vertices)))}
        frontier = set(self.facet_vertices)
        while frontier:
            faces |= frontier
            nxt = set()
            for a in frontier:
                for f in self.facet_vertices:
                    c = a & f
                    if c != a and c not in faces:
                        nxt.add(c)
            frontier = nxt
        faces.add(frozenset())
        out = {}
        for f in faces:
            if not f:
                out[f] = -1
                continue
            p0 = self.vertices[min(f)]
            out[f] = vec_rank([tuple(a - b for a, b in zip(self.vertices[i], p0)) for i in f])
        return out

    def f_vector(self):
        fl = self.face_lattice()
        return [sum(1 for d in fl.values() if d == k) for k in range(self.n)]

    def __repr__(self):
        return f"Polytope(n={self.n}, vertices={len(self.vertices)}, facets={self.m})"


def normal_fan(P):
    """Outer normal fan of ``P`` and its support function ``H_P``.

    Rays are the facet normals in ``P.normals`` order; the maximal cone of a
    vertex is spanned by the normals of the facets through it.
    """
    cones = [sorted(fs) for fs in P.vertex_facets]
    fan = validate_fan(P.normals, cones)
    by_cone = {}
    for v, fs in enumerate(P.vertex_facets):
        by_cone[frozenset(fs)] = Poly.linear(list(P.vertices[v]))
    H = ConewiseFunction(fan, by_cone)
    fan.polytope = P
    return fan, H
