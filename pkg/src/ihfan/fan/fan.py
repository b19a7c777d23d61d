"""Fans: validation, face structure, stars, links, singular subfans, products.

Cones are identified by frozensets of ray indices into ``Fan.rays``.  The
empty frozenset is the origin.  Subfans and subdivisions keep the ray
indexing of the fan they came from, so data attached to a cone (stalks,
restriction maps) can be shared between a fan and its subfans.
"""

from fractions import Fraction
from itertools import combinations, product

from ..exactalg.graded import span_basis
from ..exactalg.linalg import det
from ..exactalg.poly import Poly
from ..exactalg.scalar import sign, field_of
from .geometry import (cone_faces, in_cone, inward_normals, is_pointed,
                       normalize_ray, separable, vec_rank)


class FanError(ValueError):
    pass


ORIGIN = frozenset()


def cone_key(c):
    return (len(c), tuple(sorted(c)))


class Fan:
    """A validated fan.  Build one with :func:`validate_fan`."""

    def __init__(self, n, rays, facets, field=None, dims=None):
        self.n = n
        self.rays = rays
        self.field = field
        self.facets = facets
        self.cones = sorted(facets, key=lambda c: (self._dim_guess(c, dims), cone_key(c)))
        self._dims = dims if dims is not None else {}
        self._span = {}
        self._subst = {}
        self._maximal = None
        self._boundary = None
        self._complete = None
        self.base = None        # fan this one subdivides, if any
        self.carrier = None     # ray index -> cone of ``base``
        self.factors = None     # (left, right) for product fans
        self.parent = None      # fan this is a subfan of
        self.star_of = None     # cone sigma when this is [St(sigma)] of ``parent``

    def _dim_guess(self, c, dims):
        return dims[c] if dims else len(c)

    # basic structure
    def dim(self, c):
        d = self._dims.get(c)
        if d is None:
            d = vec_rank([self.rays[i] for i in c])
            self._dims[c] = d
        return d

    def __contains__(self, c):
        return c in self.facets

    def __len__(self):
        return len(self.facets)

    def used_rays(self):
        return sorted({i for c in self.facets for i in c})

    @property
    def maximal(self):
        if self._maximal is None:
            covered = set()
            for c in self.facets:
                covered.update(self.facets[c])
            self._maximal = sorted((c for c in self.facets if c not in covered), key=cone_key)
        return self._maximal

    def faces(self, c):
        """All faces of ``c`` in the fan (including ``c`` and the origin)."""
        return [t for t in self.cones if t <= c]

    def cones_of_dim(self, k):
        return [c for c in self.cones if self.dim(c) == k]

    def is_pure(self):
        return all(self.dim(c) == self.n for c in self.maximal)

    def is_simplicial(self):
        return all(len(c) == self.dim(c) for c in self.cones)

    def containing_maximal(self, c):
        return [m for m in self.maximal if c <= m]

    @property
    def boundary(self):
        """The face-closed boundary subfan, as a set of cones."""
        if self._boundary is None:
            walls = [c for c in self.cones if self.dim(c) == self.n - 1
                     and len(self.containing_maximal(c)) == 1
                     and self.is_pure()]
            self._boundary = closure(self, walls) if walls else set()
        return self._boundary

    @property
    def complete(self):
        if self._complete is None:
            self._complete = self._check_complete()
        return self._complete

    def _check_complete(self):
        if not self.maximal or not self.is_pure():
            return False
        for c in self.cones:
            if self.dim(c) == self.n - 1 and len(self.containing_maximal(c)) != 2:
                return False
        normals = [inward_normals(self.rays, m, self.n) for m in self.maximal]
        for v in product((-1, 0, 1), repeat=self.n):
            if not any(v):
                continue
            if not any(in_cone(v, nm) for nm in normals):
                return False
        return True

    # linear algebra attached to cones
    def span(self, c):
        """(echelon basis, pivot columns) of the linear span of ``c``."""
        s = self._span.get(c)
        if s is None:
            if c:
                s = span_basis([self.rays[i] for i in sorted(c)])
            else:
                s = ([], ())
            self._span[c] = s
        return s

    def local(self, c, v):
        return tuple(v[p] for p in self.span(c)[1])

    def local_rays(self, c):
        return [self.local(c, self.rays[i]) for i in sorted(c)]

    def substitution(self, src, dst):
        """Images of the local variables of ``src`` as Polys on ``dst``.

        Requires the span of ``dst`` to lie in the span of ``src``; ``src``
        may be ``None`` for the ambient space.
        """
        key = (src, dst)
        out = self._subst.get(key)
        if out is None:
            piv = tuple(range(self.n)) if src is None else self.span(src)[1]
            basis = self.span(dst)[0]
            k = len(basis)
            out = [Poly.linear([basis[j][p] for j in range(k)]) for p in piv]
            self._subst[key] = out
        return out

    def restrict_poly(self, f, src, dst):
        """Restrict ``f`` (in local coordinates of ``src``) to ``dst``."""
        if src == dst or (src is None and self.dim(dst) == self.n):
            return f
        if src is not None and self.dim(dst) == self.dim(src):
            return f
        if not f.terms:
            return Poly.zero(self.dim(dst))
        imgs = self.substitution(src, dst)
        if not imgs:
            return f
        if self.dim(dst) == 0:
            return Poly.const(0, f.constant())
        return f.substitute(imgs)

    def orientation(self, c):
        """Sign of the full-dimensional cone ``c`` against the standard volume form."""
        if self.dim(c) != self.n:
            return 0
        chosen = []
        for i in sorted(c):
            if vec_rank([self.rays[j] for j in chosen + [i]]) > len(chosen):
                chosen.append(i)
        return sign(det([list(self.rays[i]) for i in chosen]))

    # subfans
    def subfan(self, cones, star_of=None):
        cl = closure(self, cones)
        sub = Fan(self.n, self.rays, {c: [f for f in self.facets[c]] for c in cl},
                  self.field, {c: self.dim(c) for c in cl})
        sub._span = self._span
        sub._subst = self._subst
        sub.parent = self
        sub.star_of = star_of
        sub.base = self.base
        sub.carrier = self.carrier
        return sub

    def describe(self):
        return {"dim": self.n, "rays": len(self.used_rays()), "cones": len(self),
                "maximal": len(self.maximal), "complete": self.complete,
                "simplicial": self.is_simplicial()}

    def __repr__(self):
        return (f"Fan(n={self.n}, rays={len(self.used_rays())}, cones={len(self)}, "
                f"maximal={len(self.maximal)})")


def closure(fan, cones):
    out = set()
    for c in cones:
        if c in out:
            continue
        stack = [c]
        while stack:
            t = stack.pop()
            if t in out:
                continue
            out.add(t)
            stack.extend(fan.facets[t])
    return out


def validate_fan(rays, cones, field=None, check_pairs=True, require_all_rays=True):
    """Build a :class:`Fan` from rays and (maximal) cones given as index lists.

    Rays are normalized; duplicates, non-pointed cones, non-extreme rays and
    improper intersections raise :class:`FanError`.
    """
    if not rays:
        raise FanError("a fan needs at least one ray")
    n = len(rays[0])
    norm = []
    for r in rays:
        if len(r) != n:
            raise FanError("rays of different lengths")
        if all(x == 0 for x in r):
            raise FanError("zero ray")
        norm.append(normalize_ray(r))
    fields = {field_of(x) for r in norm for x in r} - {None}
    if len(fields) > 1 or (fields and field is not None and fields != {field}):
        raise FanError("rays from mixed fields")
    if field is None and fields:
        field = fields.pop()
    if len(set(norm)) != len(norm):
        raise FanError("duplicate rays")

    facets = {ORIGIN: []}
    memo = {}
    tops = []
    for c in cones:
        c = frozenset(c)
        if not c:
            continue
        if max(c) >= len(norm) or min(c) < 0:
            raise FanError(f"cone {sorted(c)} refers to a missing ray")
        vecs = [norm[i] for i in sorted(c)]
        if not is_pointed(vecs):
            raise FanError(f"cone {sorted(c)} is not pointed")
        faces = cone_faces(norm, c, memo)
        rays_seen = {next(iter(f)) for f in faces if len(f) == 1 and vec_rank([norm[i] for i in f]) == 1}
        if rays_seen != set(c):
            raise FanError(f"cone {sorted(c)} has non-extreme rays {sorted(set(c) - rays_seen)}")
        for f, fs in faces.items():
            facets[f] = fs
        tops.append(c)

    maximal = [c for c in set(tops) if not any(c < d for d in tops)]
    maximal.sort(key=cone_key)
    if check_pairs:
        for a, b in combinations(maximal, 2):
            common = a & b
            if common not in facets or not _is_face(facets, common, a) or not _is_face(facets, common, b):
                raise FanError(f"intersection of {sorted(a)} and {sorted(b)} is not a face")
            if not separable([norm[i] for i in a - b], [norm[i] for i in b - a],
                             [norm[i] for i in common], n):
                raise FanError(f"intersection of {sorted(a)} and {sorted(b)} is not a face")
    used = {i for c in facets for i in c}
    if require_all_rays and used != set(range(len(norm))):
        raise FanError("rays not used by any cone")
    dims = {c: vec_rank([norm[i] for i in c]) for c in facets}
    return Fan(n, norm, facets, field, dims)


def _is_face(facets, small, big):
    stack = [big]
    seen = set()
    while stack:
        c = stack.pop()
        if c == small:
            return True
        if c in seen or not small <= c:
            continue
        seen.add(c)
        stack.extend(facets[c])
    return False


def star_link(fan, sigma):
    """Return ``(St, [St], boundary of St, Link)`` as sets of cones.

    For the origin the star is the whole fan, its boundary is empty and so is
    the link.
    """
    sigma = frozenset(sigma)
    st = {c for c in fan.cones if sigma <= c}
    cl = closure(fan, st)
    bd = cl - st
    link = {c for c in bd if not (c & sigma)}
    return st, cl, bd, link


def star_fan(fan, sigma):
    """The subfan [St(sigma)], tagged so quasi-convexity can be certified."""
    _, cl, _, _ = star_link(fan, sigma)
    return fan.subfan(cl, star_of=frozenset(sigma))


def free_edges(fan, c):
    """Edges (ray indices) of ``c`` that are free: ``c = facet + edge``."""
    out = []
    for i in sorted(c):
        rest = c - {i}
        if rest in fan.facets[c] or (not rest and fan.dim(c) == 1):
            out.append(i)
    return out


def singular_subfan(fan):
    """Face closure of the deficient cones (empty set if there are none)."""
    bad = [c for c in fan.cones if c and not free_edges(fan, c)]
    return closure(fan, bad) if bad else set()


def local_product_check(fan, sigma):
    sigma = frozenset(sigma)
    if not sigma:
        return True
    _, cl, _, link = star_link(fan, sigma)
    rhs = set()
    for t1 in fan.faces(sigma):
        for t2 in link:
            u = t1 | t2
            if u not in fan.facets:
                return False
            rhs.add(u)
    return rhs == cl


def product_fan(left, right):
    if left.n == 0 or right.n == 0:
        raise FanError("product factors must be positive dimensional")
    n = left.n + right.n
    zero_l = (Fraction(0),) * left.n
    zero_r = (Fraction(0),) * right.n
    rays = [tuple(r) + zero_r for r in left.rays] + [zero_l + tuple(r) for r in right.rays]
    off = len(left.rays)
    facets = {}
    dims = {}
    for a in left.cones:
        for b in right.cones:
            c = a | frozenset(i + off for i in b)
            fs = [f | frozenset(i + off for i in b) for f in left.facets[a]]
            fs += [a | frozenset(i + off for i in f) for f in right.facets[b]]
            facets[c] = fs
            dims[c] = left.dim(a) + right.dim(b)
    fields = {left.field, right.field} - {None}
    if len(fields) > 1:
        raise FanError("factors over different fields")
    fan = Fan(n, rays, facets, fields.pop() if fields else None, dims)
    fan.factors = (left, right)
    return fan
