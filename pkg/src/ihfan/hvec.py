"""Stanley's generalized (toric) h-vector of an Eulerian face poset.

For a face ``x`` of rank ``r`` (a polytope of dimension ``r - 1``)::

    h(x, t) = sum over y < x of g(y, t) * (t - 1)^(r - 1 - rank y)
    g(x, t) = h_0 + (h_1 - h_0) t + ... + (h_m - h_(m-1)) t^m,   m = floor((r - 1) / 2)

with ``g(bottom) = h(bottom) = 1``.  The h-vector of the poset is ``h`` of
its top element.  This is used as an oracle independent of the sheaf code.
"""

from functools import lru_cache


class NotEulerian(ValueError):
    pass


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _tminus1(k):
    out = [1]
    for _ in range(k):
        out = _polymul(out, [-1, 1])
    return out


class FaceLattice:
    """A finite graded poset with a bottom and a top element.

    ``elements`` is a list, ``rank`` maps element to its rank (bottom has
    rank 0) and ``leq(x, y)`` is the order.
    """

    def __init__(self, elements, rank, leq):
        self.elements = list(elements)
        self.rank = dict(rank)
        self.leq = leq
        self.bottom = min(self.elements, key=lambda x: self.rank[x])
        self.top = max(self.elements, key=lambda x: self.rank[x])
        self.below = {x: [y for y in self.elements if y != x and leq(y, x)] for x in self.elements}

    @classmethod
    def of_polytope(cls, P):
        """Faces as vertex sets; the empty face is the bottom, P the top."""
        fl = P.face_lattice()
        return cls(fl, {f: d + 1 for f, d in fl.items()}, lambda a, b: a <= b)

    @classmethod
    def of_fan(cls, fan):
        """Cone poset of a complete fan with an added top element."""
        top = "top"
        elems = list(fan.cones) + [top]
        rank = {c: fan.dim(c) for c in fan.cones}
        rank[top] = fan.n + 1
        return cls(elems, rank, lambda a, b: b == top or (a != top and a <= b))

    @classmethod
    def of_simplex(cls, n):
        from itertools import combinations
        verts = range(n + 1)
        elems = [frozenset(c) for k in range(n + 2) for c in combinations(verts, k)]
        return cls(elems, {e: len(e) for e in elems}, lambda a, b: a <= b)

    def is_eulerian(self):
        for y in self.elements:
            for x in self.below[y]:
                s = 0
                for z in self.elements:
                    if self.leq(x, z) and self.leq(z, y):
                        s += (-1) ** self.rank[z]
                if s != 0:
                    return False
        return True


def generalized_h(lattice, check=True):
    """The h-vector ``(h_0, ..., h_d)`` of ``lattice``, ``d`` = rank(top) - 1."""
    if check and not lattice.is_eulerian():
        raise NotEulerian("face poset is not Eulerian")

    @lru_cache(maxsize=None)
    def h(x):
        if x == lattice.bottom:
            return (1,)
        r = lattice.rank[x]
        total = [0] * r
        for y in lattice.below[x]:
            term = _polymul(list(g(y)), _tminus1(r - 1 - lattice.rank[y]))
            for i, c in enumerate(term):
                total[i] += c
        return tuple(total)

    @lru_cache(maxsize=None)
    def g(x):
        hx = h(x)
        if x == lattice.bottom:
            return (1,)
        m = (lattice.rank[x] - 1) // 2
        return tuple(hx[0] if i == 0 else hx[i] - hx[i - 1] for i in range(m + 1))

    return h(lattice.top)


def g_vector(h):
    m = (len(h) - 1) // 2
    return tuple(h[0] if i == 0 else h[i] - h[i - 1] for i in range(m + 1))


def simplicial_h(f, d):
    """Classical h-vector from the f-vector ``(f_0, ..., f_(d-1))``.

    ``sum h_i t^(d-i) = sum f_(i-1) (t-1)^(d-i)`` with ``f_(-1) = 1``.
    """
    total = [0] * (d + 1)
    fs = [1] + list(f)
    for i, fi in enumerate(fs):
        for k, c in enumerate(_tminus1(d - i)):
            total[k] += fi * c
    return tuple(reversed(total))


def compare_ih(fan, ih_dims=None):
    """Compare ``ih`` of a complete fan with ``h`` of its cone poset.

    The cone poset of the normal fan of ``P`` is the face lattice of the
    polar polytope, so for ``P`` itself use :meth:`FaceLattice.of_polytope`.
    """
    if ih_dims is None:
        from .sheafih import build_minimal_sheaf, ih
        ih_dims = ih(build_minimal_sheaf(fan), fan).dims
    h = generalized_h(FaceLattice.of_fan(fan))
    return {"ih": tuple(ih_dims), "h": h, "match": tuple(ih_dims) == h}
