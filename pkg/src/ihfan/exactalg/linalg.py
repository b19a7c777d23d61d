"""Exact linear algebra on sparse rows.

Sparse vectors are dicts ``column -> scalar`` without zero entries.  Dense
matrices are lists of lists.  Every pivot choice is the leftmost available
column, so all bases produced here are deterministic.
"""

import heapq
from fractions import Fraction


def sparse(vec):
    return {i: c for i, c in enumerate(vec) if c != 0}


def dense(vec, n):
    out = [Fraction(0)] * n
    for i, c in vec.items():
        out[i] = c
    return out


def axpy(y, a, x):
    """In place ``y += a*x`` on sparse vectors."""
    for i, c in x.items():
        v = y.get(i)
        if v is None:
            y[i] = a * c
        else:
            v = v + a * c
            if v == 0:
                del y[i]
            else:
                y[i] = v


class Echelon:
    """Incremental row echelon form with optional tag bookkeeping.

    Each stored row has a pivot equal to its smallest column, normalized to 1.
    A tag is a sparse vector carried along with every row operation; reducing a
    vector returns the residual and the tag combination subtracted from it.
    """

    def __init__(self):
        self.rows = {}
        self.tags = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec, tag=None):
        vec = dict(vec)
        tag = dict(tag) if tag is not None else {}
        heap = [c for c in vec if c in self.rows]
        heapq.heapify(heap)
        seen = set()
        while heap:
            col = heapq.heappop(heap)
            if col in seen:
                continue
            seen.add(col)
            c = vec.get(col)
            if c is None:
                continue
            row = self.rows[col]
            for j in row:
                if j != col and j in self.rows and j not in vec:
                    heapq.heappush(heap, j)
            axpy(vec, -c, row)
            rt = self.tags.get(col)
            if rt:
                axpy(tag, -c, rt)
        return vec, tag

    def insert(self, vec, tag=None):
        """Add ``vec``; returns the new pivot column or ``None`` if dependent."""
        res, t = self.reduce(vec, tag)
        if not res:
            return None
        p = min(res)
        inv = Fraction(1) / res[p]
        row = {j: c * inv for j, c in res.items()}
        self.rows[p] = row
        if t:
            self.tags[p] = {j: c * inv for j, c in t.items()}
        return p

    def in_span(self, vec):
        return not self.reduce(vec)[0]

    def coordinates(self, vec):
        """Tag-coordinates of ``vec``; raises if ``vec`` is not in the span."""
        res, t = self.reduce(vec)
        if res:
            raise ValueError("vector not in span")
        return {j: -c for j, c in t.items()}

    def full_reduce(self):
        """Bring stored rows to reduced row echelon form in place."""
        for p in sorted(self.rows, reverse=True):
            row = self.rows[p]
            for q in self.rows:
                if q < p:
                    other = self.rows[q]
                    c = other.get(p)
                    if c is not None:
                        axpy(other, -c, row)
                        if self.tags.get(p):
                            self.tags.setdefault(q, {})
                            axpy(self.tags[q], -c, self.tags[p])


def rref(rows):
    """Reduced row echelon form; returns (pivot columns, sparse rows)."""
    e = Echelon()
    for r in rows:
        e.insert(r if isinstance(r, dict) else sparse(r))
    e.full_reduce()
    piv = sorted(e.rows)
    return piv, [e.rows[p] for p in piv]


def rank(rows):
    e = Echelon()
    for r in rows:
        e.insert(r if isinstance(r, dict) else sparse(r))
    return len(e)


def kernel(rows, ncols):
    """Basis of ``{x : M x = 0}`` as sparse vectors, one per free column."""
    piv, red = rref(rows)
    pset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = {f: Fraction(1)}
        for p, r in zip(piv, red):
            c = r.get(f)
            if c is not None:
                v[p] = -c
        basis.append(v)
    return basis


def solve(rows, rhs, ncols):
    """Solve ``M x = b``; returns the pivot solution (free vars 0) or None."""
    aug = []
    for r, b in zip(rows, rhs):
        r = dict(r) if isinstance(r, dict) else sparse(r)
        if b != 0:
            r[ncols] = b
        aug.append(r)
    piv, red = rref(aug)
    if piv and piv[-1] == ncols:
        return None
    x = {}
    for p, r in zip(piv, red):
        c = r.get(ncols)
        if c is not None:
            x[p] = c
    return x


def matmul(a, b):
    if not a:
        return []
    m = len(b[0]) if b else 0
    out = []
    for row in a:
        o = [Fraction(0)] * m
        for k, c in enumerate(row):
            if c != 0:
                for j, d in enumerate(b[k]):
                    if d != 0:
                        o[j] = o[j] + c * d
        out.append(o)
    return out


def transpose(a, ncols=None):
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def det(a):
    n = len(a)
    if n == 0:
        return Fraction(1)
    m = [list(r) for r in a]
    d = Fraction(1)
    for i in range(n):
        p = next((r for r in range(i, n) if m[r][i] != 0), None)
        if p is None:
            return Fraction(0)
        if p != i:
            m[i], m[p] = m[p], m[i]
            d = -d
        d = d * m[i][i]
        inv = Fraction(1) / m[i][i]
        for r in range(i + 1, n):
            if m[r][i] != 0:
                f = m[r][i] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[i])]
    return d


def inverse(a):
    n = len(a)
    m = [list(r) + idr for r, idr in zip(a, identity(n))]
    for i in range(n):
        p = next((r for r in range(i, n) if m[r][i] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        m[i], m[p] = m[p], m[i]
        inv = Fraction(1) / m[i][i]
        m[i] = [x * inv for x in m[i]]
        for r in range(n):
            if r != i and m[r][i] != 0:
                f = m[r][i]
                m[r] = [x - f * y for x, y in zip(m[r], m[i])]
    return [r[n:] for r in m]


def leading_pivots(a):
    """Pivots of symmetric elimination without row exchange.

    Returns the list of pivots computed until the first zero pivot (inclusive).
    For a symmetric matrix all pivots are positive iff it is positive definite.
    """
    n = len(a)
    m = [list(r) for r in a]
    piv = []
    for i in range(n):
        p = m[i][i]
        piv.append(p)
        if p == 0:
            break
        inv = Fraction(1) / p
        for r in range(i + 1, n):
            if m[r][i] != 0:
                f = m[r][i] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[i])]
    return piv
