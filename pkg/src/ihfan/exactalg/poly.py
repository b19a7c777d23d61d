"""Sparse multivariate polynomials over an exact field.

A :class:`Poly` maps exponent tuples to nonzero scalars.  Degrees reported by
:meth:`Poly.degree` follow the convention that a linear form has degree 2;
``total_degree`` is the ordinary exponent sum.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from .scalar import to_str


class DimensionMismatch(ValueError):
    pass


@lru_cache(maxsize=None)
def monomials(n, k):
    """Exponent tuples of total degree ``k`` in ``n`` variables, grlex order.

    Within a fixed degree the order is lexicographic with ``x_0`` largest, so
    ``x_0^k`` comes first.
    """
    if k < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(n), k):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n, k):
    return {m: i for i, m in enumerate(monomials(n, k))}


def _addexp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n, terms=None):
        self.n = n
        if terms:
            self.terms = {e: c for e, c in terms.items() if c != 0}
        else:
            self.terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, n, terms):
        p = cls.__new__(cls)
        p.n = n
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, n):
        return cls._raw(n, {})

    @classmethod
    def const(cls, n, c):
        if c == 0:
            return cls._raw(n, {})
        return cls._raw(n, {(0,) * n: c if not isinstance(c, int) else Fraction(c)})

    @classmethod
    def var(cls, n, i):
        e = [0] * n
        e[i] = 1
        return cls._raw(n, {tuple(e): Fraction(1)})

    @classmethod
    def linear(cls, coeffs):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c != 0:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return cls._raw(n, terms)

    @classmethod
    def from_vector(cls, n, k, vec):
        """Inverse of :meth:`vector`: coefficients on ``monomials(n, k)``."""
        mons = monomials(n, k)
        return cls._raw(n, {mons[i]: c for i, c in enumerate(vec) if c != 0})

    # queries
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self):
        """Cohomological degree (twice the total degree); ``-1`` for zero."""
        d = self.total_degree()
        return -1 if d < 0 else 2 * d

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def vector(self, k):
        """Coefficient list on ``monomials(n, k)``; requires homogeneity."""
        idx = monomial_index(self.n, k)
        vec = [0] * len(idx)
        for e, c in self.terms.items():
            vec[idx[e]] = c
        return vec

    def constant(self):
        return self.terms.get((0,) * self.n, Fraction(0))

    def leading(self):
        """Leading (exponent, coefficient) under grlex."""
        e = max(self.terms, key=lambda m: (sum(m), m))
        return e, self.terms[e]

    # arithmetic
    def _check(self, other):
        if self.n != other.n:
            raise DimensionMismatch(f"polynomials in {self.n} and {other.n} variables")

    def __add__(self, other):
        if not isinstance(other, Poly):
            if other == 0:
                return self
            other = Poly.const(self.n, other)
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if v == 0:
                    del t[e]
                else:
                    t[e] = v
        return Poly._raw(self.n, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if c == 0:
            return Poly._raw(self.n, {})
        return Poly._raw(self.n, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if not self.terms or not other.terms:
            return Poly._raw(self.n, {})
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _addexp(e1, e2)
                v = t.get(e)
                t[e] = c1 * c2 if v is None else v + c1 * c2
        return Poly(self.n, t)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        out = Poly.const(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        if other == 0:
            return not self.terms
        return self.terms == Poly.const(self.n, other).terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    # calculus and substitution
    def diff(self, i):
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                t[tuple(f)] = c * e[i]
        return Poly._raw(self.n, t)

    def evaluate(self, point):
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total = total + v
        return total

    def substitute(self, images):
        """Compose with ``x_i -> images[i]`` (all images are Polys in m vars)."""
        if len(images) != self.n:
            raise DimensionMismatch("substitution arity differs from variable count")
        if not self.terms:
            m = images[0].n if images else 0
            return Poly._raw(m, {})
        m = images[0].n
        powers = [dict() for _ in images]
        out = Poly._raw(m, {})
        for e, c in self.terms.items():
            term = Poly.const(m, c)
            for i, k in enumerate(e):
                if k:
                    pw = powers[i].get(k)
                    if pw is None:
                        pw = images[i] ** k
                        powers[i][k] = pw
                    term = term * pw
            out = out + term
        return out

    def linear_substitute(self, matrix):
        """Substitute ``x_i = sum_j matrix[i][j] * y_j``."""
        m = len(matrix[0]) if matrix else 0
        return self.substitute([Poly.linear(row) if m else Poly.zero(0) for row in matrix])

    def divmod_exact(self, g):
        """Return ``q`` with ``self == q*g`` or ``None`` if ``g`` does not divide."""
        self._check(g)
        if not g.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        ge, gc = g.leading()
        rem = dict(self.terms)
        q = {}
        key = lambda m: (sum(m), m)
        while rem:
            e = max(rem, key=key)
            c = rem[e]
            d = tuple(a - b for a, b in zip(e, ge))
            if min(d) < 0:
                return None
            qc = c / gc
            q[d] = qc
            for e2, c2 in g.terms.items():
                m = _addexp(d, e2)
                v = rem.get(m, 0) - qc * c2
                if v == 0:
                    rem.pop(m, None)
                else:
                    rem[m] = v
        return Poly._raw(self.n, q)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = [f"x{i}" for i in range(self.n)]
        parts = []
        for e in sorted(self.terms, key=lambda m: (sum(m), m), reverse=True):
            c = self.terms[e]
            mono = "*".join(f"{names[i]}^{k}" if k > 1 else names[i]
                            for i, k in enumerate(e) if k)
            cs = to_str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}" if "sqrt" in cs else f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")
