"""Rational functions whose denominators are products of linear forms.

Denominators are kept factored as a multiset of monic linear forms (first
nonzero coefficient equal to 1).  Sums are taken over the least common
multiple of the factor multisets and then reduced by exact trial division of
the numerator by each factor, which is all the gcd machinery this library
needs.
"""

from collections import Counter
from fractions import Fraction

from .poly import Poly


def monic_linear(form):
    """Split a linear Poly into (scalar, monic form)."""
    e, c = max(form.terms.items(), key=lambda t: t[0])
    return c, form.scale(Fraction(1) / c) if c != 1 else form


class RationalFn:
    __slots__ = ("num", "den")

    def __init__(self, num, den=()):
        """``den`` is an iterable of linear Polys; scalars are folded into ``num``."""
        factors = Counter()
        for f in den:
            if f.total_degree() != 1 or not f.is_homogeneous():
                raise ValueError("denominator factors must be linear forms")
            c, m = monic_linear(f)
            num = num.scale(Fraction(1) / c)
            factors[m] += 1
        self.num = num
        self.den = factors
        self._reduce()

    @property
    def n(self):
        return self.num.n

    def _reduce(self):
        if self.num.is_zero():
            self.den = Counter()
            return
        for f in sorted(self.den, key=lambda p: sorted(p.terms.items(), reverse=True)):
            while self.den[f]:
                q = self.num.divmod_exact(f)
                if q is None:
                    break
                self.num = q
                self.den[f] -= 1
        self.den = +self.den

    def denominator(self):
        out = Poly.const(self.num.n, 1)
        for f, k in self.den.items():
            out = out * f ** k
        return out

    def is_poly(self):
        return not self.den

    def as_poly(self):
        if self.den:
            raise ValueError("rational function is not a polynomial")
        return self.num

    def __add__(self, other):
        if isinstance(other, Poly):
            other = RationalFn(other)
        lcm = self.den | other.den
        a = self.num
        for f, k in (lcm - self.den).items():
            a = a * f ** k
        b = other.num
        for f, k in (lcm - other.den).items():
            b = b * f ** k
        out = RationalFn.__new__(RationalFn)
        out.num = a + b
        out.den = Counter(lcm)
        out._reduce()
        return out

    def __neg__(self):
        out = RationalFn.__new__(RationalFn)
        out.num = -self.num
        out.den = Counter(self.den)
        return out

    def __sub__(self, other):
        return self + (-other if isinstance(other, RationalFn) else RationalFn(-other))

    def scale(self, c):
        out = RationalFn.__new__(RationalFn)
        out.num = self.num.scale(c)
        out.den = Counter(self.den) if c != 0 else Counter()
        return out

    def mul_poly(self, p):
        out = RationalFn.__new__(RationalFn)
        out.num = self.num * p
        out.den = Counter(self.den)
        out._reduce()
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            other = RationalFn(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num * other.denominator() == other.num * self.denominator()

    def __repr__(self):
        if not self.den:
            return f"RationalFn({self.num})"
        den = " * ".join(f"({f})" + (f"^{k}" if k > 1 else "") for f, k in self.den.items())
        return f"RationalFn(({self.num}) / ({den}))"


def ratfn_sum_reduce(terms):
    """Sum rational functions and reduce; a polynomial result has empty ``den``."""
    terms = list(terms)
    if not terms:
        raise ValueError("empty sum has no ambient ring")
    total = terms[0] if isinstance(terms[0], RationalFn) else RationalFn(terms[0])
    for t in terms[1:]:
        total = total + t
    return total
