"""Exact scalars: rationals and elements of a real quadratic field Q(sqrt d).

Rationals are plain :class:`fractions.Fraction` values.  Irrational elements
are :class:`QuadElt` instances; any arithmetic result with vanishing
irrational part collapses back to a ``Fraction`` so that the common rational
case stays fast.
"""

from fractions import Fraction
import re


class FieldMismatch(ValueError):
    pass


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to an exact scalar")


def _is_squarefree(d):
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


class QuadElt:
    """``a + b*sqrt(d)`` with rational ``a``, ``b`` and squarefree ``d > 1``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        self.a = _frac(a)
        self.b = _frac(b)
        self.d = int(d)

    @classmethod
    def make(cls, a, b, d):
        b = _frac(b)
        if b == 0:
            return _frac(a)
        if not _is_squarefree(d):
            raise ValueError(f"sqrt field requires squarefree d > 1, got {d}")
        return cls(a, b, d)

    def _coerce(self, other):
        if isinstance(other, QuadElt):
            if other.d != self.d:
                raise FieldMismatch(f"mixed fields sqrt{self.d} and sqrt{other.d}")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return _frac(other), Fraction(0)
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadElt.make(self.a + c[0], self.b + c[1], self.d)

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadElt.make(self.a - c[0], self.b - c[1], self.d)

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadElt.make(c[0] - self.a, c[1] - self.b, self.d)

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        return QuadElt.make(self.a * a + self.d * self.b * b,
                            self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def __neg__(self):
        return QuadElt(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def norm(self):
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self):
        return QuadElt(self.a, -self.b, self.d)

    def inverse(self):
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadElt.make(self.a / nrm, -self.b / nrm, self.d)

    def __truediv__(self, other):
        if isinstance(other, QuadElt):
            return self * other.inverse()
        other = _frac(other)
        return QuadElt.make(self.a / other, self.b / other, self.d)

    def __rtruediv__(self, other):
        return _frac(other) * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = Fraction(1)
        base = self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        c = self._coerce(other) if isinstance(other, (QuadElt, int, Fraction)) else None
        if c is None:
            return NotImplemented
        return self.a == c[0] and self.b == c[1]

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return True  # b != 0 by construction

    def sign(self):
        return _quad_sign(self.a, self.b, self.d)

    def __lt__(self, other):
        return sign(self - other) < 0

    def __le__(self, other):
        return sign(self - other) <= 0

    def __gt__(self, other):
        return sign(self - other) > 0

    def __ge__(self, other):
        return sign(self - other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        return f"QuadElt({to_str(self)})"

    def __str__(self):
        return to_str(self)


def _quad_sign(a, b, d):
    # sign of a + b*sqrt(d) decided from a^2 - d b^2, never by floats
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    nrm = a * a - d * b * b
    return sa if nrm > 0 else sb


def sign(x):
    if isinstance(x, QuadElt):
        return x.sign()
    return (x > 0) - (x < 0)


def is_scalar(x):
    return isinstance(x, (int, Fraction, QuadElt))


def field_of(x):
    """Return ``d`` for a quadratic element, ``None`` for a rational."""
    return x.d if isinstance(x, QuadElt) else None


def sqrt_of(d):
    return QuadElt.make(0, 1, d)


def to_float(x):
    if isinstance(x, QuadElt):
        return float(x.a) + float(x.b) * x.d ** 0.5
    return float(x)


def to_str(x):
    """Canonical string form, e.g. ``-3/2`` or ``1/2+1/3*sqrt2``."""
    if isinstance(x, QuadElt):
        head = "" if x.a == 0 else str(x.a)
        b = x.b
        mag = "" if abs(b) == 1 else str(abs(b)) + "*"
        if head:
            tail = ("+" if b > 0 else "-") + mag + f"sqrt{x.d}"
        else:
            tail = ("" if b > 0 else "-") + mag + f"sqrt{x.d}"
        return head + tail
    return str(_frac(x))


_QUAD_RE = re.compile(
    r"^\s*(?:(?P<a>[+-]?\d+(?:/\d+)?))?\s*"
    r"(?:(?P<bs>[+-])?\s*(?P<b>\d+(?:/\d+)?)?\s*\*?\s*sqrt\s*(?P<d>\d+))?\s*$")


def parse_scalar(text, d=None):
    """Parse ``"p/q"`` or ``"p/q+r/s*sqrt2"``.

    ``d`` is the squarefree radicand fixed for the session; a radical with a
    different radicand raises :class:`FieldMismatch`.
    """
    if isinstance(text, (int, Fraction)):
        return _frac(text)
    if isinstance(text, QuadElt):
        if text.d != d:
            raise FieldMismatch(f"element of sqrt{text.d} in field sqrt{d}")
        return text
    s = str(text).replace(" ", "")
    if "sqrt" not in s:
        return Fraction(s)
    m = _QUAD_RE.match(s)
    if m is None or m.group("d") is None:
        raise ValueError(f"cannot parse scalar {text!r}")
    dd = int(m.group("d"))
    if d is None or dd != d:
        raise FieldMismatch(f"radical sqrt{dd} not allowed in field {d!r}")
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
    if m.group("bs") == "-":
        b = -b
    elif m.group("bs") is None and m.group("a") and not m.group("b"):
        # "3/2*sqrt2": the leading number is the radical coefficient
        a, b = Fraction(0), a
    return QuadElt.make(a, b, dd)
