"""Conewise polynomial functions and strict convexity."""

from ..exactalg.poly import Poly
from ..exactalg.scalar import sign
from .geometry import vsum


class IncompatibleFunction(ValueError):
    pass


class ConewiseFunction:
    """One ambient polynomial per maximal cone, agreeing on shared faces."""

    def __init__(self, fan, pieces, check=True):
        self.fan = fan
        self.pieces = {}
        for c in fan.maximal:
            p = pieces.get(c)
            self.pieces[c] = p if p is not None else Poly.zero(fan.n)
        degs = {p.degree() for p in self.pieces.values() if p}
        if any(not p.is_homogeneous() for p in self.pieces.values()) or len(degs) > 1:
            raise IncompatibleFunction("conewise function is not homogeneous")
        self.degree = degs.pop() if degs else 0
        if check:
            self.check_compatible()

    @classmethod
    def from_linear(cls, fan, rows):
        """Build from one coefficient row per maximal cone (in ``fan.maximal`` order)."""
        return cls(fan, {c: Poly.linear(r) for c, r in zip(fan.maximal, rows)})

    @classmethod
    def from_ray_values(cls, fan, values):
        """Conewise linear function with prescribed values on the rays.

        Every maximal cone must be full dimensional; on nonsimplicial cones the
        values must be consistent with a single linear form.
        """
        from ..exactalg.linalg import solve, sparse
        pieces = {}
        for c in fan.maximal:
            idx = sorted(c)
            rows = [sparse(fan.rays[i]) for i in idx]
            x = solve(rows, [values.get(i, 0) for i in idx], fan.n)
            if x is None:
                raise IncompatibleFunction(f"ray values not linear on cone {idx}")
            pieces[c] = Poly.linear([x.get(j, 0) for j in range(fan.n)])
        return cls(fan, pieces)

    @classmethod
    def constant(cls, fan, value=1):
        return cls(fan, {c: Poly.const(fan.n, value) for c in fan.maximal}, check=False)

    @classmethod
    def global_poly(cls, fan, p):
        return cls(fan, {c: p for c in fan.maximal}, check=False)

    def check_compatible(self):
        mx = self.fan.maximal
        for i, a in enumerate(mx):
            for b in mx[i + 1:]:
                t = a & b
                pa = self.fan.restrict_poly(self.pieces[a], None, t)
                pb = self.fan.restrict_poly(self.pieces[b], None, t)
                if pa != pb:
                    raise IncompatibleFunction(f"pieces on {sorted(a)} and {sorted(b)} disagree")

    def on(self, cone):
        """Value on ``cone`` in its local coordinates."""
        for m in self.fan.maximal:
            if cone <= m:
                return self.fan.restrict_poly(self.pieces[m], None, cone)
        raise KeyError(f"cone {sorted(cone)} not in the fan")

    def value_at_ray(self, i):
        # local coordinates of a ray span may point the other way; use the ray itself
        m = next(m for m in self.fan.maximal if i in m)
        return self.pieces[m].evaluate(self.fan.rays[i])

    def _combine(self, other, op):
        if other.fan is not self.fan:
            raise IncompatibleFunction("functions on different fans")
        return ConewiseFunction(self.fan, {c: op(self.pieces[c], other.pieces[c])
                                           for c in self.fan.maximal}, check=False)

    def __add__(self, other):
        if isinstance(other, Poly):
            other = ConewiseFunction.global_poly(self.fan, other)
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        if isinstance(other, Poly):
            other = ConewiseFunction.global_poly(self.fan, other)
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, other):
        if isinstance(other, ConewiseFunction):
            return self._combine(other, lambda a, b: a * b)
        if isinstance(other, Poly):
            return ConewiseFunction(self.fan, {c: p * other for c, p in self.pieces.items()},
                                    check=False)
        return ConewiseFunction(self.fan, {c: p.scale(other) for c, p in self.pieces.items()},
                                check=False)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = ConewiseFunction.constant(self.fan)
        for _ in range(k):
            out = out * self
        return out

    def transfer(self, fan):
        """Pull back to a subdivision (or subfan) sharing the ambient space."""
        pieces = {}
        for c in fan.maximal:
            pt = vsum([fan.rays[i] for i in c])
            src = _locate(self.fan, pt)
            pieces[c] = self.pieces[src]
        return ConewiseFunction(fan, pieces, check=False)

    def __repr__(self):
        body = ", ".join(f"{sorted(c)}: {p}" for c, p in self.pieces.items())
        return f"ConewiseFunction({{{body}}})"


def _locate(fan, point):
    from .geometry import in_cone, inward_normals
    for m in fan.maximal:
        key = ("normals", m)
        nm = fan._subst.get(key)
        if nm is None:
            nm = inward_normals(fan.rays, m, fan.n)
            fan._subst[key] = nm
        if in_cone(point, nm):
            return m
    raise KeyError("point not covered by the fan")


def is_strictly_convex(l, fan=None):
    """Return ``(ok, witness)``; the witness is the first violating pair."""
    fan = fan or l.fan
    if l.degree not in (0, 2) and any(l.pieces.values()):
        raise ValueError("strict convexity is defined for conewise linear functions")
    mx = fan.maximal
    for tau in mx:
        v = vsum([fan.rays[i] for i in tau])
        lt = l.pieces[tau].evaluate(v)
        for s in mx:
            if s == tau:
                continue
            if sign(l.pieces[s].evaluate(v) - lt) >= 0:
                return False, (sorted(s), sorted(tau))
    return True, None
