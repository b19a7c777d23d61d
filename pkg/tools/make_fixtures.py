"""Regenerate the JSON fixtures shipped in ``ihfan/fixtures``.

Run from the repository root:  python3 tools/make_fixtures.py
"""

import math
from fractions import Fraction
from pathlib import Path

from ihfan.exactalg.scalar import sqrt_of
from ihfan.fan.fan import product_fan
from ihfan.fan.polytope import Polytope, normal_fan
from ihfan.io import dumps, fan_to_doc, polytope_to_doc

OUT = Path(__file__).resolve().parent.parent / "src" / "ihfan" / "fixtures"


def cube(n, lo=0, hi=1):
    pts = [()]
    for _ in range(n):
        pts = [p + (x,) for p in pts for x in (lo, hi)]
    return pts


def simplex(n):
    return [tuple(int(i == j) for j in range(n)) for i in range(-1, n)]


def circle_point(angle):
    # rational point on the unit circle near the given angle
    if abs(angle - math.pi) < 1e-9:
        return (-1, 0)
    t = Fraction(math.tan(angle / 2)).limit_denominator(12)
    return ((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def mgon(m):
    return [circle_point(2 * math.pi * k / m) for k in range(m)]


def octahedron(top=1):
    return [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, top), (0, 0, -1)]


PYRAMID = [(1, 1, 0), (1, -1, 0), (-1, 1, 0), (-1, -1, 0), (0, 0, 1)]

POLYTOPES = {
    "segment": ([(-1,), (1,)], None),
    "unit-segment": ([(0,), (1,)], None),
    "triangle": (simplex(2), None),
    "unit-square": (cube(2), None),
    "unit-cube": (cube(3), None),
    "simplex-1": (simplex(1), None),
    "simplex-2": (simplex(2), None),
    "simplex-3": (simplex(3), None),
    "octahedron": (octahedron(), None),
    "pyramid": (PYRAMID, None),
    "octahedron-sqrt2": (octahedron(sqrt_of(2)), 2),
}
for m in range(3, 8):
    POLYTOPES[f"{m}-gon"] = (mgon(m), None)

# fan name -> (polytope name, function name)
FANS = {
    "f1": ("segment", "H"),
    "square-fan": ("unit-square", "Hsquare"),
    "cube-fan": ("unit-cube", "Hcube"),
    "cube-face-fan": ("octahedron", "Hoct"),
    "pyramid-fan": ("pyramid", "Hpyr"),
    "cube-face-fan-sqrt2": ("octahedron-sqrt2", "Hoct"),
    "triangle-fan": ("triangle", "H"),
    "simplex-3-fan": ("simplex-3", "H"),
}
for m in range(3, 8):
    FANS[f"{m}-gon-fan"] = (f"{m}-gon", "H")


def main():
    OUT.mkdir(exist_ok=True)
    built = {}
    for name, (verts, field) in POLYTOPES.items():
        P = Polytope(verts)
        (OUT / f"{name}.json").write_text(dumps(polytope_to_doc(P, name, field)))
        built[name] = P
    fans = {}
    for name, (pname, fname) in FANS.items():
        fan, H = normal_fan(built[pname])
        fans[name] = fan
        (OUT / f"{name}.json").write_text(dumps(fan_to_doc(fan, {fname: H}, name)))
    for a, b in (("f1", "f1"), ("f1", "square-fan")):
        prod = product_fan(fans[a], fans[b])
        name = f"{a}-x-{b}"
        (OUT / f"{name}.json").write_text(dumps(fan_to_doc(prod, None, name)))
    print(f"wrote {len(POLYTOPES) + len(FANS) + 2} fixtures to {OUT}")


if __name__ == "__main__":
    main()
