"""
Hard Lefschetz and Hodge-Riemann certificates
=============================================

Multiplication by a strictly convex conewise linear function on IH
satisfies hard Lefschetz, and the twisted pairing is definite on primitive
classes.  Both are checked here with exact determinants and pivots, on a
fan with an irrational ray.
"""

from ihfan.io import fixture, read_fan
from ihfan.lefschetz import certify

fan, funcs = read_fan(fixture("cube-face-fan-sqrt2"))
print("field: Q(sqrt%d)" % fan.field)

cert = certify(fan, funcs["Hoct"])
print("ih =", cert["ih"])

for k, m in cert["hl"]["maps"].items():
    print(f"l^{k} on degree {m['source_degree']}: det = {m['determinant']}")

for k, f in cert["hr"]["forms"].items():
    pivots = ", ".join(str(p) for p in f["pivots"])
    print(f"Prim in degree {f['degree']} (dim {f['prim_dim']}), sign {f['sign']:+d}: pivots {pivots}")

# the raw form on the quadrant is negative on primitive degree-2 classes
quad, qf = read_fan(fixture("square-fan"))
q = certify(quad, qf["Hsquare"])["hr"]["forms"][0]
print("quadrant (a, a) on Prim IH^2 =", q["sign"] * q["gram"][0][0])
