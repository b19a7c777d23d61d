"""
Volume polynomial and the polytope algebra
==========================================

For a simple polytope the volume is a polynomial in the support numbers.
Its derivatives span the polytope algebra, which matches the conewise
polynomial picture on the normal fan.
"""

from ihfan.io import fixture, read_polytope
from ihfan.timorin import (PolytopeAlgebra, VolumePolynomial, beta_compare,
                           lefschetz_LP_check, vertex_basis)

P = read_polytope(fixture("unit-cube"))
vol = VolumePolynomial(P)
print("normals:", [" ".join(str(x) for x in v) for v in P.normals])
print("Vol =", vol.poly)
print("translation invariant:", vol.translation_invariant())

alg = PolytopeAlgebra(vol)
print("dim A_k =", alg.dims)

vb = vertex_basis(P, alg)
print("vertex basis by index:", vb["dims"], "independent:", vb["independent"])

lp = lefschetz_LP_check(alg)
print("L_P^n Vol =", lp["LnVol"], " n! Vol(P) =", lp["n!Vol"])

beta = beta_compare(P, alg)
print("pairing tables agree with the Brion side:", beta["isometry"])
