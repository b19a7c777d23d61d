"""
Products and stars
==================

IH of a product fan is the convolution of the factors.  The pairing of
the product is the tensor product of the factor pairings up to the
binomial coefficient coming from the n! normalization.  A star of a ray
compares with the projected fan through multiplication by psi.
"""

from ihfan.io import fixture, read_fan
from ihfan.pairing import kunneth_pairing, local_global_check
from ihfan.sheafih import kunneth_check

f1, _ = read_fan(fixture("f1"))
square, _ = read_fan(fixture("square-fan"))

rep = kunneth_check(f1, square)
print("ih:", rep["absolute"]["left"], "*", rep["absolute"]["right"], "=", rep["absolute"]["product"])

kp = kunneth_pairing(f1, square)
b = kp["binomial"]
print("product pairing = %d * (left (x) right):" % b,
      kp["product"] == [[b * x for x in row] for row in kp["kron"]])

lg = local_global_check(square, 0)
print("star of a ray:", "holds" if lg["holds"] else "fails",
      "| projected ih", lg["phi_ih"], "| psi bijective", lg["psi_iso"]["bijective"])
