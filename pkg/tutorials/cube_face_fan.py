"""
Intersection cohomology of the cube face fan
============================================

The fan over the faces of a cube has six square maximal cones, so it is not
simplicial and its piecewise polynomials are not the right object.  The
minimal sheaf replaces them.
"""

from ihfan.hvec import FaceLattice, generalized_h
from ihfan.io import fixture, read_fan
from ihfan.pairing import ih_pairing_matrix
from ihfan.sheafih import build_minimal_sheaf, ih

fan, funcs = read_fan(fixture("cube-face-fan"))
print(fan.describe())

# every square cone gets one extra generator in degree 2
sheaf = build_minimal_sheaf(fan)
for sigma in fan.maximal:
    print(sorted(sigma), "stalk generators in degrees", sheaf.gens[sigma])

space = ih(sheaf, fan)
print("ih =", space.dims)

# compare with the h-vector of the cone poset, computed without any sheaves
print("h  =", generalized_h(FaceLattice.of_fan(fan)))

# the pairing between IH and IH of the complement of the boundary (here: IH again)
pm = ih_pairing_matrix(fan)
for d, block in sorted(pm.blocks.items()):
    print(f"degree {d}: {len(block)}x{len(block[0])} block, det {pm.determinants()[d]}")
