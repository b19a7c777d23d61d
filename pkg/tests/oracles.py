"""Independent brute-force oracles shared by the tests."""

from fractions import Fraction

from ihfan.exactalg import kernel, rank


def boundary_residue_dims(fan, sigma, top_degree):
    """Residue dimensions of piecewise polynomials on the boundary of ``sigma``.

    Brute force over the 2-dimensional boundary cones of a 3-dimensional
    cone, written in ray coordinates ``s*r_a + t*r_b``; it shares no code
    with the sheaf construction.  Returns dims for polynomial degree
    ``0..top_degree``.
    """
    faces = [c for c in fan.facets[sigma]]
    assert all(len(f) == 2 for f in faces)
    pairs = [tuple(sorted(f)) for f in faces]
    n = fan.n

    def layout(k):
        return {p: i * (k + 1) for i, p in enumerate(pairs)}, len(pairs) * (k + 1)

    def sections(k):
        off, size = layout(k)
        rows = []
        for ray in sorted(sigma):
            touching = [p for p in pairs if ray in p]
            for p, q in zip(touching, touching[1:]):
                # pure power of the ray's own parameter must agree
                row = {}
                ip = off[p] + (k if p[0] == ray else 0)
                iq = off[q] + (k if q[0] == ray else 0)
                row[ip] = Fraction(1)
                row[iq] = row.get(iq, 0) - 1
                rows.append(row)
        return kernel(rows, size), size

    def times_coordinate(vec, k, i):
        # multiply the degree-k section by the ambient coordinate x_i
        off, _ = layout(k)
        off2, size2 = layout(k + 1)
        out = {}
        for p in pairs:
            a, b = fan.rays[p[0]][i], fan.rays[p[1]][i]
            for j in range(k + 1):  # coefficient of s^j t^(k-j)
                c = vec.get(off[p] + j, 0)
                if not c:
                    continue
                out[off2[p] + j + 1] = out.get(off2[p] + j + 1, 0) + c * a
                out[off2[p] + j] = out.get(off2[p] + j, 0) + c * b
        return out

    dims = []
    prev = None
    for k in range(top_degree + 1):
        basis, size = sections(k)
        image = [times_coordinate(v, k - 1, i) for v in prev for i in range(n)] if prev else []
        dims.append(len(basis) - rank(image) if image else len(basis))
        prev = basis
    return dims
