"""Graded operations: polynomial arithmetic entry point, restriction to a
linear span, and degree-wise solving."""

from .linalg import Echelon, kernel, rref, solve, sparse
from .poly import Poly, DimensionMismatch, monomials, monomial_index


def poly_arith(op, a, b):
    if isinstance(b, Poly) and a.n != b.n:
        raise DimensionMismatch(f"polynomials in {a.n} and {b.n} variables")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown operation {op!r}")


def span_basis(vectors):
    """Reduced echelon basis of the span and its pivot columns.

    A vector ``v`` in the span has coordinates ``[v[p] for p in pivots]`` in
    this basis, which is how local coordinates on a cone are defined.
    """
    n = len(vectors[0]) if vectors else 0
    piv, red = rref([sparse(v) for v in vectors])
    basis = [tuple(r.get(j, 0) for j in range(n)) for r in red]
    return basis, tuple(piv)


def restrict_to_span(f, cone):
    """Compose ``f`` with the echelon parametrization of the cone's span.

    ``cone`` is anything with a ``rays`` attribute, or a list of vectors.
    """
    rays = getattr(cone, "rays", cone)
    basis, _ = span_basis(list(rays))
    k = len(basis)
    # x_i = sum_j t_j * basis[j][i]
    mat = [[basis[j][i] for j in range(k)] for i in range(f.n)]
    if k == 0:
        return Poly.const(0, f.constant())
    return f.linear_substitute(mat)


def graded_solve(task, matrix, ncols=None, rhs=None, generators=None, target=None):
    """Degree-wise solver.

    ``kernel``: basis of the kernel of ``matrix`` (rows over ``ncols`` columns).
    ``image``: echelon basis of the row space of the transpose, i.e. the column
    span, returned as sparse vectors.
    ``solve``: pivot solution of ``matrix x = rhs`` or ``None``.
    ``residue_basis``: ``generators`` is a list of vectors spanning the
    submodule part ``A+ M`` in the target degree and ``target`` a spanning list
    of the degree piece; returns indices into ``target`` completing the former
    to a basis.
    """
    if task == "kernel":
        return kernel(matrix, ncols)
    if task == "image":
        cols = [dict() for _ in range(ncols)]
        for i, row in enumerate(matrix):
            for j, c in (row.items() if isinstance(row, dict) else enumerate(row)):
                if c != 0:
                    cols[j][i] = c
        return rref(cols)[1]
    if task == "solve":
        return solve(matrix, rhs, ncols)
    if task == "residue_basis":
        e = Echelon()
        for v in generators:
            e.insert(v)
        picked = []
        for i, v in enumerate(target):
            if e.insert(v) is not None:
                picked.append(i)
        return picked
    raise ValueError(f"unknown task {task!r}")


def multiplication_vectors(n, k):
    """Images of degree-``k`` monomials under each variable, as sparse vectors
    in the degree ``k+1`` monomial basis."""
    idx = monomial_index(n, k + 1)
    out = []
    for m in monomials(n, k):
        for i in range(n):
            e = list(m)
            e[i] += 1
            out.append({idx[tuple(e)]: 1})
    return out
