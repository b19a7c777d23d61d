"""Lefschetz operators on IH, hard Lefschetz and Hodge-Riemann certificates.

Degrees are cohomological degrees: IH lives in 0, 2, ..., 2n and ``l^k`` maps
degree ``n - k`` to ``n + k``.
"""

from fractions import Fraction
from itertools import combinations

from .exactalg.linalg import det, identity, kernel, leading_pivots, matmul, sparse, transpose
from .exactalg.scalar import sign
from .fan.functions import is_strictly_convex


class NotStrictlyConvex(ValueError):
    pass


class LefschetzAction:
    """Matrices of multiplication by ``l`` between consecutive IH degrees."""

    def __init__(self, l, ih):
        ok, wit = is_strictly_convex(l)
        if not ok:
            raise NotStrictlyConvex(f"l is not strictly convex (witness {wit})")
        if l.degree != 2:
            raise NotStrictlyConvex("l must be conewise linear")
        self.l = l
        self.ih = ih
        self.n = ih.n
        self.dims = ih.dims
        self.matrices = {d: ih.multiply_matrix(l, d) for d in range(0, 2 * self.n, 2)}

    def dim(self, d):
        return self.dims[d // 2] if 0 <= d <= 2 * self.n and d % 2 == 0 else 0

    def power(self, d, k):
        """Matrix of ``l^k`` from degree ``d`` (rows: target basis)."""
        out = identity(self.dim(d))
        for j in range(k):
            src = d + 2 * j
            if src + 2 > 2 * self.n:
                return []
            out = matmul(self.matrices[src], out)
        return out


def lefschetz_action(l, ih):
    return LefschetzAction(l, ih)


def _ks(n):
    return [k for k in range(n, -1, -1) if (n - k) % 2 == 0]


def check_hl(action):
    """Square, nonsingular ``l^k`` for every ``k >= 1`` plus unimodality."""
    n = action.n
    out = {"dims": list(action.dims), "maps": {}, "pass": True}
    for k in _ks(n):
        if k == 0:
            continue
        src = n - k
        mat = action.power(src, k)
        rows, cols = action.dim(n + k), action.dim(src)
        square = rows == cols
        d = det(mat) if square else Fraction(0)
        out["maps"][k] = {"source_degree": src, "matrix": mat, "determinant": d,
                          "square": square, "ok": square and d != 0}
        if not out["maps"][k]["ok"]:
            out["pass"] = False
    half = [action.dims[j] for j in range(n // 2 + 1)]
    out["unimodal"] = all(a <= b for a, b in zip(half, half[1:]))
    out["pass"] = out["pass"] and out["unimodal"]
    return out


def primitive_basis(action, k):
    """Kernel of ``l^(k+1)`` on ``IH^(n-k)`` as dense coordinate vectors."""
    n = action.n
    src = n - k
    if src < 0 or src % 2:
        return []
    size = action.dim(src)
    if src + 2 * (k + 1) > 2 * n:
        return [[Fraction(int(i == j)) for i in range(size)] for j in range(size)]
    mat = action.power(src, k + 1)
    ker = kernel([sparse(r) for r in mat], size)
    return [[v.get(i, Fraction(0)) for i in range(size)] for v in ker]


def principal_minors_positive(g):
    m = len(g)
    for r in range(1, m + 1):
        for idx in combinations(range(m), r):
            sub = [[g[i][j] for j in idx] for i in idx]
            if sign(det(sub)) <= 0:
                return False
    return True


def check_hr(action, pairing):
    """Gram matrices of the Hodge-Riemann forms on primitive subspaces.

    ``pairing`` is a :class:`PairingMatrix` on the same IH bases (for a
    complete fan the relative basis coincides with the absolute one).
    """
    n = action.n
    out = {"forms": {}, "pass": True}
    total = {j: 0 for j in range(n + 1)}
    for k in _ks(n):
        src = n - k
        B = primitive_basis(action, k)
        M = pairing.blocks.get(src, [])
        s = -1 if (src // 2) % 2 else 1
        g = []
        if B:
            ML = matmul(M, action.power(src, k))
            g = [[s * x for x in row] for row in matmul(matmul(B, ML), transpose(B))]
        piv = leading_pivots(g) if g else []
        symmetric = all(g[i][j] == g[j][i] for i in range(len(g)) for j in range(len(g)))
        positive = all(sign(p) > 0 for p in piv) and len(piv) == len(g)
        method = "pivots"
        if not positive and piv and piv[-1] == 0 and len(g) > 1:
            method = "principal minors"
            positive = principal_minors_positive(g)
        out["forms"][k] = {"degree": src, "prim_dim": len(B), "basis": B, "gram": g,
                           "sign": s, "pivots": piv, "symmetric": symmetric,
                           "method": method, "ok": symmetric and positive}
        if not (symmetric and positive):
            out["pass"] = False
        for j in range(k + 1):
            total[src // 2 + j] += len(B)
    out["decomposition"] = [total[j] for j in range(n + 1)]
    out["decomposition_ok"] = out["decomposition"] == list(action.dims)
    out["pass"] = out["pass"] and out["decomposition_ok"]
    return out


def self_adjoint(action, pairing):
    """``(l a, b) = (a, l b)`` on all basis pairs of complementary degree."""
    n = action.n
    for d in range(0, 2 * n - 1, 2):
        dt = 2 * n - d - 2
        A = pairing.blocks.get(d + 2)
        B = pairing.blocks.get(d)
        if not A or not B:
            continue
        lhs = matmul(transpose(action.matrices[d]), A)
        rhs = matmul(B, action.matrices[dt])
        if lhs != rhs:
            return False
    return True


def certify(fan, l, sheaf=None, ray_rule="barycentric"):
    """Build IH, the Lefschetz action, the pairing and both certificates."""
    from .pairing import PairingContext
    from .sheafih import SheafError, quasiconvex_certificate
    if not fan.complete:
        raise SheafError("Lefschetz certificates are stated for complete fans")
    ctx = PairingContext(fan, sheaf, ray_rule=ray_rule)
    cert = quasiconvex_certificate(ctx.sheaf, fan)
    if not cert.accepted:
        raise SheafError(cert["reason"])
    action = LefschetzAction(l, ctx.absolute)
    hl = check_hl(action)
    pm = ctx.matrix()
    hr = check_hr(action, pm)
    return {"ih": ctx.absolute.dims, "action": action, "pairing": pm, "hl": hl, "hr": hr,
            "self_adjoint": self_adjoint(action, pm)}
