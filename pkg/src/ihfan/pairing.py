"""Brion's functional, admissible morphisms and the canonical pairings.

On a simplicial fan the minimal sheaf is the sheaf of conewise polynomials
and the pairing of ``a`` with an interior-supported ``b`` is
``n! * zeta(a*b)``.  A general fan is first desingularized to a simplicial
``Theta``; an admissible morphism ``alpha`` carries sections of ``L_Delta``
to conewise polynomials on ``Theta`` and the pairing is computed there.

All polynomials handed to :func:`brion_zeta` are in ambient coordinates,
keyed by maximal (full-dimensional) cones.
"""

from fractions import Fraction
from math import comb, factorial

from .exactalg.linalg import det, inverse, solve
from .exactalg.poly import Poly
from .exactalg.ratfn import RationalFn, ratfn_sum_reduce
from .exactalg.scalar import sign
from .fan.fan import ORIGIN, FanError, closure, cone_key, validate_fan
from .fan.functions import ConewiseFunction
from .fan.geometry import dot
from .fan.subdivision import desingularize, in_relative_interior
from .sheafih import IHSpace, MinimalSheaf, SectionSpace, SheafError


class ZetaError(ArithmeticError):
    """Raised when a Brion sum does not reduce to a polynomial."""


# Brion's functional

def facet_forms(fan, sigma):
    """Linear forms ``u_i`` dual to the rays of a simplicial n-cone.

    ``u_i`` is 1 on ray ``i`` and 0 on the others, so each form is
    nonnegative on ``sigma`` and cuts out the facet opposite ray ``i``.
    """
    idx = sorted(sigma)
    if len(idx) != fan.n or fan.dim(sigma) != fan.n:
        raise FanError(f"cone {idx} is not a simplicial full-dimensional cone")
    cols = [[fan.rays[i][r] for i in idx] for r in range(fan.n)]
    inv = inverse(cols)
    return [Poly.linear(row) for row in inv], det(cols)


def facet_form_product(fan, sigma):
    """Product of the facet forms of ``sigma`` scaled so their wedge is ``±Ω``."""
    forms, d = facet_forms(fan, sigma)
    out = Poly.const(fan.n, abs(d))
    for u in forms:
        out = out * u
    return out


def _denominators(fan):
    key = ("brion", frozenset(fan.maximal))
    cache = fan._subst.get(key)
    if cache is None:
        cache = {}
        for m in fan.maximal:
            if fan.dim(m) != fan.n:
                continue
            forms, d = facet_forms(fan, m)
            cache[m] = (abs(d), forms)
        fan._subst[key] = cache
    return cache


def brion_zeta(fan, pieces, exact=True):
    """``sum f_sigma / F_sigma`` over the full-dimensional maximal cones.

    ``pieces`` maps maximal cones to ambient polynomials (a ConewiseFunction
    is accepted too).  With ``exact`` the result must be a polynomial and is
    returned as a :class:`Poly`; otherwise the reduced :class:`RationalFn`.
    """
    if isinstance(pieces, ConewiseFunction):
        pieces = pieces.pieces
    dens = _denominators(fan)
    terms = []
    for m in fan.maximal:
        if m not in dens:
            continue
        f = pieces.get(m)
        if f is None or not f:
            continue
        scale, forms = dens[m]
        terms.append(RationalFn(f.scale(Fraction(1) / scale), forms))
    if not terms:
        total = RationalFn(Poly.zero(fan.n))
    else:
        total = ratfn_sum_reduce(terms)
    if not exact:
        return total
    if not total.is_poly():
        raise ZetaError("Brion sum has a nonpolynomial remainder")
    return total.num


def generic_point(fan, start=2):
    """A rational point ``(1, t, t^2, ...)`` off every facet hyperplane of
    every maximal cone, with ``t >= start``; returns ``(point, t)``."""
    dens = _denominators(fan)
    t = start
    while True:
        v = tuple(Fraction(t) ** k for k in range(fan.n))
        if all(u.evaluate(v) != 0 for _, forms in dens.values() for u in forms):
            return v, t
        t += 1


def zeta_constant(fan, pieces):
    """``zeta`` of a top-degree function, evaluated at two generic points.

    The sum is a constant when ``deg f = 2n`` and the precondition holds, so
    both evaluations must agree; disagreement raises :class:`ZetaError`.
    """
    if isinstance(pieces, ConewiseFunction):
        pieces = pieces.pieces
    dens = _denominators(fan)
    # distinct parameters give non-proportional points when n >= 2
    p1, t = generic_point(fan)
    p2, _ = generic_point(fan, t + 1)
    vals = []
    for p in (p1, p2):
        total = Fraction(0)
        for m, (scale, forms) in dens.items():
            f = pieces.get(m)
            if f is None or not f:
                continue
            den = scale
            for u in forms:
                den = den * u.evaluate(p)
            total = total + f.evaluate(p) / den
        vals.append(total)
    if vals[0] != vals[1]:
        raise ZetaError("Brion sum is not constant; precondition violated")
    return vals[0]


def phi(fan, sigma):
    """The function equal to ``F_sigma`` on ``sigma`` and zero elsewhere."""
    pieces = {m: Poly.zero(fan.n) for m in fan.maximal}
    pieces[sigma] = facet_form_product(fan, sigma)
    return ConewiseFunction(fan, pieces, check=False)


# admissible morphisms

def ray_carriers(delta, theta):
    """Smallest cone of ``delta`` containing each ray of a subdivision ``theta``."""
    out = {}
    for i in theta.used_rays():
        r = theta.rays[i]
        for c in delta.cones:
            if c and in_relative_interior(delta, c, r):
                out[i] = c
                break
        else:
            raise FanError(f"ray {i} of the subdivision is outside the fan")
    return out


def _join(delta, rays):
    best = None
    for c in delta.cones:
        if rays <= c and (best is None or len(c) < len(best)):
            best = c
    return best


class AdmissibleMorphism:
    """A split embedding ``L_Delta -> pi_* L_Theta`` built cone by cone.

    ``images[sigma][g]`` is the section over ``pi^-1[sigma]`` assigned to the
    ``g``-th generator of ``L_sigma``, given as local polynomials on the
    maximal cones of ``pi^-1[sigma]`` (which share the span of ``sigma``).
    """

    def __init__(self, delta, sheaf, theta, theta_sheaf=None):
        self.delta = delta
        self.sheaf = sheaf
        self.theta = theta
        self.theta_sheaf = theta_sheaf or MinimalSheaf(theta)
        if any(self.theta_sheaf.gens[c] != (0,) for c in theta.cones):
            raise SheafError("admissible morphisms target a simplicial subdivision")
        rc = ray_carriers(delta, theta)
        self.carrier = {}
        for c in theta.cones:
            self.carrier[c] = _join(delta, frozenset().union(*[rc[i] for i in c])) if c else ORIGIN
        self.preimage = {}
        for c in theta.cones:
            for s in delta.cones:
                if self.carrier[c] <= s:
                    self.preimage.setdefault(s, set()).add(c)
        self.images = {ORIGIN: [{ORIGIN: Poly.const(0, 1)}]}
        for s in delta.cones:
            if s:
                self._build(s)

    def _maximal_in(self, cones):
        covered = set()
        for c in cones:
            covered.update(self.theta.facets[c])
        return sorted((c for c in cones if c not in covered), key=cone_key)

    def _build(self, sigma):
        sh, tsh = self.sheaf, self.theta_sheaf
        space = SectionSpace(tsh, closure(self.theta, self.preimage[sigma]))
        out = []
        for g, dg in enumerate(sh.gens[sigma]):
            rows = list(space.constraint_rows(dg))
            rhs = [0] * len(rows)
            off = space.offsets(dg)
            for tau in self.delta.facets[sigma]:
                coeffs = sh.res[(sigma, tau)][g]
                for nu in self._maximal_in(self.preimage[tau]):
                    target = Poly.zero(self.theta.dim(nu))
                    for h, p in enumerate(coeffs):
                        if p:
                            target = target + p * self.images[tau][h][nu]
                    tv = tsh.stalk_vector(nu, dg, [target])
                    m = next(m for m in space.maximal if nu <= m)
                    acc = {}
                    for j, img in enumerate(tsh.restriction_columns(m, nu, dg)):
                        for k, v in img.items():
                            acc.setdefault(k, {})[off[m] + j] = v
                    for k in set(acc) | set(tv):
                        rows.append(acc.get(k, {}))
                        rhs.append(tv.get(k, 0))
            x = solve(rows, rhs, space.size(dg))
            if x is None:
                raise SheafError(f"no admissible lift at cone {sorted(sigma)}")
            coords = space.unpack(dg, x)
            out.append({m: coords[m][0] for m in space.maximal})
        self.images[sigma] = out

    def check_restriction(self):
        """Images of restricted generators equal restrictions of images."""
        th = self.theta
        for sigma in self.delta.cones:
            if not sigma:
                continue
            for tau in self.delta.facets[sigma]:
                coeffs = self.sheaf.res[(sigma, tau)]
                for g, row in enumerate(coeffs):
                    img = self.images[sigma][g]
                    for nu in self._maximal_in(self.preimage[tau]):
                        m = next(m for m in img if nu <= m)
                        lhs = th.restrict_poly(img[m], m, nu)
                        rhs = Poly.zero(th.dim(nu))
                        for h, p in enumerate(row):
                            if p:
                                rhs = rhs + p * self.images[tau][h][nu]
                        if lhs != rhs:
                            return False
        return True

    def apply(self, coords):
        """Push a section (generator coordinates per maximal cone of ``delta``)
        to ambient polynomials on the maximal cones of ``theta``."""
        out = {}
        n = self.theta.n
        for mu in self.theta.maximal:
            m = self.carrier[mu]
            if m not in coords:
                raise SheafError("section does not cover the subdivision")
            total = Poly.zero(n)
            for g, c in enumerate(coords[m]):
                if c:
                    total = total + c * self.images[m][g][mu]
            out[mu] = total
        return out

    def injective_in_degree(self, space, d):
        """Rank check: ``alpha`` is injective on degree-``d`` sections of ``space``."""
        from .exactalg.linalg import rank
        tspace = SectionSpace(self.theta_sheaf, self.theta.cones)
        vecs = []
        for v in space.basis(d):
            img = self.apply(space.unpack(d, v))
            vecs.append(tspace.pack(d, {mu: [img[mu]] for mu in tspace.maximal}))
        return rank(vecs) == len(vecs)


# canonical pairing

class PairingMatrix:
    """Values of the pairing between IH and relative IH bases.

    ``blocks[d]`` is the matrix whose rows are the degree-``d`` basis of IH
    and whose columns are the degree ``2n - d`` basis of relative IH.
    """

    def __init__(self, n, blocks, rows_dims, col_dims):
        self.n = n
        self.blocks = blocks
        self.row_dims = rows_dims
        self.col_dims = col_dims

    def square(self):
        return all(len(b) == len(b[0]) if b else True for b in self.blocks.values()) and \
            all(self.row_dims[j] == self.col_dims[self.n - j] for j in range(self.n + 1))

    def determinants(self):
        return {d: det(b) for d, b in self.blocks.items()}

    def nondegenerate(self):
        if not self.square():
            return False
        return all(v != 0 for v in self.determinants().values())

    def full(self):
        """All blocks assembled into one matrix in degree order."""
        roff, coff = [0], [0]
        for j in range(self.n + 1):
            roff.append(roff[-1] + self.row_dims[j])
            coff.append(coff[-1] + self.col_dims[j])
        out = [[Fraction(0)] * coff[-1] for _ in range(roff[-1])]
        for d, b in self.blocks.items():
            j = d // 2
            for r, row in enumerate(b):
                for c, v in enumerate(row):
                    out[roff[j] + r][coff[self.n - j] + c] = v
        return out


class PairingContext:
    """Everything needed to pair sections of ``L_fan``.

    The fan is desingularized once (``ray_rule`` picks the subdivision rays)
    and one admissible morphism is used for every value computed here.
    ``omega_scale`` rescales the volume form; pairings scale by its inverse.
    """

    def __init__(self, fan, sheaf=None, ray_rule="barycentric", omega_scale=1, exact_zeta=False):
        self.fan = fan
        self.n = fan.n
        self.sheaf = sheaf if sheaf is not None else MinimalSheaf(fan)
        self.omega_scale = Fraction(omega_scale) if isinstance(omega_scale, int) else omega_scale
        self.exact_zeta = exact_zeta
        simplicial = all(self.sheaf.gens[c] == (0,) for c in fan.cones)
        if simplicial:
            self.theta = fan
            self.alpha = None
        else:
            steps = desingularize(fan, ray_rule=ray_rule)
            self.theta = steps[-1].fan
            self.alpha = AdmissibleMorphism(fan, self.sheaf, self.theta)
        self.factor = Fraction(factorial(self.n)) / self.omega_scale
        self._abs = None
        self._rel = None

    @property
    def absolute(self):
        if self._abs is None:
            self._abs = IHSpace(self.sheaf, self.fan)
        return self._abs

    @property
    def relative(self):
        if self._rel is None:
            self._rel = IHSpace(self.sheaf, self.fan, relative=True)
        return self._rel

    def push(self, coords):
        """Generator coordinates per maximal cone -> ambient pieces on ``theta``."""
        if self.alpha is None:
            return {m: coords[m][0] for m in self.fan.maximal}
        return self.alpha.apply(coords)

    def push_vector(self, space, d, vec):
        return self.push(space.unpack(d, vec))

    def value(self, a, b):
        """Pair two pushed sections; returns a Poly of degree ``deg a + deg b - 2n``."""
        prod = {m: a[m] * b[m] for m in self.theta.maximal}
        return brion_zeta(self.theta, prod).scale(self.factor)

    def scalar(self, a, b):
        """Degree-zero pairing value of two pushed sections of complementary degree."""
        prod = {m: a[m] * b[m] for m in self.theta.maximal}
        if self.exact_zeta:
            return brion_zeta(self.theta, prod).constant() * self.factor
        return zeta_constant(self.theta, prod) * self.factor

    def local(self, a, b):
        """``n! zeta(ab)`` as a rational function (no support condition)."""
        prod = {m: a[m] * b[m] for m in self.theta.maximal}
        return brion_zeta(self.theta, prod, exact=False).scale(self.factor)

    def pushed_bases(self):
        ab, rl = self.absolute, self.relative
        A = {d: [self.push_vector(ab.space, d, v) for v in ab.lifts[d]] for d in ab.lifts}
        B = {d: [self.push_vector(rl.space, d, v) for v in rl.lifts[d]] for d in rl.lifts}
        return A, B

    def matrix(self):
        A, B = self.pushed_bases()
        n = self.n
        blocks = {}
        for d in range(0, 2 * n + 1, 2):
            rows = A.get(d, [])
            cols = B.get(2 * n - d, [])
            if not rows and not cols:
                continue
            blocks[d] = [[self.scalar(a, b) for b in cols] for a in rows]
        return PairingMatrix(n, blocks, self.absolute.dims, self.relative.dims)


def _certified(fan, sheaf):
    from .sheafih import quasiconvex_certificate
    cert = quasiconvex_certificate(sheaf, fan)
    if not cert.accepted:
        raise SheafError(f"quasi-convexity not certified: {cert['reason']}")


def ih_pairing_matrix(fan, sheaf=None, check_certificate=True, ray_rule="barycentric",
                      context=None):
    ctx = context or PairingContext(fan, sheaf, ray_rule=ray_rule)
    if check_certificate:
        _certified(fan, ctx.sheaf)
    return ctx.matrix()


def canonical_pairing(ctx, a, da, b, db):
    """Pair ``a`` (degree ``da`` absolute section vector) with ``b`` (relative)."""
    pa = ctx.push_vector(SectionSpace(ctx.sheaf, ctx.fan.cones), da, a)
    rel = ctx.relative.space
    pb = ctx.push_vector(rel, db, b)
    if da + db < 2 * ctx.n:
        return Poly.zero(ctx.n)
    return ctx.value(pa, pb)


def local_pairing(ctx, a, b):
    """The Q(A)-valued pairing of two sections given as pushed pieces or
    ConewiseFunctions; agrees with the canonical one on interior support."""
    if isinstance(a, ConewiseFunction):
        a = a.pieces
    if isinstance(b, ConewiseFunction):
        b = b.pieces
    return ctx.local(a, b)


def reflect_sections(quad, pieces, plus, minus):
    """Copy per-cone polynomials from ``tau + minus`` to ``tau + plus``."""
    out = {}
    for m, p in pieces.items():
        if minus in m:
            out[(m - {minus}) | {plus}] = p
    return out


def sign_flip_check(fan, plus, minus, samples):
    """Compare ``{a,b}`` on ``[St(minus)]`` with ``-{ga, gb}`` on ``[St(plus)]``.

    ``samples`` is a list of pairs of piece dicts on the maximal cones of
    ``[St(minus)]``; cones are matched through their link part.
    """
    from .fan.fan import star_fan
    dm = star_fan(fan, [minus])
    dp = star_fan(fan, [plus])
    cm = PairingContext(dm, MinimalSheaf(fan))
    cp = PairingContext(dp, cm.sheaf)
    out = []
    for a, b in samples:
        lhs = cm.local(a, b)
        rhs = cp.local(reflect_sections(fan, a, plus, minus), reflect_sections(fan, b, plus, minus))
        out.append((lhs, rhs, lhs == rhs.scale(-1)))
    return out


# local-global compatibility

def _quotient_map(rho):
    """``(x_n, U)``: a form positive on ``rho`` and rows vanishing on it with
    ``det([x_n; U]) = 1``."""
    n = len(rho)
    k = next(i for i, x in enumerate(rho) if x != 0)
    xn = [Fraction(0)] * n
    xn[k] = Fraction(1) if sign(rho[k]) > 0 else Fraction(-1)
    U = []
    for j in range(n):
        if j == k:
            continue
        row = [Fraction(0)] * n
        row[j] = Fraction(1)
        row[k] = -rho[j] / rho[k]
        U.append(row)
    d = det([xn] + U)
    if U:
        U[0] = [x / d for x in U[0]]
    return xn, U


class LocalGlobal:
    """Data for comparing the pairing on ``[St(rho)]`` with the projected fan."""

    def __init__(self, fan, rho, sheaf=None):
        from .fan.fan import star_fan, star_link
        if fan.n < 2:
            raise ValueError("local-global check needs n >= 2")
        self.rho = rho
        self.delta = star_fan(fan, [rho])
        if not self.delta.is_simplicial():
            raise ValueError("local-global check is implemented for simplicial stars")
        st, cl, bd, _ = star_link(fan, frozenset([rho]))
        if any(fan.dim(c) == fan.n - 1 for c in bd) and not in_relative_interior(
                self.delta, frozenset([rho]), fan.rays[rho]):
            raise ValueError("ray is not interior to its star")
        self.xn, self.U = _quotient_map(fan.rays[rho])
        n = fan.n
        rays_bd = sorted({i for c in bd for i in c})
        proj = [tuple(dot(u, fan.rays[i]) for u in self.U) for i in rays_bd]
        self.ray_index = {i: k for k, i in enumerate(rays_bd)}
        cones = [[self.ray_index[i] for i in c] for c in bd if fan.dim(c) == n - 1]
        self.phi = validate_fan(proj, cones)
        if not self.phi.complete:
            raise ValueError("projected boundary is not a complete fan")
        self.sheaf = sheaf or MinimalSheaf(self.delta)
        self.psi = ConewiseFunction.from_ray_values(
            self.delta, {rho: dot(self.xn, fan.rays[rho])})
        # maximal cone tau + rho of delta  <->  maximal cone p(tau) of phi
        self.match = {}
        for m in self.delta.maximal:
            tau = frozenset(self.ray_index[i] for i in m if i != rho)
            self.match[tau] = m

    def lift(self, pieces):
        """Pull conewise polynomials on ``phi`` back to ``delta`` through ``U``."""
        n = self.delta.n
        imgs = [Poly.linear(row) for row in self.U]
        out = {}
        for tau, m in self.match.items():
            p = pieces[tau]
            out[m] = p.substitute(imgs) if p.terms else Poly.zero(n)
        return out

    def run(self):
        n = self.delta.n
        phi_sheaf = MinimalSheaf(self.phi)
        ctx_phi = PairingContext(self.phi, phi_sheaf)
        ih_phi = ctx_phi.absolute
        basis = {d: [ctx_phi.push_vector(ih_phi.space, d, v) for v in ih_phi.lifts[d]]
                 for d in ih_phi.lifts}
        ctx_d = PairingContext(self.delta, self.sheaf)
        lhs, rhs = {}, {}
        for d in range(0, 2 * (n - 1) + 1, 2):
            rows = basis.get(d, [])
            cols = basis.get(2 * (n - 1) - d, [])
            lhs[d] = [[n * ctx_phi.scalar(a, b) for b in cols] for a in rows]
            lifted = [self.lift(b) for b in cols]
            psib = [{m: self.psi.pieces[m] * b[m] for m in b} for b in lifted]
            rhs[d] = [[ctx_d.scalar(self.lift(a), pb) for pb in psib] for a in rows]
        diff = max((abs(x - y) for d in lhs for r1, r2 in zip(lhs[d], rhs[d])
                    for x, y in zip(r1, r2)), default=Fraction(0))
        return {"lhs": lhs, "rhs": rhs, "max_discrepancy": diff, "holds": diff == 0,
                "phi_ih": ih_phi.dims, "psi_iso": self.psi_isomorphism()}

    def psi_isomorphism(self):
        """Matrices of multiplication by ``psi`` from IH to relative IH."""
        n = self.delta.n
        ab = IHSpace(self.sheaf, self.delta)
        rl = IHSpace(self.sheaf, self.delta, relative=True)
        pieces = {m: self.psi.on(m) for m in ab.space.maximal}
        out = {}
        ok = True
        for d in range(0, 2 * n - 1, 2):
            cols = [rl.coords(d + 2, ab.space.multiply(d, v, pieces, 2)) for v in ab.lifts[d]]
            nt = len(rl.lifts.get(d + 2, []))
            mat = [[cols[j][i] for j in range(len(cols))] for i in range(nt)]
            out[d] = mat
            if nt != len(cols) or (mat and det(mat) == 0):
                ok = False
        return {"matrices": out, "bijective": ok}


def local_global_check(fan, rho, sheaf=None):
    return LocalGlobal(fan, rho, sheaf).run()


# products

def product_pieces(prod, left_pieces, right_pieces):
    """Tensor two pushed sections into pieces on the product fan."""
    left, right = prod.factors
    off = len(left.rays)
    nl, nr = left.n, right.n
    out = {}
    for a, pa in left_pieces.items():
        ea = pa.substitute([Poly.var(nl + nr, i) for i in range(nl)])
        for b, pb in right_pieces.items():
            eb = pb.substitute([Poly.var(nl + nr, nl + i) for i in range(nr)])
            out[a | frozenset(i + off for i in b)] = ea * eb
    return out


def kunneth_pairing(left, right, omega_scale=1):
    """Pairing of tensor bases on ``left x right`` against factor pairings.

    Returns the product matrix, the Kronecker product of the factor matrices
    and the binomial factor separating them under the standard volume form.
    """
    from .fan.fan import product_fan
    prod = product_fan(left, right)
    cl, cr = PairingContext(left), PairingContext(right)
    cp = PairingContext(prod, omega_scale=omega_scale)
    Al, Bl = cl.pushed_bases()
    Ar, Br = cr.pushed_bases()
    ml, mr = cl.matrix().full(), cr.matrix().full()
    rows_l = [a for d in sorted(Al) for a in Al[d]]
    rows_r = [a for d in sorted(Ar) for a in Ar[d]]
    cols_l = [b for d in sorted(Bl) for b in Bl[d]]
    cols_r = [b for d in sorted(Br) for b in Br[d]]
    rows = [product_pieces(prod, a, b) for a in rows_l for b in rows_r]
    cols = [product_pieces(prod, a, b) for a in cols_l for b in cols_r]
    mp = [[_top_scalar(cp, a, b) for b in cols] for a in rows]
    kron = [[x * y for x in rl for y in rr] for rl in ml for rr in mr]
    return {"product": mp, "kron": kron, "binomial": comb(prod.n, left.n), "fan": prod}


def _top_scalar(ctx, a, b):
    if all(not (a[m] * b[m]) for m in ctx.theta.maximal):
        return Fraction(0)
    da = next(p.degree() for p in a.values() if p)
    db = next(p.degree() for p in b.values() if p)
    if da + db != 2 * ctx.n:
        return Fraction(0)
    return ctx.scalar(a, b)
