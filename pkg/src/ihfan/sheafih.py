"""Minimal sheaves on fans, their sections, and intersection cohomology.

A stalk ``L_sigma`` is a free module over the polynomial ring of the span of
``sigma`` (in the local coordinates chosen by :meth:`Fan.span`).  It is
stored as a tuple of generator degrees plus, for each facet ``tau``, a
restriction matrix ``R[g][h]`` of polynomials on ``tau`` sending generator
``g`` of ``sigma`` to ``sum_h R[g][h] e_h``.

Sections over a face-closed subfan are stored on its maximal cones only, as
coefficient vectors on the monomial bases of the generator coefficients.
All degrees are even (a linear form has degree 2).
"""

from fractions import Fraction

from .exactalg.linalg import Echelon, kernel
from .exactalg.poly import Poly, monomials, monomial_index
from .fan.fan import ORIGIN, closure, cone_key, product_fan


class SheafError(RuntimeError):
    pass


def _even(d):
    if d % 2:
        raise ValueError(f"odd degree {d}")


class MinimalSheaf:
    def __init__(self, fan, simplicial_shortcut=True, buffer=4):
        self.fan = fan
        self.gens = {ORIGIN: (0,)}
        self.res = {}
        self._comp = {}
        self._layout = {}
        self._rcols = {}
        self.buffer = buffer
        for c in fan.cones:
            if c:
                self._build_stalk(c, simplicial_shortcut)

    # stalk construction
    def _build_stalk(self, sigma, shortcut):
        fan = self.fan
        k = fan.dim(sigma)
        facets = fan.facets[sigma]
        if shortcut and len(sigma) == k:
            self.gens[sigma] = (0,)
            for t in facets:
                # restriction of the unit generator is the unit generator
                self.res[(sigma, t)] = [[Poly.const(fan.dim(t), 1)]]
            return
        top = k - 1 if (k - 1) % 2 == 0 else k - 2
        cutoff = top + self.buffer
        space = SectionSpace(self, closure(fan, facets), ambient=sigma)
        degs, lifts = [], []
        for d in range(0, cutoff + 1, 2):
            picked = space.residue_basis(d)
            if picked and d > top:
                raise SheafError(f"stalk generator in degree {d} >= dim {k} at cone {sorted(sigma)}")
            for v in picked:
                degs.append(d)
                lifts.append(space.unpack(d, v))
        self.gens[sigma] = tuple(degs)
        for t in facets:
            self.res[(sigma, t)] = [lift[t] for lift in lifts]

    def rank(self, c):
        return len(self.gens[c])

    # restriction along faces
    def composite(self, sigma, rho):
        """Matrix of the restriction ``L_sigma -> L_rho`` for a face ``rho``."""
        if sigma == rho:
            r = self.fan.dim(sigma)
            return [[Poly.const(r, 1) if g == h else Poly.zero(r)
                     for h in range(self.rank(sigma))] for g in range(self.rank(sigma))]
        key = (sigma, rho)
        out = self._comp.get(key)
        if out is not None:
            return out
        tau = next(t for t in self.fan.facets[sigma] if rho <= t)
        first = self.res[(sigma, tau)]
        if tau == rho:
            out = first
        else:
            second = self.composite(tau, rho)
            r = self.fan.dim(rho)
            out = []
            for row in first:
                new = [Poly.zero(r) for _ in range(self.rank(rho))]
                for kk, p in enumerate(row):
                    if not p:
                        continue
                    pr = self.fan.restrict_poly(p, tau, rho)
                    for h, q in enumerate(second[kk]):
                        if q:
                            new[h] = new[h] + pr * q
                out.append(new)
        self._comp[key] = out
        return out

    def restrict(self, sigma, rho, coords):
        """Restrict a stalk element given by generator coefficients."""
        mat = self.composite(sigma, rho)
        r = self.fan.dim(rho)
        out = [Poly.zero(r) for _ in range(self.rank(rho))]
        for g, c in enumerate(coords):
            if not c:
                continue
            cr = self.fan.restrict_poly(c, sigma, rho)
            for h, q in enumerate(mat[g]):
                if q:
                    out[h] = out[h] + cr * q
        return out

    # coordinate layout of a stalk in a fixed degree
    def layout(self, c, d):
        key = (c, d)
        out = self._layout.get(key)
        if out is None:
            r = self.fan.dim(c)
            out = []
            off = 0
            for h, dh in enumerate(self.gens[c]):
                if dh <= d:
                    size = len(monomials(r, (d - dh) // 2))
                    out.append((h, dh, off, size))
                    off += size
            out = (out, off)
            self._layout[key] = out
        return out

    def stalk_vector(self, c, d, coords):
        lay, _ = self.layout(c, d)
        r = self.fan.dim(c)
        vec = {}
        for h, dh, off, size in lay:
            p = coords[h]
            if not p:
                continue
            idx = monomial_index(r, (d - dh) // 2)
            for e, v in p.terms.items():
                vec[off + idx[e]] = v
        return vec

    def stalk_coords(self, c, d, vec, base=0):
        lay, _ = self.layout(c, d)
        r = self.fan.dim(c)
        coords = [Poly.zero(r) for _ in range(self.rank(c))]
        for h, dh, off, size in lay:
            mons = monomials(r, (d - dh) // 2)
            terms = {}
            for i in range(size):
                v = vec.get(base + off + i)
                if v is not None:
                    terms[mons[i]] = v
            coords[h] = Poly(r, terms)
        return coords

    def restriction_columns(self, sigma, rho, d):
        """Images of the degree-``d`` monomial basis of ``L_sigma`` in ``L_rho``."""
        key = (sigma, rho, d)
        out = self._rcols.get(key)
        if out is not None:
            return out
        lay, _ = self.layout(sigma, d)
        r = self.fan.dim(sigma)
        out = []
        for g, dg, off, size in lay:
            for e in monomials(r, (d - dg) // 2):
                coords = [Poly.zero(r) for _ in range(self.rank(sigma))]
                coords[g] = Poly(r, {e: Fraction(1)})
                out.append(self.stalk_vector(rho, d, self.restrict(sigma, rho, coords)))
        self._rcols[key] = out
        return out

    # invariants
    def verify(self):
        """Re-check the defining residue isomorphism at every cone."""
        for c in self.fan.cones:
            if not c:
                continue
            k = self.fan.dim(c)
            space = SectionSpace(self, closure(self.fan, self.fan.facets[c]), ambient=c)
            expect = {}
            for dg in self.gens[c]:
                expect[dg] = expect.get(dg, 0) + 1
            top = max(self.gens[c]) + self.buffer
            for d in range(0, top + 1, 2):
                got = len(space.residue_basis(d))
                if got != expect.get(d, 0):
                    raise SheafError(f"residue mismatch at {sorted(c)} degree {d}")
                # the stalk's generators restrict to the chosen residue lifts
            if any(dg >= k for dg in self.gens[c]) and c:
                raise SheafError(f"generator degree too high at {sorted(c)}")
        return True

    def costalk_degrees(self, sigma, up_to=None):
        """Degrees of minimal generators of Ker(L_sigma -> Gamma(boundary))."""
        fan = self.fan
        k = fan.dim(sigma)
        up_to = up_to if up_to is not None else k + 4
        space = SectionSpace(self, closure(fan, fan.facets[sigma]), ambient=sigma)
        out = []
        prev = []
        for d in range(0, up_to + 1, 2):
            _, size = self.layout(sigma, d)
            rows_by = {}
            for col, img in enumerate(self._boundary_map(space, sigma, d)):
                for i, v in img.items():
                    rows_by.setdefault(i, {})[col] = v
            ker = kernel(list(rows_by.values()), size)
            e = Echelon()
            for v in prev:
                for p in _mul_vars_stalk(self, sigma, d - 2, v):
                    e.insert(p)
            for v in ker:
                if e.insert(v) is not None:
                    out.append(d)
            prev = ker
        return out

    def _boundary_map(self, space, sigma, d):
        cols = [dict() for _ in range(self.layout(sigma, d)[1])]
        for t in space.maximal:
            off = space.offsets(d)[t]
            for j, img in enumerate(self.restriction_columns(sigma, t, d)):
                for i, v in img.items():
                    cols[j][off + i] = v
        return cols


def _mul_vars_stalk(sheaf, c, d, vec):
    r = sheaf.fan.dim(c)
    coords = sheaf.stalk_coords(c, d, vec)
    out = []
    for i in range(r):
        x = Poly.var(r, i)
        out.append(sheaf.stalk_vector(c, d + 2, [p * x for p in coords]))
    return out


class SectionSpace:
    """Graded sections of a minimal sheaf over a face-closed set of cones.

    ``relative`` adds the condition that sections vanish on ``walls`` (the
    maximal cones of the boundary).  ``ambient`` names a cone whose local
    polynomial ring acts on the sections; ``None`` means the ambient space.
    """

    def __init__(self, sheaf, cones, relative=False, walls=(), ambient=None):
        self.sheaf = sheaf
        self.fan = sheaf.fan
        self.cones = set(cones)
        covered = set()
        for c in self.cones:
            covered.update(self.fan.facets[c])
        self.maximal = sorted((c for c in self.cones if c not in covered), key=cone_key)
        self.relative = relative
        self.walls = sorted(walls, key=cone_key)
        self.ambient = ambient
        self._offsets = {}
        self._basis = {}
        self._constraints = {}

    def offsets(self, d):
        out = self._offsets.get(d)
        if out is None:
            out = {}
            off = 0
            for m in self.maximal:
                out[m] = off
                off += self.sheaf.layout(m, d)[1]
            out[None] = off
            self._offsets[d] = out
        return out

    def size(self, d):
        return self.offsets(d)[None]

    def constraint_rows(self, d):
        rows = self._constraints.get(d)
        if rows is not None:
            return rows
        sh = self.sheaf
        off = self.offsets(d)
        rows = []
        mx = self.maximal
        for i, a in enumerate(mx):
            for b in mx[i + 1:]:
                t = a & b
                if sh.layout(t, d)[1] == 0:
                    continue
                acc = {}
                for j, img in enumerate(sh.restriction_columns(a, t, d)):
                    for k, v in img.items():
                        acc.setdefault(k, {})[off[a] + j] = v
                for j, img in enumerate(sh.restriction_columns(b, t, d)):
                    for k, v in img.items():
                        row = acc.setdefault(k, {})
                        w = row.get(off[b] + j, 0) - v
                        if w == 0:
                            row.pop(off[b] + j, None)
                        else:
                            row[off[b] + j] = w
                rows.extend(r for r in acc.values() if r)
        if self.relative:
            for w in self.walls:
                m = next(m for m in mx if w <= m)
                acc = {}
                for j, img in enumerate(sh.restriction_columns(m, w, d)):
                    for k, v in img.items():
                        acc.setdefault(k, {})[off[m] + j] = v
                rows.extend(r for r in acc.values() if r)
        self._constraints[d] = rows
        return rows

    def basis(self, d):
        """Echelon basis of the degree-``d`` sections (sparse vectors)."""
        _even(d)
        out = self._basis.get(d)
        if out is None:
            if d < 0:
                out = []
            else:
                out = kernel(self.constraint_rows(d), self.size(d))
            self._basis[d] = out
        return out

    def dim(self, d):
        return len(self.basis(d))

    def unpack(self, d, vec):
        off = self.offsets(d)
        return {m: self.sheaf.stalk_coords(m, d, vec, off[m]) for m in self.maximal}

    def pack(self, d, coords):
        off = self.offsets(d)
        vec = {}
        for m in self.maximal:
            for i, v in self.sheaf.stalk_vector(m, d, coords[m]).items():
                vec[off[m] + i] = v
        return vec

    def multiply(self, d, vec, pieces, dp):
        """Multiply a degree-``d`` section by polynomials (local, per maximal cone)."""
        coords = self.unpack(d, vec)
        return self.pack(d + dp, {m: [p * pieces[m] for p in coords[m]] for m in self.maximal})

    def variable_pieces(self):
        """Per maximal cone, the images of the acting ring's variables."""
        fan = self.fan
        out = []
        nv = fan.n if self.ambient is None else fan.dim(self.ambient)
        for i in range(nv):
            pieces = {}
            for m in self.maximal:
                src = self.ambient
                x = Poly.var(nv, i)
                pieces[m] = fan.restrict_poly(x, src, m)
            out.append(pieces)
        return out

    def plus_part(self, d):
        """Spanning set of ``A+ * Gamma`` in degree ``d``."""
        if d < 2:
            return []
        varp = self.variable_pieces()
        out = []
        for v in self.basis(d - 2):
            for pieces in varp:
                out.append(self.multiply(d - 2, v, pieces, 2))
        return out

    def residue_basis(self, d):
        """Sections in degree ``d`` that complete ``A+ Gamma`` to a basis."""
        e = Echelon()
        for v in self.plus_part(d):
            e.insert(v)
        return [v for v in self.basis(d) if e.insert(v) is not None]

    def section_from_function(self, f, d=None):
        """A conewise polynomial viewed as a section of a rank-one (simplicial) sheaf."""
        d = f.degree if d is None else d
        coords = {}
        for m in self.maximal:
            if self.sheaf.gens[m] != (0,):
                raise SheafError("conewise functions are sections only where L is rank one")
            coords[m] = [f.on(m)]
        return self.pack(d, coords)


class IHSpace:
    """Residue ``Gamma / A+ Gamma`` with lifted bases, degree by degree."""

    def __init__(self, sheaf, fan=None, relative=False, cutoff=None):
        self.sheaf = sheaf
        self.fan = fan if fan is not None else sheaf.fan
        self.relative = relative
        n = self.fan.n
        walls = []
        if relative:
            walls = [c for c in self.fan.boundary if self.fan.dim(c) == n - 1]
        self.space = SectionSpace(sheaf, self.fan.cones, relative=relative, walls=walls)
        self.n = n
        self.cutoff = cutoff if cutoff is not None else 2 * n + 4
        self.lifts = {}
        self._ech = {}
        for d in range(0, self.cutoff + 1, 2):
            e = Echelon()
            for v in self.space.plus_part(d):
                e.insert(v)
            picked = []
            for v in self.space.basis(d):
                if e.insert(v, {len(picked): Fraction(1)}) is not None:
                    picked.append(v)
            if picked and d > 2 * n:
                raise SheafError(f"residue in degree {d} beyond 2n; degree cutoff unstable")
            self.lifts[d] = picked
            self._ech[d] = e

    @property
    def dims(self):
        return tuple(len(self.lifts.get(d, ())) for d in range(0, 2 * self.n + 1, 2))

    def coords(self, d, vec):
        """Coordinates of a degree-``d`` section in the lifted residue basis."""
        if d > self.cutoff or d < 0:
            return []
        c = self._ech[d].coordinates(vec)
        return [c.get(i, Fraction(0)) for i in range(len(self.lifts[d]))]

    def multiply_matrix(self, f, d):
        """Matrix (rows: target basis) of multiplication by a conewise ``f``."""
        pieces = {m: f.on(m) for m in self.space.maximal}
        src = self.lifts.get(d, [])
        dt = d + f.degree
        cols = [self.coords(dt, self.space.multiply(d, v, pieces, f.degree)) for v in src]
        nt = len(self.lifts.get(dt, [])) if dt <= 2 * self.n else 0
        return [[cols[j][i] for j in range(len(src))] for i in range(nt)]

    def hilbert_check(self, up_to=None):
        """Compare dim Gamma^d with the free-module prediction from ih."""
        from math import comb
        n = self.n
        up_to = up_to if up_to is not None else self.cutoff
        for d in range(0, up_to + 1, 2):
            predicted = 0
            for j, h in enumerate(self.dims):
                k = (d - 2 * j) // 2
                if k >= 0:
                    predicted += h * comb(k + n - 1, n - 1)
            if self.space.dim(d) != predicted:
                return False
        return True


def build_minimal_sheaf(fan, **kw):
    return MinimalSheaf(fan, **kw)


def sections_over(sheaf, cones, up_to_degree):
    if up_to_degree < 0:
        raise ValueError("degree cutoff must be nonnegative")
    sp = SectionSpace(sheaf, closure(sheaf.fan, cones))
    return {d: sp.basis(d) for d in range(0, up_to_degree + 1, 2)}, sp


def sections_with_support(sheaf, fan, up_to_degree):
    walls = [c for c in fan.boundary if fan.dim(c) == fan.n - 1]
    sp = SectionSpace(sheaf, fan.cones, relative=True, walls=walls)
    return {d: sp.basis(d) for d in range(0, up_to_degree + 1, 2)}, sp


def module_multiply(f, space, d, vec):
    if f.fan is not space.fan and f.fan.rays is not space.fan.rays:
        raise ValueError("function and section live on different fans")
    pieces = {m: f.on(m) for m in space.maximal}
    return space.multiply(d, vec, pieces, f.degree)


class Certificate(dict):
    @property
    def accepted(self):
        return self["accept"]


def quasiconvex_certificate(sheaf, fan, _depth=0):
    """Accept/reject with a reason; see the module docs for the criteria."""
    if not fan.is_pure():
        return Certificate(accept=False, reason="not purely n-dimensional")
    if fan.complete:
        return Certificate(accept=True, reason="complete")
    if fan.star_of is not None and fan.parent is not None and fan.parent.complete:
        return Certificate(accept=True, reason="closed star in a complete fan")
    if fan.factors is not None and _depth < 4:
        a, b = fan.factors
        ca = quasiconvex_certificate(build_minimal_sheaf(a), a, _depth + 1)
        cb = quasiconvex_certificate(build_minimal_sheaf(b), b, _depth + 1)
        if ca.accepted and cb.accepted:
            return Certificate(accept=True, reason="product of certified fans")
    ih_abs = IHSpace(sheaf, fan)
    if not ih_abs.hilbert_check():
        return Certificate(accept=False, reason="section module fails the freeness count")
    from .pairing import ih_pairing_matrix
    try:
        pm = ih_pairing_matrix(fan, sheaf=sheaf, check_certificate=False)
    except Exception as exc:  # pragma: no cover - reported as rejection
        return Certificate(accept=False, reason=f"pairing unavailable: {exc}")
    if not pm.nondegenerate():
        return Certificate(accept=False, reason="pairing degenerate")
    return Certificate(accept=True, reason="freeness count and nondegenerate pairing")


def ih(sheaf, fan=None, relative=False, cutoff=None, certify=True):
    fan = fan if fan is not None else sheaf.fan
    if certify:
        cert = quasiconvex_certificate(sheaf, fan)
        if not cert.accepted:
            raise SheafError(f"quasi-convexity not certified: {cert['reason']}")
    return IHSpace(sheaf, fan, relative=relative, cutoff=cutoff)


def convolve(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def kunneth_check(left, right):
    if left.n == 0 or right.n == 0:
        raise ValueError("factors must be positive dimensional")
    prod = product_fan(left, right)
    out = {"product": prod}
    for rel in (False, True):
        ia = ih(build_minimal_sheaf(left), left, relative=rel).dims
        ib = ih(build_minimal_sheaf(right), right, relative=rel).dims
        ip = ih(build_minimal_sheaf(prod), prod, relative=rel).dims
        key = "relative" if rel else "absolute"
        out[key] = {"left": ia, "right": ib, "product": ip, "convolution": convolve(ia, ib),
                    "match": convolve(ia, ib) == ip}
    return out
