"""Star subdivisions and the desingularization process."""

from dataclasses import dataclass
from fractions import Fraction

from ..exactalg.linalg import kernel, sparse
from ..exactalg.scalar import sign
from .fan import FanError, cone_key, singular_subfan, star_link, validate_fan
from .functions import ConewiseFunction, is_strictly_convex
from .geometry import dot, normalize_ray, vsum


def in_relative_interior(fan, sigma, v):
    basis, piv = fan.span(sigma)
    loc = tuple(v[p] for p in piv)
    recon = vsum(basis, loc) if basis else (Fraction(0),) * fan.n
    if tuple(recon) != tuple(v):
        return False
    k = len(basis)
    lrays = {i: fan.local(sigma, fan.rays[i]) for i in sigma}
    for f in fan.facets[sigma]:
        ker = kernel([sparse(lrays[i]) for i in sorted(f)], k)
        h = [ker[0].get(j, 0) for j in range(k)]
        other = next(i for i in sorted(sigma) if i not in f)
        if sign(dot(h, lrays[other])) < 0:
            h = [-x for x in h]
        if sign(dot(h, loc)) <= 0:
            return False
    return True


def join(base, rays):
    """Smallest cone of ``base`` containing all ray indices in ``rays``."""
    best = None
    for c in base.cones:
        if rays <= c and (best is None or len(c) < len(best)):
            best = c
    if best is None:
        raise FanError("no cone of the base fan contains the given rays")
    return best


def carrier_of(fan, cone):
    """Smallest cone of ``fan.base`` containing ``cone`` (the subdivision map)."""
    if fan.base is None:
        return cone
    rays = frozenset().union(*[fan.carrier[i] for i in cone]) if cone else frozenset()
    return join(fan.base, rays)


def star_subdivision(fan, sigma, rho):
    """Replace [St(sigma)] by the cones tau + rho, tau in the boundary of the star."""
    sigma = frozenset(sigma)
    if fan.dim(sigma) <= 1:
        raise FanError("star subdivision needs a cone of dimension at least 2")
    rho = normalize_ray(rho)
    if not in_relative_interior(fan, sigma, rho):
        raise FanError("ray is not in the relative interior of the cone")
    st, _, bd, _ = star_link(fan, sigma)
    new = len(fan.rays)
    rays = list(fan.rays) + [rho]
    cones = [c for c in fan.cones if c not in st]
    cones += [c | {new} for c in bd]
    out = validate_fan(rays, cones, fan.field, require_all_rays=False)
    base = fan.base or fan
    if fan.carrier is None:
        carrier = {i: frozenset([i]) for i in fan.used_rays()}
    else:
        carrier = dict(fan.carrier)
    carrier[new] = join(base, frozenset().union(*[carrier[i] for i in sigma]))
    out.base = base
    out.carrier = carrier
    return out


def subdivision_ray(fan, sigma, rule="barycentric"):
    idx = sorted(sigma)
    if rule == "barycentric":
        return vsum([fan.rays[i] for i in idx])
    if rule == "weighted":
        return vsum([fan.rays[i] for i in idx], list(range(1, len(idx) + 1)))
    raise ValueError(f"unknown ray rule {rule!r}")


@dataclass
class SubdivisionStep:
    fan: object
    sigma: frozenset
    ray: int
    function: object = None
    epsilon: Fraction = None


def pick_deficient(fan):
    sing = singular_subfan(fan)
    if not sing:
        return None
    covered = set()
    for c in sing:
        covered.update(fan.facets[c])
    tops = [c for c in sing if c not in covered]
    return sorted(tops, key=lambda c: (-fan.dim(c), cone_key(c)))[0]


def desingularize(fan, l=None, ray_rule="barycentric", max_halvings=64):
    """Star-subdivide maximal deficient cones until the fan is simplicial.

    With a strictly convex ``l`` each step also carries an updated strictly
    convex function ``l + eps * lt`` where ``lt`` is -1 on the new ray and
    vanishes on every other ray.
    """
    if l is not None:
        ok, wit = is_strictly_convex(l)
        if not ok:
            raise ValueError(f"function is not strictly convex (witness {wit})")
    steps = []
    cur, cur_l = fan, l
    while True:
        sigma = pick_deficient(cur)
        if sigma is None:
            return steps
        before = len(singular_subfan(cur))
        nxt = star_subdivision(cur, sigma, subdivision_ray(cur, sigma, ray_rule))
        if len(singular_subfan(nxt)) >= before:
            raise FanError("subdivision did not shrink the singular subfan")
        rho = len(cur.rays)
        eps = None
        new_l = None
        if cur_l is not None:
            base = cur_l.transfer(nxt)
            bump = ConewiseFunction.from_ray_values(nxt, {rho: Fraction(-1)})
            eps = Fraction(1)
            for _ in range(max_halvings):
                cand = base + bump * eps
                if is_strictly_convex(cand)[0]:
                    new_l = cand
                    break
                eps /= 2
            if new_l is None:
                raise FanError("no admissible epsilon found")
        steps.append(SubdivisionStep(nxt, sigma, rho, new_l, eps))
        cur, cur_l = nxt, new_l
