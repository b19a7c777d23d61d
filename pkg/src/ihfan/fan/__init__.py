"""Cones, fans, polytopes, subdivisions and conewise functions."""

from .fan import (Fan, FanError, ORIGIN, validate_fan, star_link, star_fan,
                  singular_subfan, free_edges, local_product_check, product_fan,
                  closure, cone_key)
from .functions import ConewiseFunction, IncompatibleFunction, is_strictly_convex
from .polytope import Polytope, normal_fan
from .subdivision import (star_subdivision, desingularize, carrier_of,
                          subdivision_ray, in_relative_interior, SubdivisionStep)
