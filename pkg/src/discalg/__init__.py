"""Discriminant algebras of finite free commutative algebras, computed exactly."""

from .ring import Integers, IntegersMod, PolynomialRing, Rationals, parse_ring
from .algebra import FreeAlgebra, discriminant, monogenic, product, split, square_zero
from .delta import QuadraticAlgebra, discriminant_algebra, quad_canonical_Z, star_product

__version__ = "0.1.0"
