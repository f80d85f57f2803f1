"""Exact symbolic computation of Humbert modular equations.

Computes polynomial conditions on the branch points (a1, a2, a3) of a
genus-2 curve y^2 = x(x-1)(x-a1)(x-a2)(x-a3) under which the Jacobian
admits real multiplication, via plane conics and cubics tangent to
configurations of six lines in the Kummer plane.
"""

from .polynomials import Polynomial, poly, specialize

__all__ = ["Polynomial", "poly", "specialize"]
__version__ = "0.1.0"
