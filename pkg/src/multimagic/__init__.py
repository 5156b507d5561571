"""Multimagic squares, cubes and hypercubes over finite rings.

Construct normal n-multimagic squares of order q^n from certified
generator matrices, verify every magic property with exact integer
arithmetic (streaming squares too large to hold in memory), compose
squares with the star product, and decide order impossibility through
p-adic valuations.
"""

from ._kernel import HAVE_COMPILED
from .construct import (SquareSpec, TooLargeError, VirtualHypercube,
                        construct_square, read_square_csv, star,
                        write_square_csv)
from .genmat import (CertificationReport, GeneratorMatrix,
                     SearchBudgetExceededError, SmallUnitGroupError,
                     explicit_generator, explicit_generator_over,
                     find_generator, vandermonde_A, companion_B,
                     verify_generator)
from .numbering import (CompositeNumbering, NoBijectionOfTypeError,
                        TypeBijection, build_type_bijection, verify_type)
from .orders import binomial_feasible, consistency_sweep, degree_bound, vp
from .ring import (FiniteRing, NotIrreducibleError, RingError,
                   RingMismatchError, matrix_det)
from .verify import (MagicReport, NotIntegralError, check_multimagic,
                     check_normal, check_sub5x5_properties, magic_sum)

__version__ = "0.1.0"

__all__ = [
    "CertificationReport", "CompositeNumbering", "FiniteRing",
    "GeneratorMatrix", "HAVE_COMPILED", "MagicReport",
    "NoBijectionOfTypeError", "NotIntegralError", "NotIrreducibleError",
    "RingError", "RingMismatchError", "SearchBudgetExceededError",
    "SmallUnitGroupError", "SquareSpec", "TooLargeError",
    "TypeBijection", "VirtualHypercube", "binomial_feasible",
    "build_type_bijection", "check_multimagic", "check_normal",
    "check_sub5x5_properties", "companion_B", "consistency_sweep",
    "construct_square", "degree_bound", "explicit_generator",
    "explicit_generator_over", "find_generator", "magic_sum",
    "matrix_det", "read_square_csv", "star", "vandermonde_A",
    "verify_generator", "verify_type", "vp", "write_square_csv",
]
