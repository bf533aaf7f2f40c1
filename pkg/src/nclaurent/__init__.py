"""Exact Laurent expansion of (x_1 ... x_n)_+^lambda at lambda = -1,
annihilator ideals of its coefficients in the Weyl algebra, and a
finite-part quadrature oracle for cross-checking every symbolic result.
"""

from .annih import (CompletenessReport, GeneratorSet, annihilator_space,
                    completeness_report, generators, generators_nc,
                    ideal_membership, verify, verify_nc)
from .dist import Delta, Dist, Pf, apply, equal, is_zero
from .laurent import (LaurentDist, expand_one_var, expand_product,
                      expand_product_direct, shift_check, sign_set)
from .oracle import (CrossCheckReport, GaussianPoly, TestFunction, ZetaSample,
                     cross_check, laurent_fit, pair, pair_atom, zeta)
from .weyl import (WeylOp, divide_by_theta, monomials_up_to, multiply,
                   normal_order, parse)

__all__ = [
    "CompletenessReport", "CrossCheckReport", "Delta", "Dist", "GaussianPoly",
    "GeneratorSet", "LaurentDist", "Pf", "TestFunction", "WeylOp",
    "ZetaSample", "annihilator_space", "apply", "completeness_report",
    "cross_check", "divide_by_theta", "equal", "expand_one_var",
    "expand_product", "expand_product_direct", "generators", "generators_nc",
    "ideal_membership", "is_zero", "laurent_fit", "monomials_up_to",
    "multiply", "normal_order", "pair", "pair_atom", "parse", "shift_check",
    "sign_set", "verify", "verify_nc", "zeta",
]

__version__ = "0.1.0"
