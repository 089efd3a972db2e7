"""Exact computation and verification toolkit for Stern polynomials.

The sequence B_0 = 0, B_1 = 1, B_{2n} = t*B_n, B_{2n+1} = B_n + B_{n+1}
is generated and evaluated exactly (integer coefficients, rational and
modular points), its rational roots are classified, the zero sets at
-1/2 and -1/3 are analyzed through a pair-state machine over F_p x F_p,
equal-degree runs get closed-form characterizations, and palindromic
index families are verified at indices near 2^80.
"""

from .core import (
    Residue,
    SternPoly,
    degree,
    eval_exact,
    eval_mod,
    is_prime,
    stern_number,
    stern_pair,
    stern_poly,
)
from .report import VerificationReport
from .words import from_bits, p_val, power_concat, q_val, to_bits, u_val, v_val

__version__ = "0.1.0"

__all__ = [
    "Residue",
    "SternPoly",
    "VerificationReport",
    "degree",
    "eval_exact",
    "eval_mod",
    "is_prime",
    "stern_number",
    "stern_pair",
    "stern_poly",
    "to_bits",
    "from_bits",
    "power_concat",
    "p_val",
    "q_val",
    "u_val",
    "v_val",
    "__version__",
]
