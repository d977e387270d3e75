"""Certified zeta and Omega numbers of machine domains.

Rationals come back as fractions.Fraction and bit strings as str ("" is the
empty string). Exponents and thresholds accept int, Fraction or strings such
as "3/2" and "0.125".
"""

from ._core import (
    BudgetExhausted,
    Enclosure,
    Error,
    InvalidArgument,
    KraftViolation,
    Machine,
    ParseError,
    bin,
    bin_inv,
    catalan,
    classify,
    complexity,
    density,
    dyadic_diagonal,
    dyadic_weight_sum,
    e_bounds,
    egyptian_floor,
    fresh_index,
    harmonic_segment,
    iota,
    is_prefix_free,
    j_pairing,
    kappa,
    kappa_natural,
    kraft_chaitin,
    lambert_w,
    omega,
    omega_s,
    pnt_check,
    riemann_zeta,
    run_cli,
    sanity_chain,
    w_ratio,
    x_set,
    zeta,
    zeta_s,
)

__all__ = [name for name in dir() if not name.startswith("_")]
