"""Littlewood-Paley laboratory for type 1,1 operators on the periodic torus.

Thin re-export of the compiled module; all numerics live in the C++ core.
"""

from _paradiff import (
    Partition,
    Symbol,
    apply,
    bessel_symbol,
    ching_symbol,
    cutoff_symbol,
    decompose,
    dft,
    direct_apply,
    gaussian_symbol,
    hom_besov_norm,
    identity_symbol,
    idft,
    lp_norm,
    maximal,
    random_resolved,
    reduced_symbol,
    set_threads,
    space_norm,
    support_rule_check,
    theta_base,
    theta_member,
    twisted_diagonal_check,
)

__all__ = [
    "Partition",
    "Symbol",
    "apply",
    "bessel_symbol",
    "ching_symbol",
    "cutoff_symbol",
    "decompose",
    "dft",
    "direct_apply",
    "gaussian_symbol",
    "hom_besov_norm",
    "identity_symbol",
    "idft",
    "lp_norm",
    "maximal",
    "random_resolved",
    "reduced_symbol",
    "set_threads",
    "space_norm",
    "support_rule_check",
    "theta_base",
    "theta_member",
    "twisted_diagonal_check",
]
