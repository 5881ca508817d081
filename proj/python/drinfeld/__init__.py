"""Drinfeld modules, Bruhat-Tits quotients and harmonic cochains over F_q[T].

Polynomials and rational functions are passed as strings such as "T^3+T+1"
or "1/(T^2+1)". Exact rationals come back as fractions.Fraction.
"""

from ._drinfeld import (
    DomainError,
    Level,
    ParseError,
    PrecisionError,
    carlitz_period_power,
    compose,
    cuspidal_order,
    eisenstein_index,
    exp_coeffs,
    irreducibles,
    j_invariant,
    paper_examples,
    phi_a,
    torsion,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "Level",
    "ParseError",
    "PrecisionError",
    "carlitz_period_power",
    "compose",
    "cuspidal_order",
    "eisenstein_index",
    "exp_coeffs",
    "irreducibles",
    "j_invariant",
    "paper_examples",
    "phi_a",
    "torsion",
]
