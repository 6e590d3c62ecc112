"""Exact free cross-covariance limits and Monte Carlo checks.

Exact quantities are returned as fractions.Fraction. Words are written as
space separated letters, "1 2* 1", and polynomials in the command line
grammar, "C1*C2^* + C2*C1^* - 2*I".
"""

from ._xcov import (
    DomainError,
    NumericalError,
    ParseError,
    ResourceLimitError,
    SizeLimitError,
    catalan,
    cc_cumulant,
    cc_moment,
    centered_limit,
    elliptic_moment,
    kreweras,
    mobius,
    mp_moment,
    nc_partitions,
    poly_cumulant,
    poly_moment,
    run,
    sample_cross_covariance,
    trace_moments,
)

__all__ = [
    "DomainError",
    "NumericalError",
    "ParseError",
    "ResourceLimitError",
    "SizeLimitError",
    "catalan",
    "cc_cumulant",
    "cc_moment",
    "centered_limit",
    "elliptic_moment",
    "kreweras",
    "mobius",
    "mp_moment",
    "nc_partitions",
    "poly_cumulant",
    "poly_moment",
    "run",
    "sample_cross_covariance",
    "trace_moments",
]
