"""Exact Riemann-Roch space computation for plane curves over F_p.

The pipeline: OM/Montes decomposition of primes of k[t] into places,
valuations through resultants against lifted local factors, triangular
integral bases of the divisor's pair of fractional ideals, and the
polynomial-matrix row-reduction that intersects them into a compressed
basis of L(D).
"""

from .field_tower import PrimeField, ExtensionField, factor_univariate, flatten_tower
from .errors import (
    RRSpaceError, DomainError, InvalidInput, SingularMatrix, ContractViolation,
    UnknownPlace, MaxMinIncomplete, FieldTooSmall, NotIrreducible, NotMonic,
    ParseError, PrecisionCapExceeded, UsageError,
)

__version__ = "0.1.0"
