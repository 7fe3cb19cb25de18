"""Paley matrix construction and restricted-isometry verification toolkit.

Exact Legendre-symbol arithmetic, Paley graph cliques, discrepancy and
bilinear character sums, quadratic Gauss sums, RIP / flat-RIP constants,
and the scalar parameter bookkeeping that links discrepancy bounds to
restricted-isometry exponents.
"""

__version__ = "0.1.0"

DEFAULT_SEED = 0xC0FFEE

from paleyrip.finite_field import LegendreTable, build_table, is_prime_1mod4, legendre

__all__ = [
    "DEFAULT_SEED",
    "LegendreTable",
    "build_table",
    "is_prime_1mod4",
    "legendre",
    "__version__",
]
