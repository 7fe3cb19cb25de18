"""Exact arithmetic over F_p for primes p = 1 mod 4.

Primality testing, Legendre symbol evaluation and quadratic-residue
tables.  Everything here is integer-exact; no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

# Hard cap on p: the Miller-Rabin witness set below is proven deterministic
# only for n < 3,215,031,751, comfortably above 2^31 - 1.
P_MAX = 2**31 - 1

_MR_WITNESSES = (2, 7, 61)


@lru_cache(maxsize=65536)
def _miller_rabin(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.2e9 using witnesses {2, 7, 61}."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13):
        if n == small:
            return True
        if n % small == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime_1mod4(n: int) -> bool:
    """True iff n is prime and n = 1 mod 4.  Total for n >= 2."""
    if n < 2 or n > P_MAX:
        return False
    return n % 4 == 1 and _miller_rabin(n)


def validate_prime_1mod4(p: int) -> int:
    """Return p unchanged, or raise ValueError if p is not an admissible prime."""
    if not isinstance(p, (int, np.integer)):
        raise ValueError(f"p must be an integer, got {type(p).__name__}")
    p = int(p)
    if p > P_MAX:
        raise ValueError(f"p={p} exceeds the supported cap {P_MAX}")
    if not is_prime_1mod4(p):
        raise ValueError(f"p={p} is not a prime congruent to 1 mod 4")
    return p


def legendre(x: int, p: int) -> int:
    """Legendre symbol chi(x mod p) in {-1, 0, 1}.

    Euler's criterion: x^((p-1)/2) mod p, with p-1 mapped to -1.
    x may be any integer; it is reduced mod p (differences i-j go negative).
    """
    p = validate_prime_1mod4(p)
    x %= p
    if x == 0:
        return 0
    r = pow(x, (p - 1) // 2, p)
    return 1 if r == 1 else -1


@dataclass(frozen=True)
class LegendreTable:
    """Precomputed chi values and the square set Q for one prime.

    chi[x] is the Legendre symbol of x for 0 <= x < p (int8, read-only).
    residues lists Q = {x : chi(x) >= 0} = {0} + nonzero squares, ascending.
    """

    p: int
    chi: np.ndarray = field(repr=False)
    residues: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        self.chi.setflags(write=False)

    def chi_of(self, x: int) -> int:
        return int(self.chi[x % self.p])

    def smallest_nonresidue(self) -> int:
        """Least a >= 1 with chi(a) = -1.  Exists for every p > 2."""
        for a in range(1, self.p):
            if self.chi[a] == -1:
                return a
        raise ArithmeticError("no non-residue found")  # unreachable for prime p


def build_table(p: int) -> LegendreTable:
    """Build the chi table by direct squaring (independent of legendre()).

    O(p) time and memory; intended for bulk lookups.
    """
    p = validate_prime_1mod4(p)
    y = np.arange(1, p, dtype=np.int64)
    squares = np.unique(y * y % p)
    chi = np.full(p, -1, dtype=np.int8)
    chi[0] = 0
    chi[squares] = 1
    residues = (0, *(int(s) for s in squares))
    return LegendreTable(p=p, chi=chi, residues=residues)
