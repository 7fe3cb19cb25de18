"""Shared brute-force oracles, kept independent of the package internals."""

from __future__ import annotations

import pytest


def legendre_oracle(x: int, p: int) -> int:
    """Quadratic-residue indicator by literal squaring."""
    x %= p
    if x == 0:
        return 0
    return 1 if x in {(y * y) % p for y in range(1, p)} else -1


def primes_1mod4_upto(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[:2] = b"\x00\x00"
    for n in range(2, int(limit**0.5) + 1):
        if sieve[n]:
            sieve[n * n:: n] = b"\x00" * len(sieve[n * n:: n])
    return [n for n in range(5, limit + 1) if sieve[n] and n % 4 == 1]


def discrepancy_oracle(elems, p: int) -> int:
    """Double loop over ordered pairs with the squaring-based chi."""
    return sum(legendre_oracle(a - b, p) for a in elems for b in elems)


def bilinear_oracle(i_set, j_set, p: int) -> int:
    return sum(legendre_oracle(x - y, p) for x in i_set for y in j_set)


@pytest.fixture(scope="session")
def small_admissible_primes() -> list[int]:
    return [5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97, 101]
