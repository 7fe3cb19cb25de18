"""The Paley measurement matrix and its analytic structure checks.

The matrix has M = (p+1)/2 rows and N = p+1 columns: the DFT rows whose
frequencies are the squares mod p, normalized to unit columns, plus the
first standard basis vector appended as a last column.  Row i carries
frequency i^2 mod p for i = 0..(p-1)/2, which enumerates each square
exactly once, with the constant row (i = 0) first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from io import StringIO

import numpy as np

from paleyrip.finite_field import validate_prime_1mod4
from paleyrip.character_sums import get_table

# Dense storage: M*N complex128.  Validation cap; memory is the real bound.
BUILD_P_CAP = 100_000
# Full N x N analytic Gram; N^2 float64.
GRAM_P_CAP = 8192

FLOAT_FMT = "%.17g"


@dataclass(frozen=True)
class PaleyMatrix:
    p: int
    m: int
    n: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def first_row_scale(self) -> float:
        return math.sqrt(1.0 / self.p)

    @property
    def other_rows_scale(self) -> float:
        return math.sqrt(2.0 / self.p)


@dataclass
class FrameReport:
    """Deviations from the expected frame structure (all ~1e-12 in practice)."""

    p: int
    max_offdiag_dev: float  # |numeric Gram - analytic Gram| off the diagonal
    tight_dev: float        # |Phi Phi* - 2 I| entrywise
    equiangular_dev: float  # max over i != j of ||G[i,j]| - 1/sqrt(p)|

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "max_offdiag_dev": self.max_offdiag_dev,
            "tight_dev": self.tight_dev,
            "equiangular_dev": self.equiangular_dev,
        }


def build(p: int) -> PaleyMatrix:
    """Construct the matrix; O(p^2) time and memory."""
    p = validate_prime_1mod4(p)
    if p > BUILD_P_CAP:
        raise ValueError(f"dense build capped at p <= {BUILD_P_CAP}")
    m = (p + 1) // 2
    n = p + 1
    i = np.arange(m, dtype=np.int64)
    j = np.arange(p, dtype=np.int64)
    freq = i * i % p
    # Reduce i^2*j mod p before multiplying by 2*pi/p: keeps the phase
    # argument small so exp() is accurate even when p*j overflows doubles.
    phase = freq[:, None] * j[None, :] % p
    coeff = np.full(m, math.sqrt(2.0 / p))
    coeff[0] = math.sqrt(1.0 / p)
    entries = np.zeros((m, n), dtype=np.complex128)
    entries[:, :p] = coeff[:, None] * np.exp((-2j * np.pi / p) * phase)
    entries[0, p] = 1.0
    return PaleyMatrix(p=p, m=m, n=n, entries=entries)


def gram_numeric(phi: PaleyMatrix) -> np.ndarray:
    """G[i,j] = sum_r Phi[r,i] * conj(Phi[r,j]), by direct summation."""
    return phi.entries.T @ np.conj(phi.entries)


def gram_analytic(p: int) -> np.ndarray:
    """Closed-form Gram: chi(i-j)/sqrt(p) off-diagonal, 1/sqrt(p) against
    the appended basis column, ones on the diagonal.  Real by symmetry of chi."""
    p = validate_prime_1mod4(p)
    if p > GRAM_P_CAP:
        raise ValueError(f"full analytic Gram capped at p <= {GRAM_P_CAP}")
    table = get_table(p)
    idx = np.arange(p, dtype=np.int64)
    g = np.empty((p + 1, p + 1), dtype=np.float64)
    s = 1.0 / math.sqrt(p)
    g[:p, :p] = table.chi[(idx[:, None] - idx[None, :]) % p] * s
    g[:p, p] = s
    g[p, :p] = s
    np.fill_diagonal(g, 1.0)
    return g


def frame_check(phi: PaleyMatrix) -> FrameReport:
    """Tight-frame identity Phi Phi* = 2 I_M plus equiangularity of the Gram."""
    gn = gram_numeric(phi)
    ga = gram_analytic(phi.p)
    off = ~np.eye(phi.n, dtype=bool)
    frame_op = phi.entries @ np.conj(phi.entries.T)
    tight_dev = float(np.abs(frame_op - 2.0 * np.eye(phi.m)).max())
    equiangular_dev = float(np.abs(np.abs(gn[off]) - 1.0 / math.sqrt(phi.p)).max())
    max_offdiag_dev = float(np.abs(gn - ga)[off].max())
    return FrameReport(
        p=phi.p,
        max_offdiag_dev=max_offdiag_dev,
        tight_dev=tight_dev,
        equiangular_dev=equiangular_dev,
    )


def column_norm_dev(phi: PaleyMatrix) -> float:
    """Largest deviation of a column norm from 1."""
    return float(np.abs(np.linalg.norm(phi.entries, axis=0) - 1.0).max())


def matrix_to_csv(phi: PaleyMatrix) -> str:
    """Row-major dump: header `row,col,re,im`, 17 significant digits."""
    out = StringIO()
    out.write("row,col,re,im\n")
    for r in range(phi.m):
        for c in range(phi.n):
            z = phi.entries[r, c]
            out.write(f"{r},{c},{FLOAT_FMT % z.real},{FLOAT_FMT % z.imag}\n")
    return out.getvalue()


def gram_to_csv(g: np.ndarray) -> str:
    """Same format as matrix_to_csv with header `i,j,re,im`."""
    g = np.asarray(g)
    out = StringIO()
    out.write("i,j,re,im\n")
    for i in range(g.shape[0]):
        for j in range(g.shape[1]):
            z = complex(g[i, j])
            out.write(f"{i},{j},{FLOAT_FMT % z.real},{FLOAT_FMT % z.imag}\n")
    return out.getvalue()
