"""Restricted-isometry and flat-RIP constants of the Paley matrix.

delta_K is the largest eigenvalue deviation from 1 over K-column Gram
submatrices; theta is the largest normalized column-group inner product
over disjoint index sets.  Exact modes enumerate supports; sampled modes
give certified lower bounds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from paleyrip import DEFAULT_SEED
from paleyrip.finite_field import validate_prime_1mod4
from paleyrip.paley_matrix import gram_analytic
from paleyrip.parallel import map_stream, resolve_threads
from paleyrip.prng import SplitMix64

ENUM_CAP = 10_000_000
EIG_DIM_CAP = 1000
_CHUNK = 1 << 15


@dataclass
class RipReport:
    p: int
    k: int
    mode: str
    delta: float
    witness_support: tuple[int, ...]
    supports_checked: int
    samples: int | None = None
    seed: int | None = None
    runtime_ms: float | None = None

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "K": self.k,
            "mode": self.mode,
            "delta": self.delta,
            "witness": list(self.witness_support),
            "checked": self.supports_checked,
            "samples": self.samples,
            "seed": self.seed,
            "runtime_ms": self.runtime_ms,
        }


@dataclass
class FlatRipReport:
    p: int
    k: int
    mode: str
    theta: float
    witness_i: tuple[int, ...]
    witness_j: tuple[int, ...]
    pairs_checked: int
    samples: int | None = None
    seed: int | None = None
    runtime_ms: float | None = None

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "K": self.k,
            "mode": self.mode,
            "theta": self.theta,
            "witness": {"i": list(self.witness_i), "j": list(self.witness_j)},
            "checked": self.pairs_checked,
            "samples": self.samples,
            "seed": self.seed,
            "runtime_ms": self.runtime_ms,
        }


def hermitian_eigs(g: np.ndarray, tol: float = 1e-10, with_vectors: bool = False):
    """Eigenvalues of a Hermitian matrix, ascending.

    Rejects inputs whose Hermitian deviation exceeds tol (scaled by the
    largest entry).  Backed by a symmetric-QR reduction; the contract is
    accuracy (residual below 1e-9 * ||G||), not the method.
    """
    g = np.asarray(g)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {g.shape}")
    if g.shape[0] > EIG_DIM_CAP:
        raise ValueError(f"dimension capped at {EIG_DIM_CAP}")
    scale = max(1.0, float(np.abs(g).max()) if g.size else 1.0)
    herm_dev = float(np.abs(g - g.conj().T).max()) if g.size else 0.0
    if herm_dev > tol * scale:
        raise ValueError(f"matrix is not Hermitian within tol: deviation {herm_dev:.3e}")
    if with_vectors:
        return np.linalg.eigh(g)
    return np.linalg.eigvalsh(g)


def _combo_chunks(n: int, k: int, chunk: int = _CHUNK):
    it = itertools.combinations(range(n), k)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.asarray(block, dtype=np.int64)


def _eig_dev(g: np.ndarray, supports: np.ndarray) -> np.ndarray:
    """Eigenvalue deviation from 1 for a stack of supports, shape (batch,)."""
    sub = g[supports[:, :, None], supports[:, None, :]]
    w = np.linalg.eigvalsh(sub)
    return np.maximum(w[:, -1] - 1.0, 1.0 - w[:, 0])


def rip_constant_exact(p: int, k: int, cap: int = ENUM_CAP, threads: int | None = None) -> RipReport:
    """delta_K by enumeration of all supports of size exactly K.

    Size-K supports suffice: by Cauchy interlacing, appending a column to
    a support can only widen the Gram submatrix spectrum, so the maximal
    deviation over |T| <= K is attained at |T| = K.  Ties are broken by
    the lexicographically smallest support.
    """
    p = validate_prime_1mod4(p)
    n = p + 1
    if not 1 <= k <= n:
        raise ValueError(f"K must lie in [1, {n}], got {k}")
    total = math.comb(n, k)
    if total > cap:
        raise ValueError(
            f"comb({n},{k}) = {total} exceeds the enumeration cap {cap}; use rip_constant_sampled"
        )
    threads = resolve_threads(threads)
    g = gram_analytic(p)

    def evaluate(supports: np.ndarray):
        dev = _eig_dev(g, supports)
        idx = int(np.argmax(dev))  # first occurrence = lex smallest in chunk
        return float(dev[idx]), tuple(int(x) for x in supports[idx])

    best_delta, best_support = -1.0, ()
    for delta, support in map_stream(evaluate, _combo_chunks(n, k), threads):
        if delta > best_delta:  # ties keep the earlier (lex smaller) chunk hit
            best_delta, best_support = delta, support

    return RipReport(
        p=p,
        k=k,
        mode="exact",
        delta=best_delta,
        witness_support=best_support,
        supports_checked=total,
    )


def rip_constant_sampled(
    p: int,
    k: int,
    samples: int,
    seed: int = DEFAULT_SEED,
    threads: int | None = None,
) -> RipReport:
    """Certified lower bound on delta_K: the max over sampled supports."""
    p = validate_prime_1mod4(p)
    n = p + 1
    if not 1 <= k <= n:
        raise ValueError(f"K must lie in [1, {n}], got {k}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    threads = resolve_threads(threads)
    g = gram_analytic(p)
    rng = SplitMix64(seed)
    drawn = np.asarray([rng.sample_subset(n, k) for _ in range(samples)], dtype=np.int64)

    def evaluate(supports: np.ndarray):
        dev = _eig_dev(g, supports)
        m = float(dev.max())
        ties = np.flatnonzero(dev == dev.max())
        wit = min(tuple(int(x) for x in supports[t]) for t in ties)
        return m, wit

    best_delta, best_support = -1.0, ()
    for delta, support in map_stream(
        evaluate, (drawn[s:s + _CHUNK] for s in range(0, samples, _CHUNK)), threads
    ):
        if delta > best_delta or (delta == best_delta and support < best_support):
            best_delta, best_support = delta, support

    return RipReport(
        p=p,
        k=k,
        mode="sampled",
        delta=best_delta,
        witness_support=best_support,
        supports_checked=samples,
        samples=samples,
        seed=seed,
    )


def column_group_inner(g: np.ndarray, i_set, j_set) -> float:
    """<sum of columns in i_set, sum of columns in j_set> from a real Gram."""
    return float(g[np.ix_(list(i_set), list(j_set))].sum())


def flat_rip_ratio(g: np.ndarray, i_set, j_set) -> float:
    """|inner product of column-group sums| / sqrt(|I| |J|)."""
    if not i_set or not j_set:
        raise ValueError("flat-RIP ratio needs nonempty index sets")
    return abs(column_group_inner(g, i_set, j_set)) / math.sqrt(len(i_set) * len(j_set))


def _flat_classes(n: int, k: int):
    """Ordered-size classes (a, b) with 1 <= b <= a <= k and a+b <= n."""
    return [(a, b) for a in range(1, k + 1) for b in range(1, a + 1) if a + b <= n]


def flat_rip_exact(p: int, k: int, cap: int = ENUM_CAP, threads: int | None = None) -> FlatRipReport:
    """theta by enumeration of every disjoint (I, J) with |J| <= |I| <= K.

    Both orders of equal-size pairs are enumerated (the ratio is symmetric
    but the witness is reported as encountered).  Ties are broken by the
    lexicographically smallest (I, J).
    """
    p = validate_prime_1mod4(p)
    n = p + 1
    if not 1 <= k <= n - 1:
        raise ValueError(f"K must lie in [1, {n - 1}], got {k}")
    classes = _flat_classes(n, k)
    total = sum(math.comb(n, a) * math.comb(n - a, b) for a, b in classes)
    if total > cap:
        raise ValueError(
            f"{total} disjoint pairs exceed the enumeration cap {cap}; use flat_rip_sampled"
        )
    threads = resolve_threads(threads)
    g = gram_analytic(p)

    best = (-1.0, (), ())  # (theta, I, J)

    for a in range(1, k + 1):
        ic = np.asarray(list(itertools.combinations(range(n), a)), dtype=np.int64)
        mask = np.zeros((len(ic), n), dtype=bool)
        mask[np.arange(len(ic))[:, None], ic] = True
        comp = np.nonzero(~mask)[1].reshape(len(ic), n - a)
        # row sums of the Gram over each I, restricted to the complement
        s_comp = np.take_along_axis(g[ic].sum(axis=1), comp, axis=1)

        for b in range(1, a + 1):
            if b > n - a:
                continue
            pos = np.asarray(list(itertools.combinations(range(n - a), b)), dtype=np.int64)
            norm = math.sqrt(a * b)
            # chunk over I rows to bound the (rows x nJ) workspace
            rows_per = max(1, (1 << 21) // max(1, len(pos)))
            blocks = [(s, min(s + rows_per, len(ic))) for s in range(0, len(ic), rows_per)]

            def evaluate(block, pos=pos, comp=comp, s_comp=s_comp, ic=ic, norm=norm):
                lo, hi = block
                sums = np.abs(s_comp[lo:hi, pos].sum(axis=2))
                flat = int(np.argmax(sums))  # row-major: I-major then J, lex order
                r, c = divmod(flat, sums.shape[1])
                theta = float(sums[r, c]) / norm
                wit_i = tuple(int(x) for x in ic[lo + r])
                wit_j = tuple(int(comp[lo + r, t]) for t in pos[c])
                return theta, wit_i, wit_j

            for theta, wi, wj in map_stream(evaluate, blocks, threads):
                if theta > best[0] or (theta == best[0] and (wi, wj) < (best[1], best[2])):
                    best = (theta, wi, wj)

    return FlatRipReport(
        p=p,
        k=k,
        mode="exact",
        theta=best[0],
        witness_i=best[1],
        witness_j=best[2],
        pairs_checked=total,
    )


def flat_rip_sampled(
    p: int,
    k: int,
    samples: int,
    seed: int = DEFAULT_SEED,
    threads: int | None = None,
) -> FlatRipReport:
    """Lower bound on theta from sampled disjoint pairs."""
    p = validate_prime_1mod4(p)
    n = p + 1
    if not 1 <= k <= n - 1:
        raise ValueError(f"K must lie in [1, {n - 1}], got {k}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    threads = resolve_threads(threads)
    g = gram_analytic(p)
    rng = SplitMix64(seed)

    pairs = []
    for _ in range(samples):
        a = 1 + rng.randbelow(min(k, n - 1))
        b = 1 + rng.randbelow(min(a, n - a))
        i_set = rng.sample_subset(n, a)
        remaining = sorted(set(range(n)) - set(i_set))
        j_set = tuple(remaining[t] for t in rng.sample_subset(len(remaining), b))
        pairs.append((i_set, j_set))

    def evaluate(chunk):
        local = (-1.0, (), ())
        for i_set, j_set in chunk:
            theta = flat_rip_ratio(g, i_set, j_set)
            if theta > local[0] or (theta == local[0] and (i_set, j_set) < (local[1], local[2])):
                local = (theta, i_set, j_set)
        return local

    chunks = [pairs[s:s + 1024] for s in range(0, samples, 1024)]
    best = (-1.0, (), ())
    for theta, wi, wj in map_stream(evaluate, chunks, threads):
        if theta > best[0] or (theta == best[0] and (wi, wj) < (best[1], best[2])):
            best = (theta, wi, wj)

    return FlatRipReport(
        p=p,
        k=k,
        mode="sampled",
        theta=best[0],
        witness_i=best[1],
        witness_j=best[2],
        pairs_checked=samples,
        samples=samples,
        seed=seed,
    )


def rip_from_flat(theta: float, k: int) -> float:
    """RIP constant implied by a flat-RIP constant: 150 * theta * ln(K).

    The log base is taken as natural; the choice is isolated here so it
    can be swapped if a different convention is ever needed.
    """
    if k < 2:
        raise ValueError("K must be >= 2 so that log K > 0")
    if theta < 0:
        raise ValueError("theta must be nonnegative")
    return 150.0 * theta * math.log(k)
