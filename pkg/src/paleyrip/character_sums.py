"""Exact Legendre-symbol sums: discrepancy, bilinear forms, Gauss sums.

All character sums are exact int64 arithmetic; only the quadratic Gauss
sum is floating point.  Sampled operations draw from a SplitMix64 stream
so every witness is reproducible from the seed alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from paleyrip import DEFAULT_SEED
from paleyrip.finite_field import LegendreTable, build_table, validate_prime_1mod4
from paleyrip.parallel import map_chunks, resolve_threads, split_ranges
from paleyrip.prng import SplitMix64

EXHAUSTIVE_P_CAP = 25


@lru_cache(maxsize=64)
def get_table(p: int) -> LegendreTable:
    return build_table(p)


@dataclass(frozen=True)
class Subset:
    """Duplicate-free subset of F_p, stored as a sorted tuple."""

    p: int
    elems: tuple[int, ...]

    def __post_init__(self):
        validate_prime_1mod4(self.p)
        elems = tuple(sorted(int(x) for x in self.elems))
        if len(set(elems)) != len(elems):
            raise ValueError("subset elements must be distinct")
        if elems and not (0 <= elems[0] and elems[-1] < self.p):
            raise ValueError(f"subset elements must lie in [0, {self.p})")
        object.__setattr__(self, "elems", elems)

    def __len__(self) -> int:
        return len(self.elems)


@dataclass(frozen=True)
class SupportPair:
    """Disjoint subsets (i, j) of F_p with |j| <= |i|."""

    p: int
    i: tuple[int, ...]
    j: tuple[int, ...]

    def __post_init__(self):
        si = Subset(self.p, self.i)
        sj = Subset(self.p, self.j)
        if set(si.elems) & set(sj.elems):
            raise ValueError("support pair must be disjoint")
        if len(sj) > len(si):
            raise ValueError("support pair requires |j| <= |i|")
        object.__setattr__(self, "i", si.elems)
        object.__setattr__(self, "j", sj.elems)


@dataclass
class DiscrepancyReport:
    """Sampled maximum of |D(S)| over subsets of one fixed size.

    beta_hat = 2 - ln(max|D|)/ln(n); None (undefined) when max|D| <= 1,
    never a fake 2.0.
    """

    p: int
    subset_size: int
    samples: int
    seed: int
    max_abs_sum: int
    witness: tuple[int, ...]
    beta_hat: float | None

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "alpha": None,
            "beta": None,
            "mode": "estimate",
            "samples": self.samples,
            "seed": self.seed,
            "max_abs_sum": self.max_abs_sum,
            "witness": list(self.witness),
            "beta_hat": self.beta_hat,
            "holds": None,
            "subset_size": self.subset_size,
        }


@dataclass
class DiscrepancyVerifyReport:
    """Outcome of checking |D(S)| < |S|^(2-beta) over all/sampled S with |S| > p^alpha.

    A True `holds` in sampled mode is finite evidence, not proof; the mode
    and the finite_evidence_only flag make that explicit.
    """

    p: int
    alpha: float
    beta: float
    mode: str
    samples: int | None
    seed: int | None
    checked: int
    holds: bool
    violations: list[tuple[int, ...]]
    max_abs_sum: int
    witness: tuple[int, ...]

    finite_evidence_only: bool = True

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "alpha": self.alpha,
            "beta": self.beta,
            "mode": self.mode,
            "samples": self.samples,
            "seed": self.seed,
            "max_abs_sum": self.max_abs_sum,
            "witness": list(self.witness),
            "beta_hat": None,
            "holds": self.holds,
            "checked": self.checked,
            "violations": [list(v) for v in self.violations],
            "finite_evidence_only": self.finite_evidence_only,
        }


@dataclass
class LemmaBoundReport:
    """Worst sampled ratio |sum chi(i-j)| / (p^tau * sqrt(3|I||J|))."""

    p: int
    alpha: float
    beta: float
    tau: float
    samples: int
    seed: int
    size_cap: int
    holds_on_sample: bool
    worst_ratio: float
    witness: SupportPair | None
    finite_evidence_only: bool = True

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "alpha": self.alpha,
            "beta": self.beta,
            "tau": self.tau,
            "samples": self.samples,
            "seed": self.seed,
            "size_cap": self.size_cap,
            "holds_on_sample": self.holds_on_sample,
            "worst_ratio": self.worst_ratio,
            "witness_i": list(self.witness.i) if self.witness else None,
            "witness_j": list(self.witness.j) if self.witness else None,
            "finite_evidence_only": self.finite_evidence_only,
        }


def gauss_sum(c: int, p: int) -> complex:
    """Quadratic Gauss sum sum_y exp(-2*pi*i * y^2 * c / p) by direct summation.

    Arguments are reduced mod p before the multiply by 2*pi/p so the phase
    error stays O(ulp).  The result is real up to roundoff for admissible p;
    an imaginary part above 1e-9 * p indicates a broken build and raises.
    """
    p = validate_prime_1mod4(p)
    c %= p
    if c == 0:
        raise ValueError("gauss_sum requires c != 0 mod p")
    y = np.arange(p, dtype=np.int64)
    phases = (y * y % p) * c % p
    val = complex(np.exp((-2j * np.pi / p) * phases).sum())
    if abs(val.imag) > 1e-9 * p:
        raise ArithmeticError(f"gauss sum imaginary part {val.imag!r} out of tolerance")
    return val


def _squared_diffs_chi_sum(table: LegendreTable, a: np.ndarray, b: np.ndarray) -> int:
    """Exact sum over all (x, y) in a x b of chi(x - y)."""
    diffs = (a[:, None] - b[None, :]) % table.p
    return int(np.sum(table.chi[diffs], dtype=np.int64))


def discrepancy_sum(subset: Subset) -> int:
    """D(S) = sum over ordered pairs (a, b) in S x S of chi(a - b).  Exact."""
    table = get_table(subset.p)
    a = np.asarray(subset.elems, dtype=np.int64)
    return _squared_diffs_chi_sum(table, a, a)


def bilinear_sum(pair: SupportPair) -> int:
    """sum_{x in i, y in j} chi(x - y).  Exact; 0 for empty j."""
    if not pair.i or not pair.j:
        return 0
    table = get_table(pair.p)
    a = np.asarray(pair.i, dtype=np.int64)
    b = np.asarray(pair.j, dtype=np.int64)
    return _squared_diffs_chi_sum(table, a, b)


def symmetrization_check(pair: SupportPair) -> bool:
    """Exact identity D(I u J) = D(I) + D(J) + 2*B(I, J).

    Holds because chi(-x) = chi(x) when p = 1 mod 4, so the two cross
    blocks of the union's difference matrix are equal.
    """
    union = Subset(pair.p, pair.i + pair.j)
    lhs = discrepancy_sum(union)
    rhs = (
        discrepancy_sum(Subset(pair.p, pair.i))
        + discrepancy_sum(Subset(pair.p, pair.j))
        + 2 * bilinear_sum(pair)
    )
    return lhs == rhs


def _check_spectral_ceiling(abs_d: int, n: int, p: int) -> None:
    # |D(S)| <= sqrt(p)*|S|: the difference-character matrix has operator
    # norm sqrt(p) (its circulant eigenvalues are Gauss sums).
    if abs_d > math.sqrt(p) * n * (1.0 + 1e-12):
        raise ArithmeticError(f"spectral ceiling violated: |D|={abs_d}, n={n}, p={p}")


def _better_witness(max_abs, witness, abs_d, elems):
    """Max with lexicographically-smallest-witness tie-break."""
    if witness is None or abs_d > max_abs:
        return abs_d, elems
    if abs_d == max_abs and elems < witness:
        return max_abs, elems
    return max_abs, witness


def _min_size_above(p: int, alpha: float) -> int:
    """Smallest integer n with n > p**alpha."""
    return int(math.floor(p**alpha)) + 1


def verify_discrepancy_condition(
    p: int,
    alpha: float,
    beta: float,
    mode: str = "exhaustive",
    samples: int = 0,
    seed: int = DEFAULT_SEED,
    threads: int | None = None,
) -> DiscrepancyVerifyReport:
    """Check |D(S)| < |S|^(2-beta) for every S in F_p with |S| > p^alpha.

    The inequality is strict: equality counts as a violation.  Exhaustive
    mode walks all 2^p subsets by Gray code with an incrementally updated
    row-sum vector, so each step costs O(p); it is limited to p <= 25.
    Sampled mode draws `samples` subsets uniformly over the admissible
    sizes and is evidence only.  Violating witnesses are returned sorted.
    """
    p = validate_prime_1mod4(p)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if not 0.0 < beta <= 2.0:
        raise ValueError(f"beta must lie in (0, 2], got {beta}")
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"mode must be 'exhaustive' or 'sampled', got {mode!r}")
    if mode == "exhaustive" and p > EXHAUSTIVE_P_CAP:
        raise ValueError(
            f"exhaustive enumeration is capped at p <= {EXHAUSTIVE_P_CAP}; use mode='sampled'"
        )
    if mode == "sampled" and samples < 1:
        raise ValueError("sampled mode requires samples >= 1")

    table = get_table(p)
    if mode == "exhaustive":
        checked, violations, max_abs, witness = _verify_exhaustive(table, alpha, beta)
        rep_samples: int | None = None
        rep_seed: int | None = None
    else:
        threads = resolve_threads(threads)
        checked, violations, max_abs, witness = _verify_sampled(
            table, alpha, beta, samples, seed, threads
        )
        rep_samples, rep_seed = samples, seed

    return DiscrepancyVerifyReport(
        p=p,
        alpha=alpha,
        beta=beta,
        mode=mode,
        samples=rep_samples,
        seed=rep_seed,
        checked=checked,
        holds=not violations,
        violations=violations,
        max_abs_sum=max_abs,
        witness=witness,
    )


def _verify_exhaustive(table: LegendreTable, alpha: float, beta: float):
    p = table.p
    # chi_rows[x][y] = chi(y - x); adding x to S shifts every row sum by this.
    idx = np.arange(p, dtype=np.int64)
    chi_rows = table.chi[(idx[None, :] - idx[:, None]) % p].astype(np.int64)
    bounds = [float(n) ** (2.0 - beta) for n in range(p + 1)]
    threshold = float(p) ** alpha

    row_sums = np.zeros(p, dtype=np.int64)
    members = bytearray(p)
    d_val = 0
    size = 0
    checked = 0
    violations: list[tuple[int, ...]] = []
    max_abs = 0
    witness: tuple[int, ...] | None = None

    for k in range(1, 1 << p):
        x = (k & -k).bit_length() - 1  # Gray code: bit flipped at step k
        if members[x]:
            members[x] = 0
            d_val -= 2 * int(row_sums[x])
            row_sums -= chi_rows[x]
            size -= 1
        else:
            members[x] = 1
            d_val += 2 * int(row_sums[x])
            row_sums += chi_rows[x]
            size += 1
        if size > threshold:
            checked += 1
            abs_d = abs(d_val)
            _check_spectral_ceiling(abs_d, size, p)
            if witness is None or abs_d >= max_abs:
                snap = tuple(i for i in range(p) if members[i])
                max_abs, witness = _better_witness(max_abs, witness, abs_d, snap)
            if not abs_d < bounds[size]:
                violations.append(tuple(i for i in range(p) if members[i]))

    violations.sort()
    return checked, violations, max_abs, witness if witness is not None else ()


def _verify_sampled(table, alpha, beta, samples, seed, threads):
    p = table.p
    n_min = _min_size_above(p, alpha)
    if n_min > p:
        return 0, [], 0, ()
    rng = SplitMix64(seed)
    drawn = [rng.sample_subset(p, n_min + rng.randbelow(p - n_min + 1)) for _ in range(samples)]

    def eval_range(rg):
        lo, hi = rg
        local_viol = set()
        local_max, local_wit = 0, None
        for s in drawn[lo:hi]:
            arr = np.asarray(s, dtype=np.int64)
            abs_d = abs(_squared_diffs_chi_sum(table, arr, arr))
            _check_spectral_ceiling(abs_d, len(s), p)
            local_max, local_wit = _better_witness(local_max, local_wit, abs_d, s)
            if not abs_d < float(len(s)) ** (2.0 - beta):
                local_viol.add(s)
        return local_viol, local_max, local_wit

    results = map_chunks(eval_range, split_ranges(samples, threads * 4), threads)
    violations: set[tuple[int, ...]] = set()
    max_abs, witness = 0, None
    for viol, m, w in results:
        violations |= viol
        if w is not None:
            max_abs, witness = _better_witness(max_abs, witness, m, w)
    return samples, sorted(violations), max_abs, witness if witness is not None else ()


def estimate_beta(
    p: int,
    sizes: list[int],
    samples: int,
    seed: int = DEFAULT_SEED,
    threads: int | None = None,
) -> list[DiscrepancyReport]:
    """Sampled max of |D(S)| per subset size, with the implied exponent.

    Each size gets its own child stream of the master seed, so adding a
    size to the list does not perturb the others.
    """
    p = validate_prime_1mod4(p)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    for n in sizes:
        if not 2 <= n <= p:
            raise ValueError(f"subset size {n} outside [2, {p}]")
    threads = resolve_threads(threads)
    table = get_table(p)
    master = SplitMix64(seed)
    reports = []
    for index, n in enumerate(sizes):
        rng = master.substream(index)
        drawn = [rng.sample_subset(p, n) for _ in range(samples)]

        def eval_range(rg, drawn=drawn, n=n):
            lo, hi = rg
            local_max, local_wit = 0, None
            for s in drawn[lo:hi]:
                arr = np.asarray(s, dtype=np.int64)
                abs_d = abs(_squared_diffs_chi_sum(table, arr, arr))
                _check_spectral_ceiling(abs_d, n, p)
                local_max, local_wit = _better_witness(local_max, local_wit, abs_d, s)
            return local_max, local_wit

        results = map_chunks(eval_range, split_ranges(samples, threads * 4), threads)
        max_abs, witness = 0, None
        for m, w in results:
            if w is not None:
                max_abs, witness = _better_witness(max_abs, witness, m, w)
        witness = witness if witness is not None else ()
        beta_hat = 2.0 - math.log(max_abs) / math.log(n) if max_abs > 1 else None
        reports.append(
            DiscrepancyReport(
                p=p,
                subset_size=n,
                samples=samples,
                seed=seed,
                max_abs_sum=max_abs,
                witness=witness,
                beta_hat=beta_hat,
            )
        )
    return reports


def sample_support_pair(rng: SplitMix64, p: int, max_i: int) -> SupportPair:
    """Random disjoint pair with 1 <= |j| <= |i| <= max_i, elements in F_p."""
    max_i = min(max_i, p // 2)
    if max_i < 1:
        raise ValueError("max_i must allow at least singleton pairs")
    a = 1 + rng.randbelow(max_i)
    b = 1 + rng.randbelow(a)
    i = rng.sample_subset(p, a)
    remaining = sorted(set(range(p)) - set(i))
    j = tuple(remaining[t] for t in rng.sample_subset(len(remaining), b))
    return SupportPair(p, i, j)


def lemma_bound_check(
    p: int,
    alpha: float,
    beta: float,
    tau: float,
    samples: int,
    seed: int = DEFAULT_SEED,
    threads: int | None = None,
) -> LemmaBoundReport:
    """Sample disjoint pairs and test |B(I,J)| <= p^tau * sqrt(3|I||J|).

    Sizes obey |J| <= |I| <= p^(2*tau/(2-beta)).  tau below 2*alpha/(2-beta)
    is rejected: the bound is not claimed there.
    """
    p = validate_prime_1mod4(p)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if not 0.0 < beta < 2.0:
        raise ValueError(f"beta must lie in (0, 2), got {beta}")
    floor_tau = 2.0 * alpha / (2.0 - beta)
    if tau < floor_tau:
        raise ValueError(f"tau={tau} below the admissible floor 2a/(2-b)={floor_tau}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    threads = resolve_threads(threads)

    size_cap = max(1, min(int(math.floor(p ** (2.0 * tau / (2.0 - beta)))), p // 2))
    rng = SplitMix64(seed)
    pairs = [sample_support_pair(rng, p, size_cap) for _ in range(samples)]
    scale = float(p) ** tau

    def eval_range(rg):
        lo, hi = rg
        worst, wit = -1.0, None
        for pr in pairs[lo:hi]:
            ratio = abs(bilinear_sum(pr)) / (scale * math.sqrt(3.0 * len(pr.i) * len(pr.j)))
            key = (pr.i, pr.j)
            if ratio > worst or (ratio == worst and wit is not None and key < (wit.i, wit.j)):
                worst, wit = ratio, pr
        return worst, wit

    results = map_chunks(eval_range, split_ranges(samples, threads * 4), threads)
    worst, witness = -1.0, None
    for r, w in results:
        if w is None:
            continue
        if r > worst or (r == worst and witness is not None and (w.i, w.j) < (witness.i, witness.j)):
            worst, witness = r, w

    return LemmaBoundReport(
        p=p,
        alpha=alpha,
        beta=beta,
        tau=tau,
        samples=samples,
        seed=seed,
        size_cap=size_cap,
        holds_on_sample=worst <= 1.0,
        worst_ratio=worst,
        witness=witness,
    )
