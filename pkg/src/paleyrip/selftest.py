"""Built-in invariant suite over p in {5, 13, 17}.

Every check re-derives its expected values at run time (closed forms,
exact integer identities) and records only deterministic quantities, so
two runs with the same seed produce byte-identical reports regardless of
the worker count.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from paleyrip import DEFAULT_SEED
from paleyrip.character_sums import (
    Subset,
    discrepancy_sum,
    gauss_sum,
    get_table,
    sample_support_pair,
    symmetrization_check,
)
from paleyrip.paley_graph import (
    clique_number_exact,
    clique_rip_consistency,
    independent_gram_eigs,
    induced_edges,
)
from paleyrip.paley_matrix import build, column_norm_dev, frame_check
from paleyrip.prng import SplitMix64
from paleyrip.rip_analysis import flat_rip_exact, rip_constant_exact, rip_from_flat
from paleyrip.theorem_engine import case2_reduce, derive_parameters, select_case

SELFTEST_PRIMES = (5, 13, 17)
EXPECTED_OMEGA = {5: 2, 13: 3, 17: 3}


def _check(name: str, ok: bool, **detail) -> dict:
    entry = {"name": name, "ok": bool(ok)}
    entry.update(detail)
    return entry


def _gauss_identity(p: int) -> dict:
    table = get_table(p)
    dev = max(
        abs(gauss_sum(c, p) - math.sqrt(p) * int(table.chi[c])) for c in range(1, p)
    )
    return _check("gauss_identity", dev <= 1e-9 * p, p=p, max_dev=dev)


def _gram_equivalence(p: int) -> dict:
    rep = frame_check(build(p))
    ok = rep.max_offdiag_dev <= 1e-10 and rep.tight_dev <= 1e-9 and rep.equiangular_dev <= 1e-10
    return _check(
        "frame_structure",
        ok,
        p=p,
        gram_dev=rep.max_offdiag_dev,
        tight_dev=rep.tight_dev,
        equiangular_dev=rep.equiangular_dev,
        column_norm_dev=column_norm_dev(build(p)),
    )


def _display_matrix_p5() -> dict:
    phi = build(5)
    r1, r2 = math.sqrt(0.2), math.sqrt(0.4)
    expected = np.zeros((3, 6), dtype=complex)
    expected[0, :5] = r1
    expected[0, 5] = 1.0
    for j in range(5):
        expected[1, j] = r2 * cmath.exp(-2j * cmath.pi * j / 5)
        expected[2, j] = r2 * cmath.exp(-2j * cmath.pi * (4 * j % 5) / 5)
    dev = float(np.abs(phi.entries - expected).max())
    return _check("display_matrix_p5", dev <= 1e-12, p=5, max_dev=dev)


def _rip_small(p: int, threads) -> dict:
    deltas = [rip_constant_exact(p, k, threads=threads).delta for k in (1, 2, 3, 4)]
    ok = (
        abs(deltas[0]) <= 1e-10
        and abs(deltas[1] - 1.0 / math.sqrt(p)) <= 1e-10
        and all(deltas[i] <= deltas[i + 1] + 1e-12 for i in range(3))
    )
    return _check("rip_exact_small", ok, p=p, deltas=deltas)


def _flat_rip_p5(threads) -> dict:
    rep = flat_rip_exact(5, 2, threads=threads)
    dev = abs(rep.theta - 2.0 / math.sqrt(5))
    return _check(
        "flat_rip_p5",
        dev <= 1e-10,
        theta=rep.theta,
        witness_i=list(rep.witness_i),
        witness_j=list(rep.witness_j),
    )


def _prop_direction(p: int, threads) -> dict:
    entries = []
    ok = True
    for k in (2, 3, 4):
        delta = rip_constant_exact(p, k, threads=threads).delta
        theta = flat_rip_exact(p, k, threads=threads).theta
        bound = rip_from_flat(theta, k)
        ok = ok and delta <= bound
        entries.append({"K": k, "delta": delta, "bound": bound})
    return _check("flat_to_rip_direction", ok, p=p, cases=entries)


def _exact_identities(p: int, seed: int) -> dict:
    rng = SplitMix64(seed)
    table = get_table(p)
    ceiling = math.sqrt(p)
    sym_ok = edge_ok = ceil_ok = True
    for _ in range(200):
        pair = sample_support_pair(rng, p, max_i=min(p // 2, 12))
        sym_ok = sym_ok and symmetrization_check(pair)
        n = 2 + rng.randbelow(p - 2)
        s = Subset(p, rng.sample_subset(p, n))
        d = discrepancy_sum(s)
        edge_ok = edge_ok and d == 4 * induced_edges(s) - 2 * math.comb(n, 2)
        ceil_ok = ceil_ok and abs(d) <= ceiling * n
    return _check(
        "exact_identities", sym_ok and edge_ok and ceil_ok,
        p=p, symmetrization=sym_ok, edge_identity=edge_ok, spectral_ceiling=ceil_ok,
    )


def _clique_pipeline(p: int, threads) -> dict:
    rep = clique_number_exact(p)
    ok = rep.omega == EXPECTED_OMEGA[p]
    analytic, numeric = independent_gram_eigs(rep.omega, p, rep.independent_witness)
    spectrum_dev = float(np.abs(analytic - numeric).max())
    ok = ok and spectrum_dev <= 1e-9
    delta = rip_constant_exact(p, rep.omega, threads=threads).delta
    cons = clique_rip_consistency(p, rep.omega, delta)
    ok = ok and cons.holds
    return _check(
        "clique_pipeline", ok,
        p=p, omega=rep.omega, witness=list(rep.witness_clique),
        independent_witness=list(rep.independent_witness),
        spectrum_dev=spectrum_dev, rip_bound=cons.bound, rip_bound_holds=cons.holds,
    )


def _theorem_values(seed: int) -> dict:
    tol = 1e-12
    a = derive_parameters(0.1, 0.5, 0.6, 0.01)
    b = derive_parameters(0.1, 0.5, 0.51, 0.01)
    c = case2_reduce(0.3, 1.0, 0.6)
    hand_ok = (
        abs(a.tau - 0.45) <= tol
        and abs(a.k_exponent - 0.6) <= tol
        and a.case == "I"
        and abs(b.tau - 0.3825) <= tol
        and abs(b.k_exponent - 0.51) <= tol
        and abs(c[0] - (0.6 + 5.0 / 6.0) / 2.0) <= tol
        and abs(c[1] - (2.0 - 1.0 / c[0])) <= tol
    )
    rng = SplitMix64(seed)
    idem_ok = True
    tried = 0
    while tried < 2000:
        alpha = 0.5 * rng.open_unit()
        beta = 0.25 + 0.75 * rng.open_unit()
        lo, hi = (0.5, min(1.0 / (2.0 - min(beta, 1.0)), 1.0 / (4.0 * alpha)))
        if hi <= lo:
            continue
        gamma = lo + rng.open_unit() * (hi - lo)
        if not lo < gamma < hi:
            continue
        tried += 1
        if select_case(alpha, min(beta, 1.0)) == "II":
            _, beta_star = case2_reduce(alpha, beta, gamma)
            idem_ok = idem_ok and select_case(alpha, beta_star) == "I"
    return _check("theorem_engine", hand_ok and idem_ok, hand_values=hand_ok, case2_idempotent=idem_ok)


def run_selftest(seed: int = DEFAULT_SEED, threads: int | None = None) -> dict:
    """Run every invariant check; report is byte-stable for a fixed seed."""
    checks: list[dict] = []
    for p in SELFTEST_PRIMES:
        checks.append(_gauss_identity(p))
    for p in SELFTEST_PRIMES:
        checks.append(_gram_equivalence(p))
    checks.append(_display_matrix_p5())
    for p in SELFTEST_PRIMES:
        checks.append(_rip_small(p, threads))
    checks.append(_flat_rip_p5(threads))
    for p in SELFTEST_PRIMES:
        checks.append(_prop_direction(p, threads))
    for n, p in enumerate((13, 17)):
        checks.append(_exact_identities(p, seed + n))
    for p in SELFTEST_PRIMES:
        checks.append(_clique_pipeline(p, threads))
    checks.append(_theorem_values(seed))
    return {
        "seed": seed,
        "primes": list(SELFTEST_PRIMES),
        "ok": all(c["ok"] for c in checks),
        "checks": checks,
    }
