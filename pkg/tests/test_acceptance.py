"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines inline.
Tolerances are fixed here, not configurable.
"""

import math

import numpy as np
import pytest

from paleyrip.character_sums import (
    Subset,
    discrepancy_sum,
    gauss_sum,
    get_table,
    sample_support_pair,
    symmetrization_check,
)
from paleyrip.cli import main
from paleyrip.paley_graph import (
    clique_number_exact,
    clique_rip_consistency,
    independent_gram_eigs,
    induced_edges,
)
from paleyrip.paley_matrix import build, frame_check, gram_analytic, gram_numeric
from paleyrip.prng import SplitMix64
from paleyrip.rip_analysis import flat_rip_exact, rip_constant_exact, rip_from_flat
from paleyrip.theorem_engine import case2_reduce, derive_parameters, select_case

GAUSS_PRIMES = (5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97, 101)
GRAM_PRIMES = (5, 13, 17, 29, 37, 101)
FRAME_PRIMES = (5, 13, 17, 29)
RIP_PRIMES = (5, 13, 17)


def report(line: str) -> None:
    print(f"ACCEPTANCE {line}")


def test_criterion_01_gauss_sum_identity():
    worst = 0.0
    for p in GAUSS_PRIMES:
        chi = get_table(p).chi
        root = math.sqrt(p)
        for c in range(1, p):
            dev = abs(gauss_sum(c, p) - root * int(chi[c])) / p
            worst = max(worst, dev)
            assert dev <= 1e-9
    report(f"1 PASS gauss sum identity, 12 primes up to 101, worst dev/p = {worst:.3e}")


def test_criterion_02_gram_equivalence():
    worst = 0.0
    for p in GRAM_PRIMES:
        dev = float(np.abs(gram_numeric(build(p)) - gram_analytic(p)).max())
        worst = max(worst, dev)
        assert dev <= 1e-10
    report(f"2 PASS numeric Gram equals analytic Gram, worst entry dev = {worst:.3e}")


def test_criterion_03_display_matrix_p5():
    import cmath

    phi = build(5)
    r1, r2 = math.sqrt(1 / 5), math.sqrt(2 / 5)
    expected = np.zeros((3, 6), dtype=complex)
    expected[0, :5] = r1
    expected[0, 5] = 1.0
    for j in range(5):
        expected[1, j] = r2 * cmath.exp(-2j * cmath.pi * j / 5)
        expected[2, j] = r2 * cmath.exp(-2j * cmath.pi * ((4 * j) % 5) / 5)
    dev = float(np.abs(phi.entries - expected).max())
    assert dev <= 1e-12
    report(f"3 PASS p=5 matrix matches its display form, dev = {dev:.3e}")


def test_criterion_04_tight_frame_and_equiangularity():
    worst_tight = worst_equi = 0.0
    for p in FRAME_PRIMES:
        rep = frame_check(build(p))
        worst_tight = max(worst_tight, rep.tight_dev)
        worst_equi = max(worst_equi, rep.equiangular_dev)
        assert rep.tight_dev <= 1e-9
        assert rep.equiangular_dev <= 1e-10
    report(
        f"4 PASS tight frame (dev {worst_tight:.3e}) and equiangularity (dev {worst_equi:.3e})"
    )


def test_criterion_05_exact_rip_constants():
    for p in RIP_PRIMES:
        deltas = [rip_constant_exact(p, k).delta for k in (1, 2, 3, 4)]
        assert abs(deltas[0]) <= 1e-10
        assert abs(deltas[1] - 1 / math.sqrt(p)) <= 1e-10
        for lo, hi in zip(deltas, deltas[1:]):
            assert lo <= hi + 1e-12
    report("5 PASS delta_1 = 0, delta_2 = 1/sqrt(p), delta_K nondecreasing (p in {5,13,17})")


def test_criterion_06_flat_rip_and_direction():
    rep = flat_rip_exact(5, 2)
    assert abs(rep.theta - 2 / math.sqrt(5)) <= 1e-10
    # verify the witness against the constructed matrix itself
    phi = build(5).entries
    ip = np.vdot(
        phi[:, list(rep.witness_j)].sum(axis=1), phi[:, list(rep.witness_i)].sum(axis=1)
    )
    recomputed = abs(ip) / math.sqrt(len(rep.witness_i) * len(rep.witness_j))
    assert recomputed == pytest.approx(rep.theta, abs=1e-10)
    for p in RIP_PRIMES:
        for k in (2, 3, 4):
            delta = rip_constant_exact(p, k).delta
            theta = flat_rip_exact(p, k).theta
            assert delta <= rip_from_flat(theta, k)
    report("6 PASS flat RIP theta(5,2) = 2/sqrt(5) with verified witness; delta_K <= 150 theta ln K")


def test_criterion_07_exact_identities_on_seeded_samples():
    for p in (13, 101):
        rng = SplitMix64(0xC0FFEE + p)
        root = math.sqrt(p)
        for _ in range(1000):
            pair = sample_support_pair(rng, p, max_i=min(p // 2, 16))
            assert symmetrization_check(pair)
            n = 2 + rng.randbelow(min(p, 30) - 1)
            s = Subset(p, rng.sample_subset(p, n))
            d = discrepancy_sum(s)
            assert d == 4 * (induced_edges(s) - math.comb(n, 2) / 2)
            assert abs(d) <= root * n
    report("7 PASS symmetrization + edge identity exact, spectral ceiling, 10^3 samples each")


def test_criterion_08_clique_pipeline():
    expected = {5: 2, 13: 3, 17: 3}
    for p in RIP_PRIMES:
        rep = clique_number_exact(p)
        assert rep.omega == expected[p]
        chi = get_table(p).chi
        for idx, x in enumerate(rep.independent_witness):
            for y in rep.independent_witness[idx + 1:]:
                assert chi[(x - y) % p] == -1
        analytic, numeric = independent_gram_eigs(rep.omega, p, rep.independent_witness)
        assert float(np.abs(analytic - numeric).max()) <= 1e-9
        delta = rip_constant_exact(p, rep.omega).delta
        assert clique_rip_consistency(p, rep.omega, delta).holds
    report("8 PASS omega(5,13,17) = (2,3,3); independent transform; spectra; RIP bound")


def test_criterion_09_theorem_engine():
    tol = 1e-12
    one = derive_parameters(0.1, 0.5, 0.6, 0.01)
    assert abs(one.tau - 0.45) <= tol and abs(one.k_exponent - 0.6) <= tol
    assert abs(one.eta - (-0.05 + 0.01)) <= tol
    two = derive_parameters(0.1, 0.5, 0.51, 0.01)
    assert abs(two.tau - 0.3825) <= tol and abs(two.k_exponent - 0.51) <= tol
    gamma_star, beta_star = case2_reduce(0.3, 1.0, 0.6)
    assert abs(gamma_star - (0.6 + 5 / 6) / 2) <= tol
    assert abs(beta_star - (2 - 1 / gamma_star)) <= tol

    rng = SplitMix64(0xC0FFEE)
    admissible = 0
    while admissible < 10_000:
        alpha = 0.5 * rng.open_unit()
        beta = 2.0 * rng.open_unit()
        if beta <= 0.0:
            continue
        beta_c = min(beta, 1.0)
        hi = min(1 / (2 - beta_c), 1 / (4 * alpha))
        if hi <= 0.5:
            continue
        gamma = 0.5 + rng.open_unit() * (hi - 0.5)
        if not 0.5 < gamma < hi:
            continue
        admissible += 1
        if select_case(alpha, beta_c) == "II":
            _, beta_star = case2_reduce(alpha, beta, gamma)
            assert select_case(alpha, beta_star) == "I"
    report("9 PASS hand-derived parameter instances at 1e-12; Case-II idempotence over 10^4 triples")


def test_criterion_10_selftest_determinism(capsys):
    def selftest_bytes(threads: str) -> str:
        code = main(["selftest", "--threads", threads, "--seed", str(0xC0FFEE)])
        out = capsys.readouterr().out
        assert code == 0
        return out

    run_a = selftest_bytes("1")
    run_b = selftest_bytes("4")
    run_c = selftest_bytes("1")
    assert run_a == run_b, "thread count changed selftest output"
    assert run_a == run_c, "repeat run changed selftest output"
    with capsys.disabled():
        report("10 PASS selftest byte-identical across runs and --threads values")
