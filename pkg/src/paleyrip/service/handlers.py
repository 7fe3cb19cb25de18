"""Request-to-report functions behind both the HTTP endpoints and the CLI.

Each handler takes a validated request model and returns a plain dict
(or CSV text) ready for serialization.  runtime_ms stays null unless the
request opts into timing, so default outputs are byte-reproducible.
"""

from __future__ import annotations

import math
import time

from paleyrip import character_sums, paley_graph, paley_matrix, rip_analysis
from paleyrip.selftest import run_selftest
from paleyrip.service import schemas
from paleyrip.theorem_engine import delta_bound, derive_parameters


def build_matrix_csv(req: schemas.MatrixRequest) -> str:
    return paley_matrix.matrix_to_csv(paley_matrix.build(req.p))


def matrix_info(req: schemas.MatrixRequest) -> dict:
    phi = paley_matrix.build(req.p)
    return {
        "p": phi.p,
        "rows": phi.m,
        "cols": phi.n,
        "column_norm_dev": paley_matrix.column_norm_dev(phi),
    }


def gram_csv(req: schemas.GramRequest) -> str:
    if req.variant == "analytic":
        return paley_matrix.gram_to_csv(paley_matrix.gram_analytic(req.p))
    if req.variant == "numeric":
        return paley_matrix.gram_to_csv(paley_matrix.gram_numeric(paley_matrix.build(req.p)))
    raise ValueError("gram CSV export requires variant 'analytic' or 'numeric'")


def gram_compare(req: schemas.GramRequest) -> dict:
    rep = paley_matrix.frame_check(paley_matrix.build(req.p))
    return rep.to_dict()


def gauss_check(req: schemas.GaussCheckRequest) -> dict:
    table = character_sums.get_table(req.p)
    root = math.sqrt(req.p)
    max_dev = 0.0
    for c in range(1, req.p):
        dev = abs(character_sums.gauss_sum(c, req.p) - root * int(table.chi[c]))
        max_dev = max(max_dev, dev)
    tol = 1e-9 * req.p
    return {
        "p": req.p,
        "count": req.p - 1,
        "max_abs_dev": max_dev,
        "tolerance": tol,
        "holds": max_dev <= tol,
    }


def rip(req: schemas.RipRequest) -> dict:
    start = time.monotonic()
    if req.mode == "exact":
        cap = req.cap if req.cap is not None else rip_analysis.ENUM_CAP
        rep = rip_analysis.rip_constant_exact(req.p, req.k, cap=cap, threads=req.threads)
    else:
        rep = rip_analysis.rip_constant_sampled(
            req.p, req.k, req.samples, seed=req.seed, threads=req.threads
        )
    if req.timing:
        rep.runtime_ms = (time.monotonic() - start) * 1000.0
    return rep.to_dict()


def flat_rip(req: schemas.FlatRipRequest) -> dict:
    start = time.monotonic()
    if req.mode == "exact":
        cap = req.cap if req.cap is not None else rip_analysis.ENUM_CAP
        rep = rip_analysis.flat_rip_exact(req.p, req.k, cap=cap, threads=req.threads)
    else:
        rep = rip_analysis.flat_rip_sampled(
            req.p, req.k, req.samples, seed=req.seed, threads=req.threads
        )
    if req.timing:
        rep.runtime_ms = (time.monotonic() - start) * 1000.0
    return rep.to_dict()


def discrepancy_verify(req: schemas.DiscrepancyVerifyRequest) -> dict:
    rep = character_sums.verify_discrepancy_condition(
        req.p,
        req.alpha,
        req.beta,
        mode=req.mode,
        samples=req.samples,
        seed=req.seed,
        threads=req.threads,
    )
    return rep.to_dict()


def discrepancy_estimate(req: schemas.DiscrepancyEstimateRequest) -> dict:
    reports = character_sums.estimate_beta(
        req.p, req.sizes, req.samples, seed=req.seed, threads=req.threads
    )
    return {"p": req.p, "reports": [r.to_dict() for r in reports]}


def lemma_check(req: schemas.LemmaCheckRequest) -> dict:
    rep = character_sums.lemma_bound_check(
        req.p, req.alpha, req.beta, req.tau, req.samples, seed=req.seed, threads=req.threads
    )
    return rep.to_dict()


def clique(req: schemas.CliqueRequest) -> dict:
    start = time.monotonic()
    rep = paley_graph.clique_number_exact(req.p)
    if req.timing:
        rep.runtime_ms = (time.monotonic() - start) * 1000.0
    return rep.to_dict()


def clique_edges_csv(req: schemas.CliqueRequest) -> str:
    return paley_graph.edges_to_csv(paley_graph.build_graph(req.p))


def theorem(req: schemas.TheoremRequest) -> dict:
    params = derive_parameters(req.alpha, req.beta, req.gamma, req.epsilon)
    out = params.to_dict()
    if req.p is not None:
        out["delta_bound"] = delta_bound(req.p, params).to_dict()
    return out


def selftest(req: schemas.SelftestRequest) -> dict:
    return run_selftest(seed=req.seed, threads=req.threads)
