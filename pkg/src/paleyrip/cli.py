"""Command-line client for the verification toolkit.

Each subcommand builds the same request model the HTTP service accepts
and dispatches it in-process; `--server URL` sends it to a running
service instead.  JSON output is canonical (17 significant digits,
fixed key order) and embeds the run configuration, so identical
configurations produce byte-identical reports.  `--threads` affects
scheduling only, never output, and is therefore not part of the echoed
configuration.

Exit codes: 0 success, 1 internal error or failed selftest, 2 invalid usage.
"""

from __future__ import annotations

import argparse
import sys

from paleyrip import DEFAULT_SEED, __version__, jsonio
from paleyrip.service import handlers, schemas

_ENDPOINTS = {
    "build": "/v1/matrix/csv",
    "gram-csv": "/v1/gram/csv",
    "gram-compare": "/v1/gram",
    "gauss-check": "/v1/gauss-check",
    "rip": "/v1/rip",
    "flat-rip": "/v1/flat-rip",
    "discrepancy-verify": "/v1/discrepancy/verify",
    "discrepancy-estimate": "/v1/discrepancy/estimate",
    "lemma-check": "/v1/lemma-check",
    "clique": "/v1/clique",
    "clique-edges": "/v1/clique/edges",
    "theorem": "/v1/theorem",
    "selftest": "/v1/selftest",
}


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")
    common.add_argument(
        "--format", choices=("json", "csv"), default=None,
        help="override the command's natural output format (rarely needed)",
    )
    common.add_argument(
        "--seed", type=int, default=DEFAULT_SEED,
        help=f"PRNG seed for sampled modes (default {DEFAULT_SEED:#x})",
    )
    common.add_argument(
        "--threads", type=int, default=None,
        help="worker cap for enumeration/sampling (env PALEY_THREADS as fallback)",
    )
    common.add_argument(
        "--timing", action="store_true",
        help="fill runtime_ms in reports (breaks byte-reproducibility)",
    )
    common.add_argument("--server", default=None, help="POST the request to a running service")
    return common


def _build_arg_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="paley",
        description="Paley matrix and restricted-isometry verification toolkit",
    )
    parser.add_argument("--version", action="version", version=f"paley {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("build", parents=[common], help="export the matrix as CSV")
    sp.add_argument("--p", type=int, required=True)

    sp = sub.add_parser("gram", parents=[common], help="Gram matrix export or comparison")
    sp.add_argument("--p", type=int, required=True)
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--analytic", action="store_true", help="CSV of the closed-form Gram")
    grp.add_argument("--numeric", action="store_true", help="CSV of the summed Gram")
    grp.add_argument("--compare", action="store_true", help="JSON deviation report (default)")

    sp = sub.add_parser("gauss-check", parents=[common], help="Gauss sum identity over all c != 0")
    sp.add_argument("--p", type=int, required=True)

    for name, descr in (("rip", "restricted isometry constant"), ("flat-rip", "flat-RIP constant")):
        sp = sub.add_parser(name, parents=[common], help=descr)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--k", type=int, required=True)
        grp = sp.add_mutually_exclusive_group()
        grp.add_argument("--exact", action="store_true", help="enumerate all supports (default)")
        grp.add_argument("--sample", action="store_true", help="sampled lower bound")
        sp.add_argument("--samples", type=int, default=1000)
        sp.add_argument("--cap", type=int, default=None, help="enumeration cap override")

    sp = sub.add_parser("discrepancy", parents=[common], help="subset character-sum bounds")
    sp.add_argument("action", choices=("verify", "estimate"))
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--alpha", type=float, default=None)
    sp.add_argument("--beta", type=float, default=None)
    sp.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    sp.add_argument("--sizes", default=None, help="comma-separated subset sizes (estimate)")
    sp.add_argument("--samples", type=int, default=1000)

    sp = sub.add_parser("lemma-check", parents=[common], help="bilinear sum bound on sampled pairs")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--tau", type=float, required=True)
    sp.add_argument("--samples", type=int, default=1000)

    sp = sub.add_parser("clique", parents=[common], help="exact clique number and witnesses")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--edges", action="store_true", help="emit the edge list CSV instead")

    sp = sub.add_parser("theorem", parents=[common], help="derive (tau, K, eta) from (alpha, beta, gamma, epsilon)")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--epsilon", type=float, required=True)
    sp.add_argument("--p", type=int, default=None)

    sub.add_parser("selftest", parents=[common], help="run the full invariant suite on p in {5,13,17}")

    return parser


def _prepare(args) -> tuple[str, object, str, object]:
    """Map parsed args to (endpoint key, request model, output kind, local handler)."""
    cmd = args.command
    if cmd == "build":
        return "build", schemas.MatrixRequest(p=args.p), "csv", handlers.build_matrix_csv
    if cmd == "gram":
        variant = "analytic" if args.analytic else "numeric" if args.numeric else "compare"
        req = schemas.GramRequest(p=args.p, variant=variant)
        if variant == "compare":
            return "gram-compare", req, "json", handlers.gram_compare
        return "gram-csv", req, "csv", handlers.gram_csv
    if cmd == "gauss-check":
        return "gauss-check", schemas.GaussCheckRequest(p=args.p), "json", handlers.gauss_check
    if cmd == "rip":
        mode = "sampled" if args.sample else "exact"
        req = schemas.RipRequest(
            p=args.p, k=args.k, mode=mode, samples=args.samples, seed=args.seed,
            cap=args.cap, threads=args.threads, timing=args.timing,
        )
        return "rip", req, "json", handlers.rip
    if cmd == "flat-rip":
        mode = "sampled" if args.sample else "exact"
        req = schemas.FlatRipRequest(
            p=args.p, k=args.k, mode=mode, samples=args.samples, seed=args.seed,
            cap=args.cap, threads=args.threads, timing=args.timing,
        )
        return "flat-rip", req, "json", handlers.flat_rip
    if cmd == "discrepancy":
        if args.action == "verify":
            if args.alpha is None or args.beta is None:
                raise ValueError("discrepancy verify requires --alpha and --beta")
            req = schemas.DiscrepancyVerifyRequest(
                p=args.p, alpha=args.alpha, beta=args.beta, mode=args.mode,
                samples=args.samples, seed=args.seed, threads=args.threads,
            )
            return "discrepancy-verify", req, "json", handlers.discrepancy_verify
        if args.sizes is None:
            raise ValueError("discrepancy estimate requires --sizes")
        sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
        req = schemas.DiscrepancyEstimateRequest(
            p=args.p, sizes=sizes, samples=args.samples, seed=args.seed, threads=args.threads,
        )
        return "discrepancy-estimate", req, "json", handlers.discrepancy_estimate
    if cmd == "lemma-check":
        req = schemas.LemmaCheckRequest(
            p=args.p, alpha=args.alpha, beta=args.beta, tau=args.tau,
            samples=args.samples, seed=args.seed, threads=args.threads,
        )
        return "lemma-check", req, "json", handlers.lemma_check
    if cmd == "clique":
        req = schemas.CliqueRequest(p=args.p, timing=args.timing)
        if args.edges:
            return "clique-edges", req, "csv", handlers.clique_edges_csv
        return "clique", req, "json", handlers.clique
    if cmd == "theorem":
        req = schemas.TheoremRequest(
            alpha=args.alpha, beta=args.beta, gamma=args.gamma, epsilon=args.epsilon, p=args.p,
        )
        return "theorem", req, "json", handlers.theorem
    if cmd == "selftest":
        req = schemas.SelftestRequest(seed=args.seed, threads=args.threads)
        return "selftest", req, "json", handlers.selftest
    raise ValueError(f"unknown command {cmd!r}")


def _run_config(args, kind: str) -> dict:
    def get(name):
        return getattr(args, name, None)

    if hasattr(args, "sample"):
        mode = "sampled" if args.sample else "exact"
    else:
        mode = get("mode")
    return {
        "command": args.command + (f" {args.action}" if get("action") else ""),
        "p": get("p"),
        "k": get("k"),
        "alpha": get("alpha"),
        "beta": get("beta"),
        "gamma": get("gamma"),
        "epsilon": get("epsilon"),
        "tau": get("tau"),
        "sizes": get("sizes"),
        "mode": mode,
        "samples": get("samples"),
        "seed": args.seed,
        "timing": args.timing,
        "format": kind,
        "out": args.out,
    }


def _post(server: str, path: str, request) -> tuple[int, str, dict | None]:
    import httpx

    with httpx.Client(base_url=server, timeout=600.0) as client:
        resp = client.post(path, json=request.model_dump())
    body = resp.text
    parsed = None
    if resp.headers.get("content-type", "").startswith("application/json"):
        parsed = resp.json()
    return resp.status_code, body, parsed


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = _build_arg_parser()
    args = parser.parse_args(argv)
    try:
        key, request, kind, local = _prepare(args)
        if args.format is not None and args.format != kind:
            raise ValueError(f"command '{args.command}' produces {kind}, not {args.format}")

        if args.server:
            status, body, parsed = _post(args.server, _ENDPOINTS[key], request)
            if status >= 500:
                print(f"internal error: service returned {status}: {body}", file=sys.stderr)
                return 1
            if status >= 400:
                detail = parsed.get("detail") if isinstance(parsed, dict) else body
                print(f"error: {detail}", file=sys.stderr)
                return 2
            report = parsed if kind == "json" else body
        else:
            report = local(request)

        if kind == "csv":
            _emit(report, args.out)
            return 0
        payload = {"config": _run_config(args, kind), "report": report}
        _emit(jsonio.dumps(payload) + "\n", args.out)
        if args.command == "selftest" and not report.get("ok", False):
            return 1
        return 0
    except ValueError as exc:
        message = "; ".join(part.strip() for part in str(exc).splitlines() if part.strip())
        print(f"error: {message}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - the CLI boundary reports and exits
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
