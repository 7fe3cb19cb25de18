"""FastAPI surface: one POST endpoint per operation, JSON in/out.

Run with `uvicorn paleyrip.service.app:app` or `python -m paleyrip.service.app`.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

import paleyrip
from paleyrip.service import handlers, schemas

app = FastAPI(
    title="paleyrip",
    description="Paley matrix construction and restricted-isometry verification service",
    version=paleyrip.__version__,
)


@app.exception_handler(ValueError)
async def value_error_handler(_: Request, exc: ValueError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.get("/health", response_model=schemas.HealthResponse)
def health():
    return schemas.HealthResponse(status="ok", version=paleyrip.__version__)


@app.post("/v1/matrix")
def matrix_info(req: schemas.MatrixRequest):
    return handlers.matrix_info(req)


@app.post("/v1/matrix/csv", response_class=PlainTextResponse)
def matrix_csv(req: schemas.MatrixRequest):
    return PlainTextResponse(handlers.build_matrix_csv(req), media_type="text/csv")


@app.post("/v1/gram")
def gram(req: schemas.GramRequest):
    return handlers.gram_compare(req)


@app.post("/v1/gram/csv", response_class=PlainTextResponse)
def gram_csv(req: schemas.GramRequest):
    return PlainTextResponse(handlers.gram_csv(req), media_type="text/csv")


@app.post("/v1/gauss-check")
def gauss_check(req: schemas.GaussCheckRequest):
    return handlers.gauss_check(req)


@app.post("/v1/rip")
def rip(req: schemas.RipRequest):
    return handlers.rip(req)


@app.post("/v1/flat-rip")
def flat_rip(req: schemas.FlatRipRequest):
    return handlers.flat_rip(req)


@app.post("/v1/discrepancy/verify")
def discrepancy_verify(req: schemas.DiscrepancyVerifyRequest):
    return handlers.discrepancy_verify(req)


@app.post("/v1/discrepancy/estimate")
def discrepancy_estimate(req: schemas.DiscrepancyEstimateRequest):
    return handlers.discrepancy_estimate(req)


@app.post("/v1/lemma-check")
def lemma_check(req: schemas.LemmaCheckRequest):
    return handlers.lemma_check(req)


@app.post("/v1/clique")
def clique(req: schemas.CliqueRequest):
    return handlers.clique(req)


@app.post("/v1/clique/edges", response_class=PlainTextResponse)
def clique_edges(req: schemas.CliqueRequest):
    return PlainTextResponse(handlers.clique_edges_csv(req), media_type="text/csv")


@app.post("/v1/theorem")
def theorem(req: schemas.TheoremRequest):
    return handlers.theorem(req)


@app.post("/v1/selftest")
def selftest(req: schemas.SelftestRequest):
    return handlers.selftest(req)


def main():  # pragma: no cover - manual entry point
    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=8000)


if __name__ == "__main__":  # pragma: no cover
    main()
