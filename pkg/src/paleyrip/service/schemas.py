"""Pydantic request models shared by the HTTP service and the CLI.

Structural validation lives here (types, ranges); number-theoretic
validation (primality, disjointness, caps) stays in the core package and
surfaces as HTTP 400 / CLI exit 2.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

from paleyrip import DEFAULT_SEED


class MatrixRequest(BaseModel):
    p: int = Field(..., ge=5)


class GramRequest(BaseModel):
    p: int = Field(..., ge=5)
    variant: Literal["analytic", "numeric", "compare"] = "compare"


class GaussCheckRequest(BaseModel):
    p: int = Field(..., ge=5)


class RipRequest(BaseModel):
    p: int = Field(..., ge=5)
    k: int = Field(..., ge=1)
    mode: Literal["exact", "sampled"] = "exact"
    samples: int = Field(default=1000, ge=1)
    seed: int = DEFAULT_SEED
    cap: Optional[int] = Field(default=None, ge=1)
    threads: Optional[int] = Field(default=None, ge=1)
    timing: bool = False


class FlatRipRequest(BaseModel):
    p: int = Field(..., ge=5)
    k: int = Field(..., ge=1)
    mode: Literal["exact", "sampled"] = "exact"
    samples: int = Field(default=1000, ge=1)
    seed: int = DEFAULT_SEED
    cap: Optional[int] = Field(default=None, ge=1)
    threads: Optional[int] = Field(default=None, ge=1)
    timing: bool = False


class DiscrepancyVerifyRequest(BaseModel):
    p: int = Field(..., ge=5)
    alpha: float = Field(..., gt=0.0, lt=1.0)
    beta: float = Field(..., gt=0.0, le=2.0)
    mode: Literal["exhaustive", "sampled"] = "exhaustive"
    samples: int = Field(default=1000, ge=1)
    seed: int = DEFAULT_SEED
    threads: Optional[int] = Field(default=None, ge=1)


class DiscrepancyEstimateRequest(BaseModel):
    p: int = Field(..., ge=5)
    sizes: list[int] = Field(..., min_length=1)
    samples: int = Field(default=1000, ge=1)
    seed: int = DEFAULT_SEED
    threads: Optional[int] = Field(default=None, ge=1)


class LemmaCheckRequest(BaseModel):
    p: int = Field(..., ge=5)
    alpha: float = Field(..., gt=0.0, lt=1.0)
    beta: float = Field(..., gt=0.0, lt=2.0)
    tau: float
    samples: int = Field(default=1000, ge=1)
    seed: int = DEFAULT_SEED
    threads: Optional[int] = Field(default=None, ge=1)


class CliqueRequest(BaseModel):
    p: int = Field(..., ge=5)
    timing: bool = False


class TheoremRequest(BaseModel):
    alpha: float = Field(..., gt=0.0)
    beta: float = Field(..., gt=0.0, le=2.0)
    gamma: float
    epsilon: float = Field(..., gt=0.0)
    p: Optional[int] = Field(default=None, ge=5)


class SelftestRequest(BaseModel):
    seed: int = DEFAULT_SEED
    threads: Optional[int] = Field(default=None, ge=1)


class HealthResponse(BaseModel):
    status: str
    version: str
