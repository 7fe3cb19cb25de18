"""Scalar parameter bookkeeping for the discrepancy-to-RIP argument.

Given discrepancy parameters (alpha, beta), a sparsity exponent gamma and
a slack epsilon, this module derives the bilinear-sum exponent tau, the
sparsity exponent actually certified (K = p^k_exponent), the flat-RIP
scale theta = 2*sqrt(3)*p^(tau - 1/2), and the RIP exponent
eta = tau - 1/2 + epsilon.  All interval checks are strict: the
admissible ranges are open and boundary values are refused.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from paleyrip.finite_field import validate_prime_1mod4

GAMMA_LO = 0.5


@dataclass(frozen=True)
class TheoremParams:
    alpha: float
    beta: float
    gamma: float
    epsilon: float
    beta_clamped: float
    beta_effective: float
    case: str  # "I" or "II"
    gamma_star: float | None
    beta_star: float | None
    tau: float
    k_exponent: float
    theta_exponent: float
    eta: float
    clamp_note: str | None

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "epsilon": self.epsilon,
            "beta_clamped": self.beta_clamped,
            "beta_effective": self.beta_effective,
            "case": self.case,
            "gamma_star": self.gamma_star,
            "beta_star": self.beta_star,
            "tau": self.tau,
            "k_exponent": self.k_exponent,
            "theta_exponent": self.theta_exponent,
            "eta": self.eta,
            "clamp_note": self.clamp_note,
        }


@dataclass
class DeltaBoundReport:
    """Numeric value of 300*sqrt(3)*p^(tau-1/2)*(2*tau/(2-beta))*ln(p).

    `holds` compares against p^eta at this particular p; the comparison
    only becomes favorable for large p, so small primes report False.
    """

    p: int
    value: float
    threshold: float
    holds: bool

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "value": self.value,
            "threshold": self.threshold,
            "holds": self.holds,
        }


def _validate_alpha_beta(alpha: float, beta: float) -> None:
    if not alpha > 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not 0.0 < beta <= 2.0:
        raise ValueError(f"beta must lie in (0, 2], got {beta}")


def admissible_gamma(alpha: float, beta: float) -> tuple[float, float]:
    """Open interval (1/2, min(1/(2-beta'), 1/(4*alpha))) with beta' = min(beta, 1).

    The clamp to 1 is harmless: a discrepancy bound with exponent above 1
    implies the same bound with exponent 1.  An empty interval (hi <= lo)
    is returned as-is for the caller to detect; alpha >= 1/2 always
    produces one.
    """
    _validate_alpha_beta(alpha, beta)
    beta_c = min(beta, 1.0)
    hi = min(1.0 / (2.0 - beta_c), 1.0 / (4.0 * alpha))
    return (GAMMA_LO, hi)


def select_case(alpha: float, beta_effective: float) -> str:
    """Case I when 2*alpha/(2-beta) < 1/2 (strict), Case II otherwise."""
    _validate_alpha_beta(alpha, beta_effective)
    if beta_effective > 1.0:
        raise ValueError("select_case expects an already clamped beta <= 1")
    return "I" if 2.0 * alpha / (2.0 - beta_effective) < 0.5 else "II"


def _require_gamma_inside(gamma: float, lo: float, hi: float) -> None:
    if not hi > lo:
        raise ValueError(f"admissible gamma interval ({lo}, {hi}) is empty")
    if not lo < gamma < hi:
        raise ValueError(f"gamma={gamma} outside the open interval ({lo}, {hi})")


def case2_reduce(alpha: float, beta: float, gamma: float) -> tuple[float, float]:
    """Replace beta by beta* = 2 - 1/gamma* so that Case I applies.

    gamma* is the midpoint of (gamma, hi): any point of the open interval
    works and the midpoint keeps maximal margin from both endpoints.
    The reduction is checked: beta* < min(beta, 1), gamma stays admissible
    under beta*, and 2*alpha/(2-beta*) < 1/2.
    """
    lo, hi = admissible_gamma(alpha, beta)
    _require_gamma_inside(gamma, lo, hi)
    beta_c = min(beta, 1.0)
    if select_case(alpha, beta_c) != "II":
        raise ValueError("case2_reduce applies only in Case II (2a/(2-b) >= 1/2)")
    gamma_star = 0.5 * (gamma + hi)
    beta_star = 2.0 - 1.0 / gamma_star
    if not beta_star < beta_c:
        raise ArithmeticError(f"reduction failed: beta*={beta_star} not below {beta_c}")
    if not gamma < min(1.0 / (2.0 - beta_star), 1.0 / (4.0 * alpha)):
        raise ArithmeticError("reduction failed: gamma no longer admissible under beta*")
    if not 2.0 * alpha / (2.0 - beta_star) < 0.5:
        raise ArithmeticError("reduction failed: Case I condition not reached")
    return gamma_star, beta_star


def derive_parameters(alpha: float, beta: float, gamma: float, epsilon: float) -> TheoremParams:
    """Complete the parameter bundle from (alpha, beta, gamma, epsilon).

    tau = max(2*alpha/(2-b), (2-b)/2 * gamma) with b the effective beta
    (clamped, then Case-II-reduced if needed); K = p^(2*tau/(2-b)).
    Guaranteed tau < 1/2 and k_exponent >= gamma for admissible inputs.
    """
    if not epsilon > 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    lo, hi = admissible_gamma(alpha, beta)
    _require_gamma_inside(gamma, lo, hi)
    beta_c = min(beta, 1.0)
    clamp_note = f"beta clamped from {beta} to 1" if beta > 1.0 else None

    case = select_case(alpha, beta_c)
    if case == "II":
        gamma_star, beta_star = case2_reduce(alpha, beta, gamma)
        beta_eff = beta_star
    else:
        gamma_star, beta_star = None, None
        beta_eff = beta_c

    tau = max(2.0 * alpha / (2.0 - beta_eff), 0.5 * (2.0 - beta_eff) * gamma)
    k_exponent = 2.0 * tau / (2.0 - beta_eff)
    if not tau < 0.5:
        raise ArithmeticError(f"derived tau={tau} not below 1/2")
    if not k_exponent >= gamma - 1e-12:
        raise ArithmeticError(f"derived k_exponent={k_exponent} below gamma={gamma}")

    return TheoremParams(
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        epsilon=epsilon,
        beta_clamped=beta_c,
        beta_effective=beta_eff,
        case=case,
        gamma_star=gamma_star,
        beta_star=beta_star,
        tau=tau,
        k_exponent=k_exponent,
        theta_exponent=tau - 0.5,
        eta=tau - 0.5 + epsilon,
        clamp_note=clamp_note,
    )


def delta_bound(p: int, params: TheoremParams) -> DeltaBoundReport:
    """Evaluate 150 * theta * log K at concrete p and compare with p^eta.

    theta = 2*sqrt(3)*p^(tau-1/2) and log K = (2*tau/(2-beta)) * ln(p),
    giving 300*sqrt(3)*p^(tau-1/2)*(2*tau/(2-beta))*ln(p).
    """
    p = validate_prime_1mod4(p)
    value = (
        300.0
        * math.sqrt(3.0)
        * p ** params.theta_exponent
        * (2.0 * params.tau / (2.0 - params.beta_effective))
        * math.log(p)
    )
    threshold = p ** params.eta
    return DeltaBoundReport(p=p, value=value, threshold=threshold, holds=value <= threshold)
