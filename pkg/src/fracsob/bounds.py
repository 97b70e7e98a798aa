"""Lower/upper bounds for the subcritical embedding constants S_{s,q}.

Three regimes are covered (see `constants.Regime`):

* borderline (p = 1): Hoelder/dilation bounds on bounded domains, and the
  interpolation identity on the whole space, where the lower and upper
  expressions coincide, so the whole-space constant is exact;
* Hilbert (p = 2, N > 2s): Hoelder lower bound and the bump-profile upper
  bound on domains; Young-interpolation lower and bump-family upper on the
  whole space;
* limiting (p = 2, N = 1, s = 1/2): truncated-logarithm upper bounds and
  exponential-integrability lower bounds, the latter carrying the caller
  supplied Trudinger-Moser constants C1 (domain) and C2 (whole space).

All q-dependent exponents are evaluated through `_inv_gap` as fused
differences to avoid cancellation near the critical exponent, and every
formula degrades gracefully at q equal to the critical exponent, where both
bounds collapse onto the critical constant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .constants import (
    ConstantKind,
    ConstantValue,
    Params,
    Regime,
    frac_isoperimetric,
    frac_sobolev_hilbert,
    unit_ball_volume,
)
from .errors import DomainError, RegimeError
from .specfun import beta_fn, gamma_fn, ln_gamma

__all__ = [
    "DomainSpec",
    "BoundPair",
    "dilation_transfer",
    "young_lower",
    "borderline_domain_bounds",
    "borderline_wholespace_bounds",
    "hilbert_domain_bounds",
    "hilbert_wholespace_bounds",
    "limiting_domain_upper",
    "limiting_domain_lower",
    "limiting_wholespace_upper",
    "limiting_wholespace_q2",
    "limiting_wholespace_lower",
    "bounds_for",
]

_EVAL_EPS = 1e-14


@dataclass(frozen=True)
class DomainSpec:
    """A ball, an interval, or the whole space with a truncation half-width.

    Bounded domains carry their measure and inradius; for a ball of radius R
    in R^N these are omega_N R^N and R exactly.
    """

    kind: str                      # "ball" | "interval" | "whole_space"
    dim: int
    measure: Optional[float] = None
    inradius: Optional[float] = None
    radius: Optional[float] = None
    a: Optional[float] = None
    b: Optional[float] = None
    truncation: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("ball", "interval", "whole_space"):
            raise DomainError(f"unknown domain kind {self.kind!r}")
        if self.kind == "whole_space":
            if not (self.truncation and self.truncation > 0):
                raise DomainError("whole_space needs a positive truncation half-width")
            return
        if not (self.measure and self.measure > 0 and self.inradius and self.inradius > 0):
            raise DomainError("bounded domains need positive measure and inradius")
        cap = (self.measure / unit_ball_volume(self.dim)) ** (1.0 / self.dim)
        if self.inradius > cap * (1 + 1e-12):
            raise DomainError(
                f"inradius {self.inradius} exceeds the ball value {cap} at this measure")

    @staticmethod
    def ball(radius: float, N: int) -> "DomainSpec":
        if radius <= 0:
            raise DomainError("ball radius must be positive")
        return DomainSpec(kind="ball", dim=N, radius=radius,
                          measure=unit_ball_volume(N) * radius ** N,
                          inradius=radius)

    @staticmethod
    def interval(a: float, b: float) -> "DomainSpec":
        if not a < b:
            raise DomainError(f"interval requires a < b, got ({a}, {b})")
        return DomainSpec(kind="interval", dim=1, a=a, b=b,
                          measure=b - a, inradius=(b - a) / 2.0)

    @staticmethod
    def whole_space(truncation: float = 200.0) -> "DomainSpec":
        return DomainSpec(kind="whole_space", dim=1, truncation=truncation)

    @property
    def bounded(self) -> bool:
        return self.kind != "whole_space"


@dataclass(frozen=True)
class BoundPair:
    """A lower/upper bracket around one embedding constant."""

    lower: ConstantValue
    upper: ConstantValue
    params: Params
    domain: DomainSpec

    def __post_init__(self):
        if self.lower.value > self.upper.value * (1 + 1e-12):
            raise DomainError(
                f"lower bound {self.lower.value} exceeds upper bound {self.upper.value}")


def _inv_gap(q: float, q_crit: float) -> float:
    """1/q - 1/q_crit as a fused expression (cancellation-safe near q_crit)."""
    return (q_crit - q) / (q * q_crit)


def _powz(base: float, expo: float) -> float:
    """base**expo with the quadrature-limit convention 0**0 = 1."""
    if expo == 0.0:
        return 1.0
    return base ** expo


def dilation_transfer(S: float, lam: float, params: Params) -> float:
    """Rescale a constant under the dilation group: the constant on Omega in
    terms of the constant on lambda*Omega."""
    if not lam > 0.0:
        raise DomainError(f"dilation factor must be positive, got {lam}")
    if not S > 0.0:
        raise DomainError(f"constant must be positive, got {S}")
    N, s, p, q = params.N, params.s, params.p, params.q
    if N > p * s:
        expo = N * p * _inv_gap(q, params.critical_exponent) * (-1.0)
        # N p (1/p_s^* - 1/q) = -N p (1/q - 1/p_s^*)
        return lam ** expo * S
    if N == p * s:
        return lam ** (-N * p / q) * S
    raise RegimeError(f"dilation transfer undefined for N < ps (N={N}, s={s}, p={p})")


def young_lower(lambda_exp: float, S_crit: float) -> tuple[float, float]:
    """Weights (epsilon, rho) of the Young-interpolation split
    ||u||_q^p <= rho (||u||_p^p + S ||u||_crit^p); 1/rho is the generic
    whole-space lower-bound factor."""
    if not 0.0 < lambda_exp < 1.0:
        raise DomainError(f"interpolation weight must lie in (0,1), got {lambda_exp}")
    if not S_crit > 0.0:
        raise DomainError("critical constant must be positive")
    lam = lambda_exp
    eps = (lam * S_crit / (1.0 - lam)) ** (lam * (lam - 1.0))
    rho = lam ** lam * (S_crit / (1.0 - lam)) ** (lam - 1.0)
    return eps, rho


def _require(params: Params, regime: Regime, allow_critical: bool = False) -> None:
    r = params.regime()
    if r is regime:
        return
    if allow_critical and r is Regime.OUT_OF_SCOPE:
        # exactly-critical q is admitted as a limit accessor
        try:
            crit = params.critical_exponent
        except DomainError:
            raise RegimeError(f"params {params} outside the {regime.value} regime")
        ok_p = (regime is Regime.BORDERLINE and params.p == 1) or \
               (regime is Regime.HILBERT and params.p == 2 and params.N > 2 * params.s)
        if ok_p and params.q == crit:
            return
    raise RegimeError(f"params {params} outside the {regime.value} regime")


# ---------------------------------------------------------------------------
# borderline case p = 1

def borderline_domain_bounds(params: Params, domain: DomainSpec) -> BoundPair:
    """p=1 bounds on a bounded domain; they coincide when the domain is a
    ball, where the constant is attained by a characteristic function."""
    _require(params, Regime.BORDERLINE, allow_critical=True)
    if not domain.bounded:
        raise RegimeError("borderline_domain_bounds needs a bounded domain")
    if domain.dim != params.N:
        raise DomainError(f"domain dimension {domain.dim} != N={params.N}")
    S = frac_isoperimetric(params.N, params.s)
    e = _inv_gap(params.critical_exponent, params.q)  # 1/crit - 1/q <= 0
    ball_measure = unit_ball_volume(params.N) * domain.inradius ** params.N
    lo = S.value * _powz(domain.measure, e)
    up = S.value * _powz(ball_measure, e)
    rel = S.error_estimate / S.value
    return BoundPair(
        ConstantValue(lo, ConstantKind.BOUND_LOWER, "borderline-domain-lower",
                      error_estimate=rel * lo + _EVAL_EPS),
        ConstantValue(up, ConstantKind.BOUND_UPPER, "borderline-domain-upper",
                      error_estimate=rel * up + _EVAL_EPS),
        params, domain)


def borderline_wholespace_bounds(params: Params, domain: DomainSpec | None = None
                                 ) -> BoundPair:
    """p=1 whole-space bounds.  q=1 gives exactly 1; for 1 < q < crit the
    interpolation lower bound and the char-ball upper bound are evaluated
    independently (they agree analytically, pinning the constant)."""
    _require(params, Regime.BORDERLINE, allow_critical=True)
    if domain is None:
        domain = DomainSpec.whole_space()
    if domain.bounded:
        raise RegimeError("borderline_wholespace_bounds needs the whole space")
    N, s, q = params.N, params.s, params.q
    if q == 1.0:
        one_lo = ConstantValue(1.0, ConstantKind.BOUND_LOWER, "borderline-rn-q1",
                               error_estimate=_EVAL_EPS)
        one_up = ConstantValue(1.0, ConstantKind.BOUND_UPPER, "borderline-rn-q1",
                               error_estimate=_EVAL_EPS)
        return BoundPair(one_lo, one_up, params, domain)
    crit = params.critical_exponent
    S = frac_isoperimetric(N, s)
    gap = _inv_gap(q, crit)          # 1/q - 1/crit > 0
    gap1 = 1.0 - 1.0 / q
    lo = (_powz(N / s * gap, -N / s * gap)
          * _powz(N / s * gap1, -N / s * gap1)
          * _powz(S.value, N / s * gap1))
    up = (s / N * _powz(gap, -N / s * gap)
          * _powz(gap1, -N / s * gap1)
          * _powz(S.value, N / s * gap1))
    rel = (N / s * gap1) * S.error_estimate / S.value
    return BoundPair(
        ConstantValue(lo, ConstantKind.BOUND_LOWER, "borderline-rn-lower",
                      error_estimate=abs(rel) * lo + _EVAL_EPS),
        ConstantValue(up, ConstantKind.BOUND_UPPER, "borderline-rn-upper",
                      error_estimate=abs(rel) * up + _EVAL_EPS),
        params, domain)


# ---------------------------------------------------------------------------
# Hilbert case p = 2, N > 2s

def hilbert_domain_bounds(params: Params, domain: DomainSpec) -> BoundPair:
    """p=2 bounds on a bounded domain: Hoelder lower bound against the
    critical constant, bump-profile upper bound through the inradius."""
    _require(params, Regime.HILBERT, allow_critical=True)
    if not domain.bounded:
        raise RegimeError("hilbert_domain_bounds needs a bounded domain")
    if domain.dim != params.N:
        raise DomainError(f"domain dimension {domain.dim} != N={params.N}")
    N, s, q = params.N, params.s, params.q
    crit = params.critical_exponent
    Ss = frac_sobolev_hilbert(N, s).value
    w = unit_ball_volume(N)
    lo = Ss * _powz(domain.measure, 2.0 * _inv_gap(crit, q))
    up = (2.0 ** (2.0 * s + 2.0 / q) * (w * N) ** (1.0 - 2.0 / q) / (N + 2.0 * s)
          * gamma_fn(s + 1.0) ** 2 * beta_fn(N / 2.0, q * s + 1.0) ** (-2.0 / q)
          * _powz(domain.inradius, 2.0 * N * _inv_gap(crit, q)))
    return BoundPair(
        ConstantValue(lo, ConstantKind.BOUND_LOWER, "hilbert-domain-lower",
                      error_estimate=_EVAL_EPS * lo),
        ConstantValue(up, ConstantKind.BOUND_UPPER, "hilbert-domain-upper",
                      error_estimate=_EVAL_EPS * up),
        params, domain)


def hilbert_wholespace_bounds(params: Params, domain: DomainSpec | None = None
                              ) -> BoundPair:
    """p=2 whole-space bounds for 2 <= q < crit: q=2 is exactly 1; otherwise
    the Young-interpolation lower bound and the bump-family upper bound."""
    _require(params, Regime.HILBERT, allow_critical=True)
    if domain is None:
        domain = DomainSpec.whole_space()
    if domain.bounded:
        raise RegimeError("hilbert_wholespace_bounds needs the whole space")
    N, s, q = params.N, params.s, params.q
    if q < 2.0:
        raise RegimeError(f"whole-space bounds need q >= 2, got q={q}")
    if q == 2.0:
        return BoundPair(
            ConstantValue(1.0, ConstantKind.BOUND_LOWER, "hilbert-rn-q2",
                          error_estimate=_EVAL_EPS),
            ConstantValue(1.0, ConstantKind.BOUND_UPPER, "hilbert-rn-q2",
                          error_estimate=_EVAL_EPS),
            params, domain)
    crit = params.critical_exponent
    Ss = frac_sobolev_hilbert(N, s).value
    gap = _inv_gap(q, crit)            # 1/q - 1/crit
    gap2 = _inv_gap(q, 2.0) * (-1.0)   # 1/2 - 1/q
    lo = (_powz(N / s * gap, -N / s * gap)
          * _powz(N / s * gap2, -N / s * gap2)
          * _powz(Ss, N / s * gap2))
    if q == crit:
        # at criticality both bounds collapse onto the critical constant
        return BoundPair(
            ConstantValue(Ss, ConstantKind.BOUND_LOWER, "hilbert-rn-lower",
                          error_estimate=_EVAL_EPS * Ss),
            ConstantValue(Ss, ConstantKind.BOUND_UPPER, "hilbert-rn-upper",
                          error_estimate=_EVAL_EPS * Ss),
            params, domain)
    w = unit_ball_volume(N)
    up = (w ** (1.0 - 2.0 / q) * s
          * ((2.0 ** (2.0 * s + 1.0 - 2.0 * s / N) * gamma_fn(s + 1.0) ** 2)
             / ((N + 2.0 * s) * gap2)) ** (N / s * gap2)
          * (N * beta_fn(N / 2.0, q * s + 1.0)) ** (-2.0 / q)
          * _powz(beta_fn(N / 2.0, 2.0 * s + 1.0) / gap, N / s * gap))
    return BoundPair(
        ConstantValue(lo, ConstantKind.BOUND_LOWER, "hilbert-rn-lower",
                      error_estimate=_EVAL_EPS * lo),
        ConstantValue(up, ConstantKind.BOUND_UPPER, "hilbert-rn-upper",
                      error_estimate=_EVAL_EPS * up),
        params, domain)


# ---------------------------------------------------------------------------
# limiting case s = 1/2, p = 2, N = 1

def limiting_domain_upper(q: float, R_omega: float) -> ConstantValue:
    """Truncated-log upper bound 2^(1-2/q) pi e / q * R^(-2/q), q >= 1."""
    if not q >= 1.0:
        raise DomainError(f"q must be >= 1, got {q}")
    if not R_omega > 0.0:
        raise DomainError(f"inradius must be positive, got {R_omega}")
    val = 2.0 ** (1.0 - 2.0 / q) * math.pi * math.e / q * R_omega ** (-2.0 / q)
    return ConstantValue(val, ConstantKind.BOUND_UPPER, "limiting-domain-upper",
                         error_estimate=_EVAL_EPS * val)


def limiting_domain_lower(q: float, measure: float, C1: float = 1.0) -> ConstantValue:
    """Exponential-integrability lower bound
    C1^(-2/q) pi Gamma(q/2+1)^(-2/q) |Omega|^(-2/q).

    C1 is the domain Trudinger-Moser constant, supplied by the caller (the
    literature provides existence, not a numeric value); defaults to 1."""
    if not q >= 1.0:
        raise DomainError(f"q must be >= 1, got {q}")
    if not (measure > 0.0 and C1 > 0.0):
        raise DomainError("measure and C1 must be positive")
    val = (C1 ** (-2.0 / q) * math.pi
           * math.exp(-(2.0 / q) * ln_gamma(q / 2.0 + 1.0))
           * measure ** (-2.0 / q))
    return ConstantValue(val, ConstantKind.BOUND_LOWER, "limiting-domain-lower",
                         error_estimate=_EVAL_EPS * val)


def limiting_wholespace_upper(q: float) -> ConstantValue:
    """Truncated-log whole-space upper bound
    2^(1-4/q) pi^(1-2/q) q (q-2)^(4/q-2) e^((q-2)/q), q > 2."""
    if not q > 2.0:
        raise DomainError(f"q must be > 2 (use limiting_wholespace_q2 at q=2), got {q}")
    val = (2.0 ** (1.0 - 4.0 / q) * math.pi ** (1.0 - 2.0 / q) * q
           * (q - 2.0) ** (4.0 / q - 2.0) * math.exp((q - 2.0) / q))
    return ConstantValue(val, ConstantKind.BOUND_UPPER, "limiting-rn-upper",
                         error_estimate=_EVAL_EPS * val)


def limiting_wholespace_q2() -> ConstantValue:
    """The exact whole-space constant at q = 2: the spreading family of
    truncated logs drives the quotient to 1."""
    return ConstantValue(1.0, ConstantKind.CLOSED_FORM, "limiting-rn-q2")


def limiting_wholespace_lower(q: float, C2: float = 1.0) -> ConstantValue:
    """Whole-space lower bound
    [(C2+2) pi^(-q/2) Gamma(q/2+1) + 2^(2-q/2)/(q-2)]^(-2/q), q > 2.

    C2 is the whole-space Trudinger-Moser constant (caller supplied,
    default 1)."""
    if not q > 2.0:
        raise DomainError(f"q must be > 2, got {q}")
    if C2 < 0.0:
        raise DomainError("C2 must be nonnegative")
    # log-space evaluation keeps Gamma(q/2+1) usable at large q
    t1 = math.log(C2 + 2.0) - (q / 2.0) * math.log(math.pi) + ln_gamma(q / 2.0 + 1.0)
    t2 = (2.0 - q / 2.0) * math.log(2.0) - math.log(q - 2.0)
    m = max(t1, t2)
    val = math.exp(-(2.0 / q) * (m + math.log(math.exp(t1 - m) + math.exp(t2 - m))))
    return ConstantValue(val, ConstantKind.BOUND_LOWER, "limiting-rn-lower",
                         error_estimate=_EVAL_EPS * val)


def bounds_for(params: Params, domain: DomainSpec, C1: float = 1.0, C2: float = 1.0
               ) -> BoundPair:
    """Dispatch to the bound pair matching the parameter regime and domain."""
    regime = params.regime()
    if regime is Regime.BORDERLINE:
        if domain.bounded:
            return borderline_domain_bounds(params, domain)
        return borderline_wholespace_bounds(params, domain)
    if regime is Regime.HILBERT:
        if domain.bounded:
            return hilbert_domain_bounds(params, domain)
        return hilbert_wholespace_bounds(params, domain)
    if regime is Regime.LIMITING:
        q = params.q
        if domain.bounded:
            lo = limiting_domain_lower(q, domain.measure, C1)
            up = limiting_domain_upper(q, domain.inradius)
            return BoundPair(lo, up, params, domain)
        if q == 2.0:
            one = limiting_wholespace_q2()
            lo = ConstantValue(1.0, ConstantKind.BOUND_LOWER, "limiting-rn-q2",
                               error_estimate=_EVAL_EPS)
            up = ConstantValue(1.0, ConstantKind.BOUND_UPPER, "limiting-rn-q2",
                               error_estimate=_EVAL_EPS)
            return BoundPair(lo, up, params, domain)
        if q < 2.0:
            raise RegimeError("limiting whole-space bounds need q >= 2")
        lo = limiting_wholespace_lower(q, C2)
        up = limiting_wholespace_upper(q)
        return BoundPair(lo, up, params, domain)
    raise RegimeError(f"no bounds available: params {params} out of scope")
