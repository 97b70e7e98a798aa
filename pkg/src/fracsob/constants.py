"""Exact embedding constants: closed forms and singular-quadrature values.

Every constant is returned as a `ConstantValue` carrying a provenance key
from `PROVENANCE_KEYS`, its evaluation kind and an error estimate.  The
parameter quadruple (N, s, p, q) with its regime classification lives here
as `Params`.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

from .errors import DomainError
from .specfun import QuadratureConfig, gamma_fn, integrate, ln_gamma

__all__ = [
    "Regime",
    "Params",
    "ConstantKind",
    "ConstantValue",
    "PROVENANCE_KEYS",
    "unit_ball_volume",
    "classical_sobolev",
    "isoperimetric",
    "frac_iso_kernel",
    "hardy_sobolev_A",
    "frac_isoperimetric",
    "lieb_constant",
    "norm_bridge",
    "frac_sobolev_hilbert",
    "mazya_lower",
    "lieb_loss_lower",
]

# roundoff allowance attached to closed formulas when they feed non-exact kinds
_EVAL_EPS = 1e-14

PROVENANCE_KEYS = frozenset({
    "aubin-talenti",
    "unit-ball-volume",
    "isoperimetric",
    "hardy-sobolev",
    "frac-isoperimetric",
    "lieb",
    "norm-bridge",
    "hilbert-sobolev",
    "mazya-lower",
    "lieb-loss-lower",
    "borderline-domain-lower",
    "borderline-domain-upper",
    "borderline-rn-lower",
    "borderline-rn-upper",
    "borderline-rn-q1",
    "hilbert-domain-lower",
    "hilbert-domain-upper",
    "hilbert-rn-lower",
    "hilbert-rn-upper",
    "hilbert-rn-q2",
    "limiting-domain-upper",
    "limiting-domain-lower",
    "limiting-rn-upper",
    "limiting-rn-lower",
    "limiting-rn-q2",
    "char-ball-exact",
    "rayleigh-numeric",
})


class Regime(enum.Enum):
    """Which family of bounds applies to a parameter quadruple."""

    BORDERLINE = "borderline"   # p = 1, 1 <= q < N/(N-s)
    HILBERT = "hilbert"         # p = 2, N > 2s, 1 <= q < 2N/(N-2s)
    LIMITING = "limiting"       # p = 2, N = 1, s = 1/2, q >= 1
    OUT_OF_SCOPE = "out-of-scope"


@dataclass(frozen=True)
class Params:
    """The quadruple (N, s, p, q) of an embedding constant."""

    N: int
    s: float
    p: float
    q: float

    def __post_init__(self):
        if not (isinstance(self.N, int) and self.N >= 1):
            raise DomainError(f"N must be an integer >= 1, got {self.N!r}")
        if not 0.0 < self.s < 1.0:
            raise DomainError(f"s must lie in (0,1), got {self.s}")
        if self.p not in (1, 2, 1.0, 2.0):
            raise DomainError(f"p must be 1 or 2, got {self.p}")
        if not self.q >= 1.0:
            raise DomainError(f"q must be >= 1, got {self.q}")

    @property
    def critical_exponent(self) -> float:
        """p_s^* = Np/(N - sp); defined only below the limiting line N = sp."""
        if not self.N > self.s * self.p:
            raise DomainError(
                f"critical exponent undefined: N={self.N} <= s*p={self.s * self.p}")
        return self.N * self.p / (self.N - self.s * self.p)

    def regime(self) -> Regime:
        if self.p == 1:
            if self.q < self.critical_exponent:
                return Regime.BORDERLINE
            return Regime.OUT_OF_SCOPE
        # p == 2
        if self.N == 1 and self.s == 0.5:
            return Regime.LIMITING
        if self.N > 2 * self.s and self.q < self.critical_exponent:
            return Regime.HILBERT
        return Regime.OUT_OF_SCOPE


class ConstantKind(enum.Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"
    BOUND_LOWER = "bound_lower"
    BOUND_UPPER = "bound_upper"
    NUMERIC_ESTIMATE = "numeric_estimate"


@dataclass(frozen=True)
class ConstantValue:
    """A positive real constant with provenance and an error estimate."""

    value: float
    kind: ConstantKind
    provenance: str
    error_estimate: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.value) and self.value > 0.0):
            raise DomainError(f"constant must be finite and positive, got {self.value}")
        if self.provenance not in PROVENANCE_KEYS:
            raise DomainError(f"unknown provenance key {self.provenance!r}")
        if self.error_estimate < 0.0:
            raise DomainError("error estimate must be nonnegative")
        if self.error_estimate == 0.0 and self.kind is not ConstantKind.CLOSED_FORM:
            raise DomainError("only closed-form constants may claim zero error")


def unit_ball_volume(N: int) -> float:
    """Volume of the unit ball in R^N: pi^(N/2)/Gamma(N/2+1)."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    return math.pi ** (N / 2.0) / gamma_fn(N / 2.0 + 1.0)


def classical_sobolev(N: int, p: float) -> ConstantValue:
    """Optimal constant of the critical first-order Sobolev inequality
    ||grad u||_p^p >= C ||u||_{Np/(N-p)}^p on R^N, for 1 < p < N."""
    if not (N >= 2 and 1.0 < p < N):
        raise DomainError(f"classical_sobolev requires 1 < p < N, got N={N}, p={p}")
    val = (math.pi ** (p / 2.0) * N * ((N - p) / (p - 1.0)) ** (p - 1.0)
           * math.exp((p / N) * (ln_gamma(N / p) + ln_gamma(1.0 + N - N / p)
                                 - ln_gamma(N / 2.0 + 1.0) - ln_gamma(float(N)))))
    return ConstantValue(val, ConstantKind.CLOSED_FORM, "aubin-talenti")


def isoperimetric(N: int) -> ConstantValue:
    """N * omega_N^(1/N), the sharp constant of the p=1 critical embedding."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    return ConstantValue(N * unit_ball_volume(N) ** (1.0 / N),
                         ConstantKind.CLOSED_FORM, "isoperimetric")


def _kernel_from_gap(N: int, s: float, gap):
    """frac_iso_kernel expressed through gap = 1 - r (arithmetic-stable form;
    gap may be a numpy array when N = 1)."""
    if N == 1:
        return gap ** (-1.0 - s) + (2.0 - gap) ** (-1.0 - s)
    import numpy as np

    gap = float(gap)  # the angular quadrature handles one radius at a time
    pref = (N - 1) * unit_ball_volume(N - 1)
    r = 1.0 - gap
    gap_sq = gap * gap

    def f(theta):
        dist_sq = gap_sq + 4.0 * r * np.sin(0.5 * theta) ** 2
        return np.sin(theta) ** (N - 2) * dist_sq ** (-(N + s) / 2.0)

    cfg = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-10, max_subdivisions=2000)
    val, _ = integrate(f, 0.0, math.pi, cfg)
    return pref * val


def frac_iso_kernel(N: int, s: float, r: float) -> float:
    """Angular kernel of the nonlocal perimeter of the unit ball.

    N = 1 has the closed form (1-r)^(-1-s) + (1+r)^(-1-s).  For N >= 2 the
    angular integral is taken in the polar angle, where the inverse-distance
    factor has the cancellation-free form (1-r)^2 + 4 r sin^2(theta/2); this
    absorbs the (1-t^2)^((N-3)/2) endpoint singularity of the t variable
    analytically (t = cos theta) and stays accurate arbitrarily close to
    r = 1, where the integrand peaks like (1-r)^(-1-s).
    """
    if not 0.0 <= r < 1.0:
        raise DomainError(f"kernel argument r must lie in [0,1), got {r}")
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie in (0,1), got {s}")
    return _kernel_from_gap(N, s, 1.0 - r)


@functools.lru_cache(maxsize=128)
def _hardy_A(N: int, s: float) -> tuple[float, float]:
    import numpy as np

    def f(r):
        return (r ** (s - 1.0) * -np.expm1((N - s) * np.log(r))
                * _kernel_from_gap(N, s, 1.0 - r))

    cfg_left = QuadratureConfig(abs_tol=1e-11, rel_tol=1e-10, max_subdivisions=600,
                                left_singularity_exponent=1.0 - s)
    v1, e1 = integrate(f, 0.0, 0.9, cfg_left)

    # right piece: the (1-r)^(-s) behavior is removed by r = 1 - t^(1/(1-s)),
    # applied by hand so the gap 1 - r = t^p stays exact in double precision
    p = 1.0 / (1.0 - s)

    def g(t):
        gap = t ** p
        r = 1.0 - gap
        return (r ** (s - 1.0) * -np.expm1((N - s) * np.log1p(-gap))
                * _kernel_from_gap(N, s, gap) * p * t ** (p - 1.0))

    cfg_right = QuadratureConfig(abs_tol=1e-11, rel_tol=1e-10, max_subdivisions=600)
    v2, e2 = integrate(g, 0.0, 0.1 ** (1.0 - s), cfg_right)
    return 2.0 * (v1 + v2), 2.0 * (e1 + e2) + _EVAL_EPS


def hardy_sobolev_A(N: int, s: float) -> ConstantValue:
    """Sharp constant A(N,s) of the fractional Hardy-Sobolev inequality,
    by singular quadrature of 2 int_0^1 r^(s-1)(1 - r^(N-s)) K(r) dr.

    Near r = 1 the integrand behaves like (1-r)^(-s); the quadrature is
    split at r = 0.9 so that the right-endpoint substitution acts only
    where that behavior is local.  Values are cached per (N, s).
    """
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie in (0,1), got {s}")
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    val, err = _hardy_A(int(N), float(s))
    return ConstantValue(val, ConstantKind.QUADRATURE, "hardy-sobolev",
                         error_estimate=err)


def frac_isoperimetric(N: int, s: float) -> ConstantValue:
    """omega_N^(s/N) * N/(N-s) * A(N,s): the sharp constant of the
    W^{s,1} -> L^{N/(N-s)} embedding, attained by balls."""
    A = hardy_sobolev_A(N, s)
    pref = unit_ball_volume(N) ** (s / N) * N / (N - s)
    return ConstantValue(pref * A.value, ConstantKind.QUADRATURE,
                         "frac-isoperimetric",
                         error_estimate=pref * A.error_estimate + _EVAL_EPS)


def lieb_constant(N: int, s: float) -> ConstantValue:
    """Sharp constant of the critical W^{s,2} embedding in the Gagliardo
    seminorm normalization (N > 2s)."""
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie in (0,1), got {s}")
    if not N > 2 * s:
        raise DomainError(f"lieb_constant requires N > 2s, got N={N}, s={s}")
    val = (2.0 * math.pi ** (N / 2.0 + s) / (s * (1.0 - s))
           * math.exp(ln_gamma(2.0 - s) - ln_gamma(N / 2.0 - s)
                      + (2.0 * s / N) * (ln_gamma(N / 2.0) - ln_gamma(float(N)))))
    return ConstantValue(val, ConstantKind.CLOSED_FORM, "lieb")


def norm_bridge(N: int, s: float) -> ConstantValue:
    """Factor B(N,s) converting between the Gagliardo seminorm squared and
    the half-Laplacian L^2 norm squared: [u]^2 = (2/B) ||(-Lap)^(s/2) u||^2."""
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie in (0,1), got {s}")
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    val = (2.0 ** (2.0 * s) * s / math.pi ** (N / 2.0)
           * math.exp(ln_gamma(N / 2.0 + s) - ln_gamma(1.0 - s)))
    return ConstantValue(val, ConstantKind.CLOSED_FORM, "norm-bridge")


def frac_sobolev_hilbert(N: int, s: float) -> ConstantValue:
    """Sharp constant of the critical H^s embedding, half-Laplacian
    normalization (N > 2s):
    2^(2s) pi^s [Gamma(N/2+s)/Gamma(N/2-s)] [Gamma(N/2)/Gamma(N)]^(2s/N)."""
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie in (0,1), got {s}")
    if not N > 2 * s:
        raise DomainError(f"frac_sobolev_hilbert requires N > 2s, got N={N}, s={s}")
    val = (2.0 ** (2.0 * s) * math.pi ** s
           * math.exp(ln_gamma(N / 2.0 + s) - ln_gamma(N / 2.0 - s)
                      + (2.0 * s / N) * (ln_gamma(N / 2.0) - ln_gamma(float(N)))))
    return ConstantValue(val, ConstantKind.CLOSED_FORM, "hilbert-sobolev")


def mazya_lower(N: int, s: float, p: float) -> ConstantValue:
    """Maz'ya-Shaposhnikova lower bound for the critical W^{s,p} constant,
    valid for N > sp.  Assumed to refer to the Gagliardo-seminorm quotient."""
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie in (0,1), got {s}")
    if not (p >= 1.0 and N > s * p):
        raise DomainError(f"mazya_lower requires p >= 1 and N > sp, got N={N}, s={s}, p={p}")
    val = (unit_ball_volume(N) * N * (N - s * p) ** (p - 1.0)
           / (2.0 ** ((N + 1.0) * (N + 2.0)) * s * (1.0 - s)
              * p ** (p + 2.0) * (N + 2.0 * p) ** (3.0 * p)))
    return ConstantValue(val, ConstantKind.BOUND_LOWER, "mazya-lower",
                         error_estimate=_EVAL_EPS * val)


def lieb_loss_lower(q: float) -> ConstantValue:
    """Lieb-Loss lower bound for the limiting-case whole-space constant:
    (q-1)^(1-1/q) [q(q-2)/(2 pi)]^(2/q-1), q > 2."""
    if not q > 2.0:
        raise DomainError(f"lieb_loss_lower requires q > 2, got {q}")
    val = ((q - 1.0) ** (1.0 - 1.0 / q)
           * (q * (q - 2.0) / (2.0 * math.pi)) ** (2.0 / q - 1.0))
    return ConstantValue(val, ConstantKind.BOUND_LOWER, "lieb-loss-lower",
                         error_estimate=_EVAL_EPS * val)
