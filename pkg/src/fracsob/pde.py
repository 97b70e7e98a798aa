"""Existence/nonexistence threshold constants built from embedding constants,
a desk-scale constrained ground-state solver, and the coupled-system
nonexistence diagnostic.

All threshold formulas take the embedding constant S as an input, so that a
certified lower bound for S propagates to a certified threshold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .constants import classical_sobolev, frac_sobolev_hilbert
from .errors import ConvergenceError, DomainError, GridError, RegimeError
from .grids import Field, Grid

__all__ = [
    "ThresholdReport",
    "ps_level",
    "existence_thresholds",
    "growth_coefficient",
    "nonlinearity_threshold",
    "coupling_alpha",
    "coupling_lambda_interval",
    "pohozaev_defect",
    "check_weight_hypotheses",
    "check_potential_hypotheses",
    "GroundStateReport",
    "ground_state_solve",
]


@dataclass(frozen=True)
class ThresholdReport:
    """Threshold constants at one parameter point (entries inapplicable to
    the regime are None)."""

    c_star: float
    h_norm_threshold: float
    lq_norm_threshold: float
    f3_coeff: Optional[float] = None
    alpha: Optional[float] = None
    lambda_lower: Optional[float] = None


def ps_level(s: float, q: float, S: float) -> float:
    """First non-compactness energy level (1/2 - 1/q) S^(q/(q-2)).

    Monotone in S, so evaluating at a lower bound for S gives a certified
    lower estimate of the true level.
    """
    if not q > 2.0:
        raise DomainError(f"q must be > 2, got {q}")
    if not S > 0.0:
        raise DomainError(f"S must be positive, got {S}")
    return (0.5 - 1.0 / q) * S ** (q / (q - 2.0))


def existence_thresholds(q: float, S: float) -> tuple[float, float]:
    """Norm thresholds satisfied by the constructed positive solution:
    ||u||_{H^s}^2 < S^(q/(q-2)) and ||u||_{L^q} < S^(1/(q-2))."""
    if not q > 2.0:
        raise DomainError(f"q must be > 2, got {q}")
    if not S > 0.0:
        raise DomainError(f"S must be positive, got {S}")
    return S ** (q / (q - 2.0)), S ** (1.0 / (q - 2.0))


def growth_coefficient(q: float, S: float) -> float:
    """Coefficient (q/2) S^(q/2) of the power growth condition
    f(t) >= (q/2) S^(q/2) |t|^(q-2) t in the limiting-case scalar field
    equation; evaluating at an upper bound for S is conservative."""
    if not q > 2.0:
        raise DomainError(f"q must be > 2, got {q}")
    if not S > 0.0:
        raise DomainError(f"S must be positive, got {S}")
    return q / 2.0 * S ** (q / 2.0)


def nonlinearity_threshold(N: int, s: float, q: float, S: float,
                           S_crit: float | None = None) -> float:
    """Lower threshold for the coefficient lambda in f(t) >= lambda t^(q-1)
    guaranteeing a ground state of the scalar field equation.

    Branch N >= 2 (0 < s < 1, N > 2s) uses the critical constant S_crit
    (default: the sharp H^s constant); branch N = 1, s = 1/2 is
    ((q-2)/q)^((q-2)/2) S^(q/2).
    """
    if not q > 2.0:
        raise DomainError(f"q must be > 2, got {q}")
    if not S > 0.0:
        raise DomainError(f"S must be positive, got {S}")
    if N == 1 and s == 0.5:
        return ((q - 2.0) / q) ** ((q - 2.0) / 2.0) * S ** (q / 2.0)
    if N >= 2 and 0.0 < s < 1.0 and N > 2 * s:
        if S_crit is None:
            S_crit = frac_sobolev_hilbert(N, s).value
        sig = N / (2.0 * s)
        bracket = (N ** sig * (q - 2.0)
                   / (2.0 * s * q * S_crit ** sig * (N - 2.0 * s) ** (sig - 1.0)))
        return bracket ** ((q - 2.0) / 2.0) * S ** (q / 2.0)
    raise RegimeError(
        f"nonlinearity threshold needs N>=2 with N>2s, or (N,s)=(1,1/2); got N={N}, s={s}")


def coupling_alpha(N: int, s: float, q: float, S: float) -> float:
    """The fraction alpha_s controlling ground-state existence of the
    coupled system at upper-critical q:

        alpha_s = [ S_crit^(N/2s) / ((N/s)(1/2-1/q) S^(q/(q-2))) ]^(1/(q/(q-2)-N/2s)).

    s = 1 evaluates the classical variant with the first-order critical
    constant.  Raises at q/(q-2) = N/(2s) exactly (the critical q), where
    the exponent is singular.
    """
    if not q > 2.0:
        raise DomainError(f"q must be > 2, got {q}")
    if not S > 0.0:
        raise DomainError(f"S must be positive, got {S}")
    if s == 1.0:
        if N <= 2:
            raise RegimeError("classical variant needs N >= 3")
        crit_const = classical_sobolev(N, 2.0).value
    else:
        if not (0.0 < s < 1.0 and N > 2 * s):
            raise RegimeError(f"coupling_alpha needs N > 2s, got N={N}, s={s}")
        crit_const = frac_sobolev_hilbert(N, s).value
    sig = N / (2.0 * s)
    expo_den = q / (q - 2.0) - sig
    if expo_den == 0.0:
        raise DomainError(
            "q/(q-2) equals N/(2s): alpha is singular at the critical exponent")
    base = crit_const ** sig / ((N / s) * (0.5 - 1.0 / q) * S ** (q / (q - 2.0)))
    return base ** (1.0 / expo_den)


def coupling_lambda_interval(alpha: float) -> tuple[float, float]:
    """Interval [sqrt(1-alpha), 1) containing the coupling threshold."""
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0,1), got {alpha}")
    return math.sqrt(1.0 - alpha), 1.0


def pohozaev_defect(u: Field, v: Field, lam: float) -> float:
    """int u^2 + int v^2 - 2 lambda int uv.

    For lambda in (0,1) this is bounded below by (1-lambda)(int u^2 + int v^2)
    and vanishes only at u = v = 0: the algebraic core of the nonexistence
    argument at critical coupling.
    """
    if not 0.0 < lam <= 1.0:
        raise DomainError(f"lambda must lie in (0,1], got {lam}")
    u.same_grid(v)
    h = u.grid.spacing
    return h * float(np.sum(u.values ** 2) + np.sum(v.values ** 2)
                     - 2.0 * lam * np.sum(u.values * v.values))


# ---------------------------------------------------------------------------
# hypothesis validation for the weight Q and potential V


def check_weight_hypotheses(Q: Field, tol: float = 1e-12) -> None:
    """Validate the weight hypotheses on the grid samples: Q >= 1, Q not
    identically 1, Q -> 1 toward the truncation boundary."""
    v = Q.values
    if np.min(v) < 1.0 - tol:
        raise DomainError("weight must satisfy Q >= 1")
    if np.max(np.abs(v - 1.0)) <= tol:
        raise DomainError("weight must not be identically 1")
    edge = np.abs(Q.grid.x) >= 0.95 * Q.grid.half_width
    if np.max(np.abs(v[edge] - 1.0)) > 1e-3:
        raise DomainError("weight must approach 1 at infinity (check the box size)")


def check_potential_hypotheses(V: Field, tol: float = 1e-12) -> None:
    """Validate the potential hypotheses: 0 < V <= 1, V not identically 1,
    V -> 1 toward the truncation boundary."""
    v = V.values
    if np.min(v) <= 0.0:
        raise DomainError("potential must be strictly positive")
    if np.max(v) > 1.0 + tol:
        raise DomainError("potential must satisfy V <= 1")
    if np.max(np.abs(v - 1.0)) <= tol:
        raise DomainError("potential must not be identically 1")
    edge = np.abs(V.grid.x) >= 0.95 * V.grid.half_width
    if np.max(np.abs(v[edge] - 1.0)) > 1e-3:
        raise DomainError("potential must approach 1 at infinity (check the box size)")


# ---------------------------------------------------------------------------
# constrained ground-state solver


@dataclass
class GroundStateReport:
    I0: float
    iterations: int
    converged: bool
    energy_trace: np.ndarray
    residual: float
    residual_rel: float
    residual_ok: bool
    h_norm_sq: float
    lq_norm: float
    h_threshold: Optional[float] = None
    lq_threshold: Optional[float] = None


def ground_state_solve(grid: Grid, s: float, q: float, V: Field, Q: Field,
                       max_iters: int = 50000, tol: float = 1e-13,
                       S_reference: float | None = None,
                       u0: Optional[np.ndarray] = None
                       ) -> tuple[Field, float, GroundStateReport]:
    """Minimize I(u) = 1/2 (||(-Lap)^(s/2)u||^2 + int V u^2) over the
    weighted sphere int Q |u|^q = 1 and rescale the minimizer to a positive
    solution of (-Lap)^s u + V u = Q |u|^(q-2) u.

    Works on the scale-invariant quotient I(u) / (int Q|u|^q)^(2/q), which
    has the same minimizers; descent is projected gradient (positivity)
    with a Barzilai-Borwein step and monotone backtracking.  Returns
    (u0, I0, report) with u0 = (2 I0)^(1/(q-2)) u.
    """
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie in (0,1), got {s}")
    if not q > 2.0:
        raise DomainError(f"q must be > 2, got {q}")
    V.same_grid(Q)
    if V.grid != grid:
        raise GridError("V and Q must live on the solver grid")
    if np.min(V.values) <= 0.0 or np.min(Q.values) <= 0.0:
        raise DomainError("V and Q must be positive fields")

    h = grid.spacing
    # |2 pi xi|^(2s) is both the quadratic form of ||(-Lap)^(s/2) u||^2 and
    # the symbol of (-Lap)^s in the residual
    mult = grid.multiplier(s)
    Vv, Qv = V.values, Q.values

    def frac_op(u: np.ndarray) -> np.ndarray:
        return np.fft.ifft(mult * np.fft.fft(u)).real

    def weighted_lq(u: np.ndarray) -> float:
        return float(h * np.sum(Qv * np.abs(u) ** q))

    def quotient_grad(u: np.ndarray):
        # J(u) = I(u) / G(u)^(2/q), scale invariant; J = I on the sphere G = 1
        Au = frac_op(u)
        I = 0.5 * h * float(u @ Au + np.sum(Vv * u * u))
        G = weighted_lq(u)
        g2q = G ** (2.0 / q)
        J = I / g2q
        gI = h * (Au + Vv * u)
        gG = h * q * Qv * np.abs(u) ** (q - 2.0) * u
        gJ = (gI - J * (2.0 / q) * G ** (2.0 / q - 1.0) * gG) / g2q
        return J, gJ

    if u0 is None:
        u = np.exp(-grid.x ** 2)
    else:
        u = np.asarray(u0, dtype=float).copy()
        if not np.any(u != 0.0):
            raise DomainError("initial field must be nonzero")
    u = np.abs(u)
    G0 = weighted_lq(u)
    if not G0 > 1e-300:
        raise ConvergenceError("degenerate initial field")
    u = u / G0 ** (1.0 / q)

    J, gJ = quotient_grad(u)
    trace = [J]
    tau_floor = 1.0 / float(mult.max() + np.max(Vv))
    u_prev = g_prev = None
    converged = False
    for _ in range(max_iters):
        if u_prev is not None:
            du, dg = u - u_prev, gJ - g_prev
            den = float(du @ dg)
            tau = float(du @ du) / den if den > 0 else 4.0 * tau_floor
            tau = min(max(tau, tau_floor), 1e8)
        else:
            tau = tau_floor
        accepted = False
        for _bt in range(80):
            v = np.abs(u - tau * gJ)
            Gv = weighted_lq(v)
            if not Gv > 1e-300:
                tau *= 0.5
                continue
            v = v / Gv ** (1.0 / q)
            Jv, gJv = quotient_grad(v)
            if Jv <= J:
                accepted = True
                break
            tau *= 0.5
        if not accepted:
            converged = True
            break
        rel = (J - Jv) / max(abs(J), 1e-300)
        u_prev, g_prev = u, gJ
        u, J, gJ = v, Jv, gJv
        trace.append(J)
        if rel < tol:
            converged = True
            break

    I0 = J  # u is normalized, so the quotient value is the constrained minimum
    u0_vals = (2.0 * I0) ** (1.0 / (q - 2.0)) * u
    Au0 = frac_op(u0_vals)
    nonlin = Qv * np.abs(u0_vals) ** (q - 2.0) * u0_vals
    resid = Au0 + Vv * u0_vals - nonlin
    rnorm = math.sqrt(h * float(np.sum(resid ** 2)))
    scale = max(math.sqrt(h * float(np.sum(Au0 ** 2))),
                math.sqrt(h * float(np.sum((Vv * u0_vals) ** 2))),
                math.sqrt(h * float(np.sum(nonlin ** 2))))
    rel_res = rnorm / scale if scale > 0 else math.inf

    hs_sq = (h / grid.points
             * float(np.sum((mult + 1.0) * np.abs(np.fft.fft(u0_vals)) ** 2)))
    lqn = float((h * np.sum(np.abs(u0_vals) ** q)) ** (1.0 / q))
    report = GroundStateReport(
        I0=I0, iterations=len(trace) - 1, converged=converged,
        energy_trace=np.asarray(trace), residual=rnorm, residual_rel=rel_res,
        residual_ok=rel_res <= 1e-4,
        h_norm_sq=hs_sq, lq_norm=lqn)
    if S_reference is not None:
        hthr, lthr = existence_thresholds(q, S_reference)
        report.h_threshold = hthr
        report.lq_threshold = lthr
    return Field(grid, u0_vals), I0, report
