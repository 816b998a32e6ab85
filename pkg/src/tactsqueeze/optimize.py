"""Deterministic scalar and 2-D maximizers for the protocol optima.

Golden-section search with a coarse-grid pre-scan; stationarity
residuals of the known objectives are checked post-hoc, never used as
the solver.  Plateau ties break toward the smallest argmax.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .analytic import snr_squeeze_then_measure
from .errors import DomainError, NonFiniteObjectiveError

__all__ = [
    "OptimizationOutcome",
    "maximize_scalar", "grid_then_golden",
    "optimal_theta", "optimal_u", "optimal_split_full",
    "squeeze_gain",
]

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OptimizationOutcome:
    argmax: float | tuple[float, float]
    value: float
    at_boundary: bool
    iterations: int
    bracket: tuple[float, float]
    diagnostics: dict | None = None


def _eval(f: Callable[[float], float], x: float) -> float:
    y = f(x)
    if not math.isfinite(y):
        raise NonFiniteObjectiveError(f"objective non-finite at x = {x}", abscissa=x)
    return y


def maximize_scalar(objective: Callable[[float], float], lo: float, hi: float,
                    tol: float = 1e-10) -> OptimizationOutcome:
    """Golden-section maximization on [lo, hi]; assumes unimodality.

    Ties keep the left subinterval, so plateaus resolve to the smallest
    argmax (a constant objective reports the boundary at lo).
    """
    if not lo < hi:
        raise ValueError("requires lo < hi")
    if tol <= 0:
        raise ValueError("tol must be positive")
    a, b = lo, hi
    c = b - _INV_GOLDEN * (b - a)
    d = a + _INV_GOLDEN * (b - a)
    fc, fd = _eval(objective, c), _eval(objective, d)
    iterations = 0
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_GOLDEN * (b - a)
            fc = _eval(objective, c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_GOLDEN * (b - a)
            fd = _eval(objective, d)
        iterations += 1
    x = (a + b) / 2.0
    fx = _eval(objective, x)
    # fold in the original endpoints so boundary optima are never missed
    for cand, fcand in ((lo, _eval(objective, lo)), (hi, _eval(objective, hi))):
        if fcand > fx:
            x, fx = cand, fcand
    edge = max(tol, 4.0 * tol)
    at_boundary = x - lo <= edge or hi - x <= edge
    return OptimizationOutcome(argmax=x, value=fx, at_boundary=at_boundary,
                               iterations=iterations, bracket=(lo, hi))


def grid_then_golden(objective: Callable[[float], float], lo: float, hi: float,
                     n_grid: int = 512, tol: float = 1e-10) -> OptimizationOutcome:
    """Coarse grid scan, then golden refinement around the best cell.

    Robust for objectives that are not globally unimodal.
    """
    xs = np.linspace(lo, hi, n_grid)
    ys = [_eval(objective, float(x)) for x in xs]
    best = int(np.argmax(ys))  # argmax picks the first (smallest) on ties
    a = float(xs[max(0, best - 1)])
    b = float(xs[min(n_grid - 1, best + 1)])
    inner = maximize_scalar(objective, a, b, tol)
    at_boundary = (abs(inner.argmax - lo) <= max(tol, 4.0 * tol)
                   or abs(inner.argmax - hi) <= max(tol, 4.0 * tol))
    return OptimizationOutcome(argmax=inner.argmax, value=inner.value,
                               at_boundary=at_boundary,
                               iterations=inner.iterations + n_grid,
                               bracket=(lo, hi))


def squeeze_gain(theta: float, alpha: float) -> float:
    """g(Theta) = Theta (alpha e^{-Theta} - 1); xi^2 = e^{-g}/P."""
    return theta * (alpha * math.exp(-theta) - 1.0)


def _gain_slope(theta: float, alpha: float) -> float:
    return alpha * math.exp(-theta) * (1.0 - theta) - 1.0


def optimal_theta(alpha: float | None, polarization_p: float,
                  theta_hi: float = 10.0) -> OptimizationOutcome:
    """Maximize the squeezing gain g(Theta) over [0, theta_hi].

    Boundary Theta* = 0 iff alpha <= 1 (sign of g'(0) = alpha - 1); an
    interior optimum satisfies alpha e^{-Theta}(1 - Theta) = 1, checked
    to residual 1e-8 after refinement.
    """
    if alpha is None or math.isinf(alpha):
        raise DomainError("noiseless case (alpha infinite) has no interior optimum")
    if alpha <= 1.0:
        return OptimizationOutcome(argmax=0.0, value=0.0, at_boundary=True,
                                   iterations=0, bracket=(0.0, theta_hi))
    out = grid_then_golden(lambda th: squeeze_gain(th, alpha), 0.0, theta_hi,
                           tol=1e-12)
    theta = float(out.argmax)
    # golden section resolves argmax only to ~sqrt(eps); polish on the
    # stationarity condition inside a tight bracket
    lo, hi = theta - 1e-4, theta + 1e-4
    if lo > 0 and _gain_slope(lo, alpha) > 0 > _gain_slope(hi, alpha):
        from scipy.optimize import brentq
        theta = float(brentq(lambda th: _gain_slope(th, alpha), lo, hi,
                             xtol=1e-14, rtol=8.9e-16))
    residual = abs(alpha * math.exp(-theta) * (1.0 - theta) - 1.0)
    if residual > 1e-8:
        raise NonFiniteObjectiveError(
            f"stationarity residual {residual:.3e} exceeds 1e-8", abscissa=theta)
    return OptimizationOutcome(argmax=theta, value=squeeze_gain(theta, alpha),
                               at_boundary=False, iterations=out.iterations,
                               bracket=(0.0, theta_hi),
                               diagnostics={"stationarity_residual": residual})


def optimal_u(alpha: float | None, u_hi: float = 1.0 - 1e-9) -> OptimizationOutcome:
    """Maximize h(U) = (1 - U) exp(alpha/e U) over [0, u_hi).

    For alpha/e > 1 the numeric argmax matches the closed form
    (alpha/e - 1)/(alpha/e); otherwise U* = 0 at the boundary.
    """
    if alpha is None or math.isinf(alpha):
        raise DomainError("noiseless case (alpha infinite) has no interior optimum")
    if not (alpha > 0.0):
        raise DomainError(f"requires alpha > 0, got {alpha}")
    a = alpha * math.exp(-1.0)
    if a <= 1.0:
        return OptimizationOutcome(argmax=0.0, value=1.0, at_boundary=True,
                                   iterations=0, bracket=(0.0, u_hi))
    out = grid_then_golden(lambda u: (1.0 - u) * math.exp(a * u), 0.0, u_hi,
                           tol=1e-12)
    closed = (a - 1.0) / a
    return OptimizationOutcome(argmax=out.argmax, value=out.value,
                               at_boundary=out.at_boundary,
                               iterations=out.iterations, bracket=(0.0, u_hi),
                               diagnostics={"closed_form_u": closed})


def optimal_split_full(j_coupling: float, n_spins: float, polarization_p: float,
                       gamma: float, tau_budget: float,
                       n_grid: int = 256, refine_rounds: int = 40,
                       tol: float = 1e-9) -> OptimizationOutcome:
    """Maximize the squeeze-then-measure sensitivity over (T, t) in
    [0, tau_budget]^2 by coarse grid plus alternating golden refinement.

    Diagnostics report 4 Gamma (T* + t*), which the strong-squeezing
    analysis predicts to sit near 1.
    """
    if tau_budget <= 0:
        raise ValueError("tau_budget must be positive")

    def objective(t_sq: float, t_sig: float) -> float:
        if t_sq + t_sig <= 0.0 or t_sig < 0.0 or t_sq < 0.0:
            return 0.0
        return snr_squeeze_then_measure(j_coupling, n_spins, polarization_p,
                                        gamma, t_sq, t_sig).snr_per_root_time

    xs = np.linspace(0.0, tau_budget, n_grid)
    vals = np.array([[objective(float(t_sq), float(t_sig)) for t_sig in xs]
                     for t_sq in xs])
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    t_sq, t_sig = float(xs[i]), float(xs[j])
    step = float(xs[1] - xs[0])
    iterations = n_grid * n_grid
    for _ in range(refine_rounds):
        lo = max(0.0, t_sq - step)
        hi = min(tau_budget, t_sq + step)
        out = maximize_scalar(lambda x: objective(x, t_sig), lo, hi, tol)
        t_sq = float(out.argmax)
        lo = max(0.0, t_sig - step)
        hi = min(tau_budget, t_sig + step)
        out2 = maximize_scalar(lambda x: objective(t_sq, x), lo, hi, tol)
        t_sig = float(out2.argmax)
        iterations += out.iterations + out2.iterations
        step /= 2.0
        if step < tol:
            break
    value = objective(t_sq, t_sig)
    edge = 4.0 * tol
    at_boundary = (t_sq <= edge or t_sig <= edge
                   or tau_budget - t_sq <= edge or tau_budget - t_sig <= edge)
    four_gamma_window = 4.0 * gamma * (t_sq + t_sig)
    return OptimizationOutcome(
        argmax=(t_sq, t_sig), value=value, at_boundary=at_boundary,
        iterations=iterations, bracket=(0.0, tau_budget),
        diagnostics={"four_gamma_window": four_gamma_window,
                     "near_unit_window": bool(abs(four_gamma_window - 1.0) <= 0.2)})
