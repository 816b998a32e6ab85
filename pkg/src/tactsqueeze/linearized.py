"""Linearized Holstein-Primakoff / Bogoliubov engine.

The collective spin near full polarization maps to one bosonic mode b
with S_+ ~ sqrt(N P_eff) b and S_z = N - b^dag b.  Quadratures are
X = (b + b^dag)/sqrt(2), Y = (b - b^dag)/(i sqrt(2)).  The squeezing
flow follows the equations of motion db/dt = i kappa b^dag with
kappa = J N P_eff, whose exact 2x2 symplectic exponential is
[[cosh, sinh], [sinh, cosh]](kappa t): the X-Y diagonal directions
contract/expand as e^{-+kappa t}.

Spin <-> boson conversion used throughout: transverse collective spin
variance (sigma units) = N P_eff * (2 * quadrature variance).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .errors import DegenerateShiftError

__all__ = [
    "GaussianState", "vacuum_state", "effective_polarization",
    "bogoliubov_propagate", "displaced_mode_means", "signal",
    "min_variance_direction", "SignalValue", "VarianceDirection",
]


@dataclass(frozen=True)
class GaussianState:
    """Quadrature means, 2x2 covariance and the Bogoliubov rate kappa = J N P_eff."""

    mean: np.ndarray
    cov: np.ndarray
    kappa: float
    n_p_eff: float


def vacuum_state(kappa: float, n_p_eff: float) -> GaussianState:
    """Coherent/vacuum fluctuations: cov = diag(1/2, 1/2), zero means."""
    return GaussianState(mean=np.zeros(2), cov=np.eye(2) / 2.0,
                         kappa=kappa, n_p_eff=n_p_eff)


def effective_polarization(polarization_p: float, gamma: float, t_squeeze: float,
                           t_signal: float | None = None) -> float:
    """P exp(-4 Gamma T), or P exp(-4 Gamma (T + t)) for the two-phase protocol."""
    window = t_squeeze if t_signal is None else t_squeeze + t_signal
    return polarization_p * math.exp(-4.0 * gamma * window)


def bogoliubov_propagate(state: GaussianState, duration: float) -> GaussianState:
    """Apply the symplectic squeezing map for `duration`.

    dX/dt = kappa Y, dY/dt = kappa X: the (X-Y)/sqrt(2) direction
    contracts as e^{-kappa t}, the orthogonal one expands; det(cov) is
    conserved exactly.
    """
    arg = state.kappa * duration
    c, s = math.cosh(arg), math.sinh(arg)
    m = np.array([[c, s], [s, c]])
    return replace(state, mean=m @ state.mean, cov=m @ state.cov @ m.T)


def displaced_mode_means(b_field: float, j_coupling: float, n_p_eff: float,
                         duration: float) -> tuple[complex, complex]:
    """Eigenmode means (<v_minus>, <v_plus>) under the field-displaced flow.

    <v_minus(t)> = [1 - exp(+J N P_eff t)] * B/(J sqrt(N P_eff)) * (1 + i),
    <v_plus(t)> = 0, evaluated as printed (the sign tension with the
    signal curve's decaying exponential is documented, not resolved).
    """
    if j_coupling == 0.0:
        raise DegenerateShiftError(
            "mode displacement diverges at J = 0; use the free-precession limit")
    shift = b_field / (j_coupling * math.sqrt(n_p_eff))
    v_minus = (1.0 - math.exp(j_coupling * n_p_eff * duration)) * shift * (1.0 + 1.0j)
    return v_minus, 0.0j


class SignalValue(NamedTuple):
    value: float
    degenerate: bool


def signal(b_field: float, j_coupling: float, n_p_eff: float,
           duration: float) -> SignalValue:
    """Signal curve (B/J)[1 - exp(-J N P_eff t)]; saturates at B/J.

    At J = 0 the analytic limit B * N P_eff * t is returned with the
    degenerate flag set.
    """
    if j_coupling == 0.0:
        return SignalValue(b_field * n_p_eff * duration, True)
    val = (b_field / j_coupling) * (1.0 - math.exp(-j_coupling * n_p_eff * duration))
    return SignalValue(val, False)


class VarianceDirection(NamedTuple):
    angle: float
    variance: float
    isotropic: bool


def min_variance_direction(state: GaussianState,
                           isotropy_tol: float = 1e-12) -> VarianceDirection:
    """Smaller covariance eigenvalue and its eigenvector angle in the (X, Y) plane."""
    a, b = state.cov[0, 0], state.cov[1, 1]
    c = 0.5 * (state.cov[0, 1] + state.cov[1, 0])
    half_diff = math.hypot((a - b) / 2.0, c)
    mid = (a + b) / 2.0
    if half_diff <= isotropy_tol * max(mid, 1.0):
        return VarianceDirection(0.0, mid, True)
    angle = 0.5 * math.atan2(2.0 * c, a - b)
    # atan2 form gives the major axis when a < b; pick the minor-axis angle
    var_min = mid - half_diff
    v = np.array([math.cos(angle), math.sin(angle)])
    if v @ state.cov @ v > mid:
        angle += math.pi / 2.0
    angle = math.fmod(angle, math.pi)
    if angle < 0:
        angle += math.pi
    return VarianceDirection(angle, var_min, False)
