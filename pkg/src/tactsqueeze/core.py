"""Protocol parameters and the dimensionless groups derived from them.

Every engine in the package consumes the same :class:`ProtocolParams`
record.  Rates and times are in mutually consistent arbitrary units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ProtocolParams",
    "DimensionlessGroups",
    "Violation",
    "derive_dimensionless",
    "validate",
]

SQUEEZE_ONLY = "squeeze_only"
SQUEEZE_THEN_MEASURE = "squeeze_then_measure"


@dataclass(frozen=True)
class ProtocolParams:
    """Physical inputs of a squeezing protocol.

    n_spins        -- ensemble size N
    polarization_p -- initial polarization P in (0, 1]
    j_coupling     -- squeezing rate J (1/time)
    gamma          -- depolarization rate Gamma >= 0 (1/time)
    b_field        -- signal field strength B (1/time)
    t_squeeze      -- squeezing duration T >= 0
    t_signal       -- signal-acquisition duration t >= 0
    tau_total      -- total measurement budget tau > 0
    """

    n_spins: int
    polarization_p: float
    j_coupling: float
    gamma: float
    b_field: float = 0.0
    t_squeeze: float = 0.0
    t_signal: float = 0.0
    tau_total: float = 1.0


@dataclass(frozen=True)
class DimensionlessGroups:
    """Derived dimensionless quantities used by the closed forms.

    theta = 4*Gamma*T; u is the same quantity in its role as the
    squeeze fraction of the split protocol; p_eff is the effective
    polarization after depolarization.  alpha = J*N*P/(4*Gamma) is None
    (with alpha_infinite set) when Gamma = 0: the noiseless case has no
    finite squeezing-to-noise ratio and callers branch explicitly.
    """

    theta: float
    alpha: float | None
    u: float
    p_eff: float
    alpha_infinite: bool = False


@dataclass(frozen=True)
class Violation:
    code: str
    message: str


def validate(params: ProtocolParams) -> list[Violation]:
    """Check every invariant; return the full list of violations (empty = ok)."""
    v = []
    if not isinstance(params.n_spins, int) or params.n_spins < 1:
        v.append(Violation("N_POSITIVE", f"n_spins must be a positive integer, got {params.n_spins}"))
    p = params.polarization_p
    if not (math.isfinite(p) and 0.0 < p <= 1.0):
        v.append(Violation("P_OUT_OF_RANGE", f"polarization_p must be in (0, 1], got {p}"))
    for name, code in [
        ("j_coupling", "J_NONNEGATIVE"),
        ("gamma", "GAMMA_NONNEGATIVE"),
        ("b_field", "B_NONNEGATIVE"),
        ("t_squeeze", "T_SQUEEZE_NONNEGATIVE"),
        ("t_signal", "T_SIGNAL_NONNEGATIVE"),
    ]:
        x = getattr(params, name)
        if not (math.isfinite(x) and x >= 0.0):
            v.append(Violation(code, f"{name} must be finite and non-negative, got {x}"))
    if not (math.isfinite(params.tau_total) and params.tau_total > 0.0):
        v.append(Violation("TAU_POSITIVE", f"tau_total must be finite and positive, got {params.tau_total}"))
    return v


def derive_dimensionless(params: ProtocolParams, mode: str = SQUEEZE_ONLY) -> DimensionlessGroups:
    """Compute Theta, alpha, U and the effective polarization.

    mode selects whether p_eff decays over the squeezing window only
    (``squeeze_only``) or over squeezing plus signal acquisition
    (``squeeze_then_measure``).
    """
    if mode not in (SQUEEZE_ONLY, SQUEEZE_THEN_MEASURE):
        raise ValueError(f"unknown mode {mode!r}")
    theta = 4.0 * params.gamma * params.t_squeeze
    if mode == SQUEEZE_ONLY:
        decay_window = params.t_squeeze
    else:
        decay_window = params.t_squeeze + params.t_signal
    p_eff = params.polarization_p * math.exp(-4.0 * params.gamma * decay_window)
    if params.gamma == 0.0:
        return DimensionlessGroups(theta=theta, alpha=None, u=theta, p_eff=p_eff,
                                   alpha_infinite=True)
    alpha = params.j_coupling * params.n_spins * params.polarization_p / (4.0 * params.gamma)
    return DimensionlessGroups(theta=theta, alpha=alpha, u=theta, p_eff=p_eff)
