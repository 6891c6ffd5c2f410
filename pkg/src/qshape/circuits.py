"""Series RLC and Butterworth-Van Dyke circuit relations, plus other Q estimators."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .analysis import LevelCrossingError, LevelSpec, HALF_POWER, find_peak, numeric_level_points
from .errors import DomainError
from .lineshapes import BvdAdmittanceMagnitude, BvdParams, evaluate_bvd_admittance
from .specfun import DEFAULT_CONTROL, ConvergenceControl

__all__ = [
    "SeriesRlc",
    "BvdParams",
    "RlcFigures",
    "BvdBandwidth",
    "q_from_elements",
    "half_power_frequencies",
    "conductance",
    "q_from_log_decrement",
    "q_from_restitution",
    "bvd_magnitude_bandwidth",
    "bvd_antiresonance",
]


@dataclass(frozen=True)
class SeriesRlc:
    """Series RLC elements in SI units (ohm, henry, farad)."""

    r_ohms: float
    l_henry: float
    c_farad: float

    def __post_init__(self):
        for name in ("r_ohms", "l_henry", "c_farad"):
            value = getattr(self, name)
            if not value > 0:
                raise DomainError(f"{name} must be > 0, got {value!r}")


class RlcFigures(NamedTuple):
    q: float
    omega_1: float
    f_1: float


def q_from_elements(rlc: SeriesRlc) -> RlcFigures:
    """``Q = sqrt(L/C) / R`` together with ``w1 = 1/sqrt(LC)`` and ``f1 = w1 / 2pi``."""
    q = math.sqrt(rlc.l_henry / rlc.c_farad) / rlc.r_ohms
    omega_1 = 1.0 / math.sqrt(rlc.l_henry * rlc.c_farad)
    return RlcFigures(q, omega_1, omega_1 / (2.0 * math.pi))


def half_power_frequencies(q: float) -> tuple[float, float]:
    """Normalized half-power frequencies ``sqrt(1 + 1/(2q)^2) -+ 1/(2q)``."""
    if not q > 0:
        raise DomainError(f"Q must be > 0, got {q!r}")
    half_u = 0.5 / q
    upper = math.hypot(1.0, half_u) + half_u
    return 1.0 / upper, upper


def conductance(q: float, omega: float) -> float:
    """Normalized conductance ``Re(R Y)`` of the series RLC."""
    return evaluate_bvd_admittance(BvdParams(q, 0.0), omega).real


def q_from_log_decrement(delta: float) -> float:
    """``Q = pi / delta`` for a ring-down with logarithmic decrement ``delta``."""
    if not delta > 0:
        raise DomainError(f"logarithmic decrement must be > 0, got {delta!r}")
    return math.pi / delta


def q_from_restitution(c_r: float) -> float:
    """Bouncing-ball Q from the coefficient of restitution: ``(-pi/2) / ln(c_r)``."""
    if not 0.0 < c_r < 1.0:
        raise DomainError(f"coefficient of restitution must lie in (0, 1), got {c_r!r}")
    return -0.5 * math.pi / math.log(c_r)


def bvd_antiresonance(params: BvdParams) -> Optional[float]:
    """Lossless estimate ``sqrt(1 + 1/r)`` of the |Y| minimum, ``None`` for ``r = 0``."""
    if params.r_ratio == 0.0:
        return None
    return math.sqrt(1.0 + 1.0 / params.r_ratio)


class BvdBandwidth(NamedTuple):
    """Outcome of :func:`bvd_magnitude_bandwidth`.

    ``status`` is ``"ok"``, ``"no_resonant_peak"`` or ``"no_crossing"``; the
    numeric fields are ``None`` unless the status is ``"ok"``.
    """

    status: str
    band: Optional[float] = None
    q_estimate: Optional[float] = None
    omega_peak: Optional[float] = None
    omega_lower: Optional[float] = None
    omega_upper: Optional[float] = None


def bvd_magnitude_bandwidth(params: BvdParams, level: LevelSpec = HALF_POWER,
                            ctrl: ConvergenceControl = DEFAULT_CONTROL) -> BvdBandwidth:
    """Bandwidth of ``|Y R|`` and the naive ``W_max / band`` Q estimate.

    The level is a power fraction, so the crossings satisfy
    ``|Y|^2 = fraction * |Y|max^2``; with no shunt this reproduces
    ``band = 1/Q``.  With a shunt the estimate drifts away from the motional
    Q, which is the point of the exercise.
    """
    shape = BvdAdmittanceMagnitude(params.q, params.r_ratio)
    try:
        peak = find_peak(shape, ctrl)
    except LevelCrossingError:
        return BvdBandwidth("no_resonant_peak")
    try:
        lo, hi = numeric_level_points(shape, level, ctrl, peak)
    except LevelCrossingError:
        return BvdBandwidth("no_crossing", omega_peak=peak.x)
    band = hi - lo
    return BvdBandwidth("ok", band, peak.x / band, peak.x, lo, hi)
