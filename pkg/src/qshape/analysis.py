"""Peak, level crossings, bandwidth, Q, median and area fraction of a line shape."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from scipy.optimize import brentq, minimize_scalar

from .errors import ConvergenceError, DomainError
from .lineshapes import (
    BvdAdmittanceMagnitude,
    Gaussian,
    GeneralizedThermal,
    LineShape,
    Lorentzian,
    RlcConductance,
    Voigt,
    cumulative,
    domain,
    evaluate,
    log_evaluate,
    total_area,
)
from .specfun import DEFAULT_CONTROL, ConvergenceControl, adaptive_integrate, lambert_w0

__all__ = [
    "LevelSpec",
    "HALF_POWER",
    "Peak",
    "Crossings",
    "QValues",
    "ShapeAnalysis",
    "LevelCrossingError",
    "find_peak",
    "thermal_peak_lambert",
    "thermal_peak_newton",
    "level_points",
    "numeric_level_points",
    "rlc_half_power_closed_form",
    "q_factor",
    "median_point",
    "area_fraction",
    "full_report",
    "sample_curve",
]

_EPS = 2.220446049250313e-16


class LevelCrossingError(ConvergenceError):
    """The curve never falls to the requested level on one side of its peak."""


@dataclass(frozen=True)
class LevelSpec:
    """Crossing level as a power fraction; ``db`` is kept when given that way.

    >>> LevelSpec.from_db(3.0103).fraction  # doctest: +ELLIPSIS
    0.49999...
    """

    fraction: float
    db: Optional[float] = None

    def __post_init__(self):
        if not 0.0 < self.fraction < 1.0:
            raise DomainError(f"level fraction must lie in (0, 1), got {self.fraction!r}")

    @classmethod
    def from_fraction(cls, fraction: float) -> "LevelSpec":
        return cls(float(fraction))

    @classmethod
    def from_db(cls, db: float) -> "LevelSpec":
        if not db > 0:
            raise DomainError(f"dB level must be > 0, got {db!r}")
        return cls(10.0 ** (-db / 10.0), float(db))

    @property
    def decibels(self) -> float:
        return -10.0 * math.log10(self.fraction)


HALF_POWER = LevelSpec(0.5)


class Peak(NamedTuple):
    x: float
    f: float


class Crossings(NamedTuple):
    lower: float
    upper: float


class QValues(NamedTuple):
    direct: float
    reciprocal: Optional[float]


@dataclass(frozen=True)
class ShapeAnalysis:
    """Everything :func:`full_report` knows about one shape at one level.

    ``q_reciprocal`` is only defined for the thermal family (Q on the
    ``Y = 1/X`` axis).  ``x_median`` and ``area_fraction`` are ``None`` for
    shapes without a finite area (BVD admittance magnitude).
    """

    shape: LineShape
    level: LevelSpec
    x_peak: float
    f_peak: float
    x_lower: float
    x_upper: float
    bandwidth: float
    q_direct: float
    q_reciprocal: Optional[float]
    x_median: Optional[float]
    area_fraction: Optional[float]


# --------------------------------------------------------------------------
# peak
# --------------------------------------------------------------------------

def thermal_peak_lambert(m: float, ctrl: ConvergenceControl = DEFAULT_CONTROL) -> float:
    """Peak of ``X^m/(e^X - 1)``: ``m + W0(-m e^-m)``."""
    if not m > 1:
        raise DomainError(f"m must be > 1, got {m!r}")
    return m + lambert_w0(-m * math.exp(-m), ctrl)


def thermal_peak_newton(m: float, n: float, ctrl: ConvergenceControl = DEFAULT_CONTROL) -> float:
    """Root of ``X - m (1 + n e^-X) = 0`` by bracketed Newton.

    The bracket starts as ``(max(0, m-1), m+1]`` and is widened upward if
    large ``n`` pushes the peak past ``m + 1``.
    """
    if not m > 1:
        raise DomainError(f"m must be > 1, got {m!r}")
    if n == 0.0:
        return float(m)

    def h(x):
        return x - m * (1.0 + n * math.exp(-x))

    lo = max(0.0, m - 1.0)
    hi = m + 1.0
    while h(hi) < 0.0:
        lo, hi = hi, 2.0 * hi
    if h(lo) > 0.0:
        raise ConvergenceError(f"peak bracket for m={m}, n={n} has no sign change", stage="peak")

    x = min(max(float(m), lo), hi)
    for _ in range(ctrl.max_iter):
        hx = h(x)
        if hx == 0.0:
            return x
        if hx < 0.0:
            lo = x
        else:
            hi = x
        slope = 1.0 + m * n * math.exp(-x)
        x_new = x - hx / slope if slope > 0.0 else 0.5 * (lo + hi)
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= ctrl.rel_tol * abs(x_new) or hi - lo <= 4 * _EPS * abs(x_new):
            return x_new
        x = x_new
    raise ConvergenceError(f"Newton peak search for m={m}, n={n} did not converge", stage="peak")


def _bvd_peak(shape: BvdAdmittanceMagnitude, ctrl: ConvergenceControl) -> Peak:
    # dense grid over (0.5, 1.5) locates the resonant maximum; refine locally
    count = 4001
    grid = [0.5 + i / (count - 1) for i in range(count)]
    values = [evaluate(shape, w) for w in grid]
    i = max(range(count), key=values.__getitem__)
    if i == 0 or i == count - 1:
        raise LevelCrossingError(
            f"no resonant peak of |Y R| in (0.5, 1.5) for Q={shape.q}, r={shape.r}",
            stage="peak")
    lo, hi = grid[i - 1], grid[i + 1]
    res = minimize_scalar(lambda w: -evaluate(shape, w), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-13, "maxiter": ctrl.max_iter})
    x = float(res.x) if -res.fun >= values[i] else grid[i]
    return Peak(x, evaluate(shape, x))


def find_peak(shape: LineShape, ctrl: ConvergenceControl = DEFAULT_CONTROL) -> Peak:
    """Abscissa and value of the maximum of ``shape``."""
    match shape:
        case GeneralizedThermal(m=m, n=n):
            if n == -1.0:
                x = thermal_peak_lambert(m, ctrl)
            elif n == 0.0:
                x = float(m)
            else:
                x = thermal_peak_newton(m, n, ctrl)
        case Gaussian() | Lorentzian() | Voigt():
            x = 0.0
        case RlcConductance():
            x = 1.0
        case BvdAdmittanceMagnitude():
            return _bvd_peak(shape, ctrl)
        case _:
            raise TypeError(f"not a line shape: {shape!r}")
    return Peak(x, evaluate(shape, x, ctrl))


# --------------------------------------------------------------------------
# level crossings
# --------------------------------------------------------------------------

def _is_amplitude(shape: LineShape) -> bool:
    return isinstance(shape, BvdAdmittanceMagnitude)


def _initial_step(shape: LineShape) -> float:
    if isinstance(shape, (RlcConductance, BvdAdmittanceMagnitude)):
        return 0.25 / shape.q
    return 0.125


def _bracket(phi, x_peak, side, shape, max_doublings=80):
    """Walk away from the peak until ``phi`` turns negative; return (inside, outside)."""
    dom = domain(shape)
    step = _initial_step(shape)
    inside = x_peak
    for k in range(max_doublings):
        offset = step * 2.0 ** k
        try:
            x = x_peak * math.exp(side * offset) if dom.lower == 0.0 else x_peak + side * offset
        except OverflowError:
            break
        if not dom.contains(x) or x == inside:
            break
        if phi(x) < 0.0:
            return inside, x
        inside = x
    where = "below" if side < 0 else "above"
    raise LevelCrossingError(f"{shape_label(shape)} never drops to the level {where} its peak",
                             stage="level_points")


def shape_label(shape: LineShape) -> str:
    return type(shape).__name__


def numeric_level_points(shape: LineShape, level: LevelSpec,
                         ctrl: ConvergenceControl = DEFAULT_CONTROL,
                         peak: Optional[Peak] = None) -> Crossings:
    """Bracketed Brent search for the two crossings of ``level`` around the peak.

    Levels are power fractions; for the BVD admittance magnitude (an
    amplitude) the crossing is where ``|Y|^2 = fraction * |Y|max^2``.
    """
    if peak is None:
        peak = find_peak(shape, ctrl)
    log_target = math.log(level.fraction) + (2.0 if _is_amplitude(shape) else 1.0) * math.log(peak.f)
    power = 2.0 if _is_amplitude(shape) else 1.0

    def phi(x):
        return power * log_evaluate(shape, x, ctrl) - log_target

    roots = []
    for side in (-1, 1):
        a, b = _bracket(phi, peak.x, side, shape)
        lo, hi = (b, a) if side < 0 else (a, b)
        try:
            root = brentq(phi, lo, hi, xtol=1e-300, rtol=max(4 * _EPS, ctrl.rel_tol * 1e-2),
                          maxiter=ctrl.max_iter)
        except RuntimeError as exc:
            raise ConvergenceError(str(exc), stage="level_points") from exc
        roots.append(root)
    return Crossings(*roots)


def rlc_half_power_closed_form(q: float, fraction: float = 0.5) -> Crossings:
    """Crossings of the RLC conductance at a power fraction.

    ``g = fraction`` gives ``W - 1/W = +-u`` with ``u = sqrt(1/fraction - 1)/q``,
    so ``W = sqrt(1 + (u/2)^2) +- u/2``; at one half this is
    ``sqrt(1 + 1/(2q)^2) +- 1/(2q)``.
    """
    if not q > 0:
        raise DomainError(f"Q must be > 0, got {q!r}")
    half_u = 0.5 * math.sqrt(1.0 / fraction - 1.0) / q
    root = math.hypot(1.0, half_u)
    # lower root as the reciprocal of the upper avoids cancellation at small q
    return Crossings(1.0 / (root + half_u), root + half_u)


def level_points(shape: LineShape, level: LevelSpec = HALF_POWER,
                 ctrl: ConvergenceControl = DEFAULT_CONTROL,
                 peak: Optional[Peak] = None) -> Crossings:
    """Lower and upper abscissas where the shape crosses ``level`` of its peak.

    For the RLC conductance the closed form is returned after checking it
    against the numeric roots.
    """
    numeric = numeric_level_points(shape, level, ctrl, peak)
    if isinstance(shape, RlcConductance):
        exact = rlc_half_power_closed_form(shape.q, level.fraction)
        for a, b in zip(numeric, exact):
            if abs(a - b) > 1e-9 * b:
                raise ConvergenceError(
                    f"numeric RLC crossing {a!r} disagrees with closed form {b!r}",
                    stage="level_points")
        return exact
    return numeric


def _x_ref(shape: LineShape, x_peak: float) -> float:
    return x_peak if isinstance(shape, GeneralizedThermal) else 1.0


def q_factor(shape: LineShape, level: LevelSpec = HALF_POWER,
             ctrl: ConvergenceControl = DEFAULT_CONTROL) -> QValues:
    """Q on the natural axis and, for the thermal family, on ``Y = 1/X``.

    The reference abscissa is the peak for the thermal family and the unit
    centre frequency for every other shape, which gives Q = 1/2 for the
    centred Gaussian and Lorentzian and Q = q for the RLC conductance.
    """
    peak = find_peak(shape, ctrl)
    xl, xu = level_points(shape, level, ctrl, peak)
    return _q_values(shape, peak.x, xl, xu)


def _q_values(shape, x_peak, xl, xu) -> QValues:
    direct = _x_ref(shape, x_peak) / (xu - xl)
    reciprocal = None
    if isinstance(shape, GeneralizedThermal):
        y_peak = 1.0 / x_peak
        reciprocal = y_peak / (1.0 / xl - 1.0 / xu)
    return QValues(direct, reciprocal)


# --------------------------------------------------------------------------
# areas
# --------------------------------------------------------------------------

def median_point(shape: LineShape, ctrl: ConvergenceControl = DEFAULT_CONTROL) -> float:
    """Abscissa splitting the total area in half."""
    half = 0.5 * total_area(shape, ctrl)
    peak = find_peak(shape, ctrl)
    wide = numeric_level_points(shape, LevelSpec(0.01), ctrl, peak)
    dom = domain(shape)
    lo = dom.lower if math.isfinite(dom.lower) else wide.lower
    hi = wide.upper

    def excess(x):
        if dom.open_lower and x <= dom.lower:
            return -half
        return cumulative(shape, x, ctrl) - half

    while excess(hi) < 0.0:
        hi = peak.x + 2.0 * (hi - peak.x)
    while excess(lo) > 0.0:
        lo = peak.x - 2.0 * (peak.x - lo)
    try:
        return brentq(excess, lo, hi, xtol=1e-15, rtol=max(4 * _EPS, ctrl.rel_tol),
                      maxiter=ctrl.max_iter)
    except RuntimeError as exc:
        raise ConvergenceError(str(exc), stage="median") from exc


def _area_between(shape, xl, xu, x_peak, ctrl):
    if isinstance(shape, (GeneralizedThermal, RlcConductance)):
        return adaptive_integrate(lambda x: evaluate(shape, x, ctrl), xl, xu, ctrl,
                                  points=(x_peak,))
    return cumulative(shape, xu, ctrl) - cumulative(shape, xl, ctrl)


def area_fraction(shape: LineShape, level: LevelSpec = HALF_POWER,
                  ctrl: ConvergenceControl = DEFAULT_CONTROL) -> float:
    """Fraction of the total area lying between the two level crossings."""
    peak = find_peak(shape, ctrl)
    xl, xu = level_points(shape, level, ctrl, peak)
    return _area_between(shape, xl, xu, peak.x, ctrl) / total_area(shape, ctrl)


# --------------------------------------------------------------------------
# aggregation
# --------------------------------------------------------------------------

def _staged(stage, fn, *args):
    try:
        return fn(*args)
    except ConvergenceError as exc:
        if exc.stage == stage:
            raise
        raise ConvergenceError(str(exc), stage=stage) from exc


def full_report(shape: LineShape, level: LevelSpec = HALF_POWER,
                ctrl: ConvergenceControl = DEFAULT_CONTROL) -> ShapeAnalysis:
    """Compose peak, crossings, Q, median and area fraction into one record."""
    peak = _staged("peak", find_peak, shape, ctrl)
    xl, xu = _staged("level_points", level_points, shape, level, ctrl, peak)
    q = _q_values(shape, peak.x, xl, xu)
    median = fraction = None
    if not isinstance(shape, BvdAdmittanceMagnitude):
        median = _staged("median", median_point, shape, ctrl)
        area = _staged("area_fraction", _area_between, shape, xl, xu, peak.x, ctrl)
        fraction = area / _staged("total_area", total_area, shape, ctrl)
    return ShapeAnalysis(
        shape=shape,
        level=level,
        x_peak=peak.x,
        f_peak=peak.f,
        x_lower=xl,
        x_upper=xu,
        bandwidth=xu - xl,
        q_direct=q.direct,
        q_reciprocal=q.reciprocal,
        x_median=median,
        area_fraction=fraction,
    )


def sample_curve(shape: LineShape, x_min: float, x_max: float, count: int,
                 log_spacing: bool = False,
                 ctrl: ConvergenceControl = DEFAULT_CONTROL) -> list[tuple[float, float]]:
    """Evaluate ``shape`` on ``count`` ascending abscissas spanning ``[x_min, x_max]``."""
    if not x_min < x_max:
        raise DomainError(f"need x_min < x_max, got {x_min!r}, {x_max!r}")
    if count < 2:
        raise DomainError(f"need at least 2 points, got {count!r}")
    if log_spacing and not x_min > 0:
        raise DomainError("logarithmic spacing requires x_min > 0")
    dom = domain(shape)
    if not (dom.contains(x_min) and dom.contains(x_max)):
        raise DomainError(f"[{x_min}, {x_max}] leaves the domain of {shape_label(shape)}")
    last = count - 1
    if log_spacing:
        a, b = math.log(x_min), math.log(x_max)
        xs = [math.exp(a + (b - a) * i / last) for i in range(count)]
    else:
        xs = [x_min + (x_max - x_min) * i / last for i in range(count)]
    xs[0], xs[-1] = x_min, x_max
    return [(x, evaluate(shape, x, ctrl)) for x in xs]

