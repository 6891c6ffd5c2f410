"""Curve families understood by the analyser.

Every shape is an immutable dataclass.  :func:`evaluate` gives pointwise
values, :func:`total_area` the integral over the whole domain and
:func:`cumulative` the integral from the lower domain edge up to ``x``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Optional, Union

from .errors import DomainError
from .specfun import (
    DEFAULT_CONTROL,
    ConvergenceControl,
    adaptive_integrate,
    dirichlet_eta,
    gamma_real,
    polylog_neg_arg,
    riemann_zeta,
)

__all__ = [
    "GeneralizedThermal",
    "Gaussian",
    "Lorentzian",
    "RlcConductance",
    "BvdAdmittanceMagnitude",
    "BvdParams",
    "Voigt",
    "LineShape",
    "ShapeDomain",
    "domain",
    "evaluate",
    "log_evaluate",
    "evaluate_bvd_admittance",
    "evaluate_voigt",
    "total_area",
    "cumulative",
    "rayleigh_jeans",
    "shape_name",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class GeneralizedThermal:
    """``F(X) = X^m / (e^X + n)`` on ``X > 0``.

    ``n = -1`` is Bose-Einstein (Planck), ``0`` Maxwell-Boltzmann (Wien),
    ``+1`` Fermi-Dirac.  Fractional ``n`` is allowed.
    """

    m: float
    n: float = -1.0

    def __post_init__(self):
        if not self.m > 1:
            raise DomainError(f"thermal exponent m must be > 1, got {self.m!r}")
        if not self.n >= -1:
            raise DomainError(f"statistics index n must be >= -1, got {self.n!r}")


@dataclass(frozen=True)
class Gaussian:
    """``exp(-ln2 * X^2)``, half-power points at ``X = +-1``."""


@dataclass(frozen=True)
class Lorentzian:
    """``1 / (1 + X^2)``, half-power points at ``X = +-1``."""


@dataclass(frozen=True)
class RlcConductance:
    """Normalized series-RLC conductance ``1 / (1 + q^2 (W - 1/W)^2)``."""

    q: float

    def __post_init__(self):
        if not self.q > 0:
            raise DomainError(f"Q must be > 0, got {self.q!r}")


@dataclass(frozen=True)
class BvdParams:
    """Normalized Butterworth-Van Dyke circuit: motional ``q`` and ``r = C0/C``."""

    q: float
    r_ratio: float = 0.0

    def __post_init__(self):
        if not self.q > 0:
            raise DomainError(f"Q must be > 0, got {self.q!r}")
        if not self.r_ratio >= 0:
            raise DomainError(f"capacitance ratio r must be >= 0, got {self.r_ratio!r}")


@dataclass(frozen=True)
class BvdAdmittanceMagnitude:
    """``|Y R|`` of the BVD circuit as a function of normalized frequency.

    This is an amplitude, so power levels are applied to its square.
    """

    q: float
    r: float = 0.0

    def __post_init__(self):
        BvdParams(self.q, self.r)

    @property
    def params(self) -> BvdParams:
        return BvdParams(self.q, self.r)


@dataclass(frozen=True)
class Voigt:
    """Peak-normalized convolution of a unit-sigma Gaussian with a Lorentzian.

    ``gamma_over_sigma`` is the Lorentzian half-width at half-maximum in
    units of the Gaussian standard deviation.
    """

    gamma_over_sigma: float

    def __post_init__(self):
        if not self.gamma_over_sigma >= 0:
            raise DomainError(f"gamma_over_sigma must be >= 0, got {self.gamma_over_sigma!r}")


LineShape = Union[GeneralizedThermal, Gaussian, Lorentzian, RlcConductance,
                  BvdAdmittanceMagnitude, Voigt]


@dataclass(frozen=True)
class ShapeDomain:
    lower: float
    upper: float
    symmetric_center: Optional[float] = None
    open_lower: bool = False

    def contains(self, x: float) -> bool:
        if self.open_lower:
            return self.lower < x < self.upper
        return self.lower <= x <= self.upper


_POSITIVE = ShapeDomain(0.0, math.inf, None, open_lower=True)
_REAL_LINE = ShapeDomain(-math.inf, math.inf, 0.0)


def shape_name(shape: LineShape) -> str:
    """Short identifier used by the CLI and JSON reports."""
    match shape:
        case GeneralizedThermal():
            return "thermal"
        case Gaussian():
            return "gaussian"
        case Lorentzian():
            return "lorentzian"
        case RlcConductance():
            return "rlc"
        case BvdAdmittanceMagnitude():
            return "bvd"
        case Voigt():
            return "voigt"
    raise TypeError(f"not a line shape: {shape!r}")


def domain(shape: LineShape) -> ShapeDomain:
    match shape:
        case Gaussian() | Lorentzian() | Voigt():
            return _REAL_LINE
        case GeneralizedThermal() | RlcConductance() | BvdAdmittanceMagnitude():
            return _POSITIVE
    raise TypeError(f"not a line shape: {shape!r}")


def _check_domain(shape, x):
    if not domain(shape).contains(x):
        raise DomainError(f"x={x!r} outside the domain of {shape_name(shape)}")


# --------------------------------------------------------------------------
# pointwise evaluation
# --------------------------------------------------------------------------

def _thermal_log(m: float, n: float, x: float) -> float:
    if x < 1.0:
        # e^x + n = expm1(x) + (1 + n); no cancellation at n = -1
        return m * math.log(x) - math.log(math.expm1(x) + (1.0 + n))
    return m * math.log(x) - x - math.log1p(n * math.exp(-x))


def _thermal(m: float, n: float, x: float) -> float:
    if x < 1.0:
        return x ** m / (math.expm1(x) + (1.0 + n))
    return math.exp(_thermal_log(m, n, x))


def _rlc(q: float, omega: float) -> float:
    u = omega - 1.0 / omega
    return 1.0 / (1.0 + (q * u) ** 2)


def evaluate_bvd_admittance(params: BvdParams, omega: float) -> complex:
    """Normalized BVD admittance ``Y R = 1/(1 + jQ(W - 1/W)) + jW r/Q``."""
    if not omega > 0:
        raise DomainError(f"normalized frequency must be > 0, got {omega!r}")
    motional = 1.0 / complex(1.0, params.q * (omega - 1.0 / omega))
    return motional + 1j * omega * params.r_ratio / params.q


# the Gaussian factor exp(-t^2/2) underflows to zero beyond this
_VOIGT_CORE = 40.0


def _voigt_breaks(gamma: float, x: float) -> tuple[float, ...]:
    # geometric breakpoints around the Lorentzian centre so that a narrow
    # kernel is never stepped over by the first Kronrod nodes
    pts = {0.0}
    width = gamma
    while width < 2.0 * _VOIGT_CORE:
        for p in (x - width, x, x + width):
            if -_VOIGT_CORE < p < _VOIGT_CORE:
                pts.add(p)
        width *= 4.0
    return tuple(sorted(pts))


@functools.lru_cache(maxsize=256)
def _voigt_raw(gamma: float, x: float, ctrl: ConvergenceControl) -> float:
    """Unnormalized profile: integral of exp(-t^2/2) * gamma / ((x-t)^2 + gamma^2) dt."""
    if gamma == 0.0:
        return math.pi * math.exp(-0.5 * x * x)

    def f(t):
        d = x - t
        return math.exp(-0.5 * t * t) * gamma / (d * d + gamma * gamma)

    return adaptive_integrate(f, -_VOIGT_CORE, _VOIGT_CORE, ctrl, points=_voigt_breaks(gamma, x))


def evaluate_voigt(gamma_over_sigma: float, x: float,
                   ctrl: ConvergenceControl = DEFAULT_CONTROL) -> float:
    """Voigt profile normalized to 1 at its centre, by convolution quadrature."""
    if not gamma_over_sigma >= 0:
        raise DomainError(f"gamma_over_sigma must be >= 0, got {gamma_over_sigma!r}")
    g = float(gamma_over_sigma)
    if g == 0.0:
        return math.exp(-0.5 * x * x)
    return _voigt_raw(g, float(x), ctrl) / _voigt_raw(g, 0.0, ctrl)


def evaluate(shape: LineShape, x: float, ctrl: ConvergenceControl = DEFAULT_CONTROL) -> float:
    """Value of ``shape`` at ``x``."""
    _check_domain(shape, x)
    match shape:
        case GeneralizedThermal(m=m, n=n):
            return _thermal(m, n, x)
        case Gaussian():
            return math.exp(-_LN2 * x * x)
        case Lorentzian():
            return 1.0 / (1.0 + x * x)
        case RlcConductance(q=q):
            return _rlc(q, x)
        case BvdAdmittanceMagnitude():
            return abs(evaluate_bvd_admittance(shape.params, x))
        case Voigt(gamma_over_sigma=g):
            return evaluate_voigt(g, x, ctrl)
    raise TypeError(f"not a line shape: {shape!r}")


def log_evaluate(shape: LineShape, x: float, ctrl: ConvergenceControl = DEFAULT_CONTROL) -> float:
    """Natural log of :func:`evaluate`, overflow-free for the thermal family."""
    if isinstance(shape, GeneralizedThermal):
        _check_domain(shape, x)
        return _thermal_log(shape.m, shape.n, x)
    value = evaluate(shape, x, ctrl)
    return math.log(value) if value > 0 else -math.inf


def rayleigh_jeans(shape: GeneralizedThermal, x: float) -> float:
    """Classical low-X asymptote ``X^(m-1)`` of the Planck member."""
    if not x > 0:
        raise DomainError(f"x must be > 0, got {x!r}")
    return x ** (shape.m - 1.0)


# --------------------------------------------------------------------------
# areas
# --------------------------------------------------------------------------

def _thermal_area(m: float, n: float, ctrl: ConvergenceControl) -> float:
    s = m + 1.0
    g = gamma_real(s)
    if n == -1.0:
        return g * riemann_zeta(s, ctrl)
    if n == 0.0:
        return g
    if n == 1.0:
        return g * dirichlet_eta(s, ctrl)
    if -1.0 < n < 1.0:
        return -g * polylog_neg_arg(s, -n, ctrl) / n
    return adaptive_integrate(lambda x: _thermal(m, n, x), 0.0, math.inf, ctrl,
                              points=(m,))


def total_area(shape: LineShape, ctrl: ConvergenceControl = DEFAULT_CONTROL) -> float:
    """Integral of the shape over its whole domain.

    Raises
    ------
    DomainError
        For the BVD admittance magnitude, which decays too slowly (or grows)
        to have a finite area.
    """
    match shape:
        case GeneralizedThermal(m=m, n=n):
            return _thermal_area(m, n, ctrl)
        case Gaussian():
            return math.sqrt(math.pi / _LN2)
        case Lorentzian():
            return math.pi
        case RlcConductance(q=q):
            return math.pi / (2.0 * q)
        case Voigt(gamma_over_sigma=g):
            # the raw convolution integrates to pi * sqrt(2 pi)
            if g == 0.0:
                return math.sqrt(2.0 * math.pi)
            return math.pi * math.sqrt(2.0 * math.pi) / _voigt_raw(float(g), 0.0, ctrl)
        case BvdAdmittanceMagnitude():
            raise DomainError("BVD admittance magnitude has no finite total area")
    raise TypeError(f"not a line shape: {shape!r}")


def _lorentz_cdf(u: float) -> float:
    # pi/2 + atan(u) without cancellation for large negative u
    if u < 0.0:
        return math.atan(-1.0 / u) if u < -1.0 else 0.5 * math.pi + math.atan(u)
    return 0.5 * math.pi + math.atan(u)


def _voigt_cumulative(g: float, x: float, ctrl: ConvergenceControl) -> float:
    if g == 0.0:
        return math.sqrt(0.5 * math.pi) * math.erfc(-x / math.sqrt(2.0))

    def f(t):
        return math.exp(-0.5 * t * t) * _lorentz_cdf((x - t) / g)

    raw = adaptive_integrate(f, -_VOIGT_CORE, _VOIGT_CORE, ctrl, points=_voigt_breaks(g, x))
    return raw / _voigt_raw(g, 0.0, ctrl)


def cumulative(shape: LineShape, x: float, ctrl: ConvergenceControl = DEFAULT_CONTROL) -> float:
    """Integral of the shape from the lower domain edge up to ``x``."""
    _check_domain(shape, x)
    match shape:
        case Gaussian():
            k = math.sqrt(_LN2)
            return 0.5 * math.sqrt(math.pi) / k * math.erfc(-k * x)
        case Lorentzian():
            return math.atan(x) + 0.5 * math.pi
        case Voigt(gamma_over_sigma=g):
            return _voigt_cumulative(float(g), float(x), ctrl)
        case GeneralizedThermal(m=m, n=n):
            return adaptive_integrate(lambda t: _thermal(m, n, t), 0.0, x, ctrl)
        case RlcConductance(q=q):
            breaks = (1.0,) if x > 1.0 else ()
            return adaptive_integrate(lambda t: _rlc(q, t) if t > 0 else 0.0, 0.0, x, ctrl,
                                      points=breaks)
        case BvdAdmittanceMagnitude():
            raise DomainError("BVD admittance magnitude has no finite cumulative area")
    raise TypeError(f"not a line shape: {shape!r}")
