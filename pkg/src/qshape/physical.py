"""Mapping dimensionless X = h nu / (k T) onto physical frequency and wavelength."""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import HALF_POWER, LevelSpec, find_peak, level_points
from .errors import DomainError
from .lineshapes import GeneralizedThermal
from .specfun import DEFAULT_CONTROL, ConvergenceControl

__all__ = [
    "PLANCK",
    "BOLTZMANN",
    "LIGHTSPEED",
    "PhysicalContext",
    "x_to_frequency",
    "frequency_to_x",
    "x_to_wavelength",
    "wavelength_to_x",
    "physical_q",
    "wien_displacement_constant",
]

# exact SI values (2019 redefinition)
PLANCK = 6.62607015e-34  # J s
BOLTZMANN = 1.380649e-23  # J / K
LIGHTSPEED = 299792458.0  # m / s


@dataclass(frozen=True)
class PhysicalContext:
    temperature_k: float
    h: float = PLANCK
    k_b: float = BOLTZMANN
    c: float = LIGHTSPEED

    def __post_init__(self):
        if not self.temperature_k > 0:
            raise DomainError(f"temperature must be > 0 K, got {self.temperature_k!r}")

    @property
    def thermal_frequency(self) -> float:
        """``k T / h`` in Hz, the frequency at ``X = 1``."""
        return self.k_b * self.temperature_k / self.h


def _positive(name, value):
    if not value > 0:
        raise DomainError(f"{name} must be > 0, got {value!r}")


def x_to_frequency(ctx: PhysicalContext, x: float) -> float:
    _positive("x", x)
    return x * ctx.k_b * ctx.temperature_k / ctx.h


def frequency_to_x(ctx: PhysicalContext, nu: float) -> float:
    _positive("frequency", nu)
    return ctx.h * nu / (ctx.k_b * ctx.temperature_k)


def x_to_wavelength(ctx: PhysicalContext, x: float) -> float:
    _positive("x", x)
    return ctx.h * ctx.c / (x * ctx.k_b * ctx.temperature_k)


def wavelength_to_x(ctx: PhysicalContext, wavelength: float) -> float:
    _positive("wavelength", wavelength)
    return ctx.h * ctx.c / (wavelength * ctx.k_b * ctx.temperature_k)


def physical_q(shape: GeneralizedThermal, ctx: PhysicalContext,
               level: LevelSpec = HALF_POWER, axis: str = "frequency",
               ctrl: ConvergenceControl = DEFAULT_CONTROL) -> float:
    """Q of a thermal spectrum measured on a physical axis.

    ``axis="frequency"`` gives ``nu_p / (nu+ - nu-)``, ``axis="wavelength"``
    gives ``lambda_p / (lambda+ - lambda-)``.  Both numerator and
    denominator scale with T, so the result does not depend on it.
    """
    if not isinstance(shape, GeneralizedThermal):
        raise DomainError("physical_q applies to the thermal family only")
    peak = find_peak(shape, ctrl)
    xl, xu = level_points(shape, level, ctrl, peak)
    if axis == "frequency":
        nu_p, nu_l, nu_u = (x_to_frequency(ctx, x) for x in (peak.x, xl, xu))
        return nu_p / (nu_u - nu_l)
    if axis == "wavelength":
        lam_p, lam_short, lam_long = (x_to_wavelength(ctx, x) for x in (peak.x, xu, xl))
        return lam_p / (lam_long - lam_short)
    raise DomainError(f"axis must be 'frequency' or 'wavelength', got {axis!r}")


def wien_displacement_constant(m: float = 5.0, ctrl: ConvergenceControl = DEFAULT_CONTROL,
                               h: float = PLANCK, k_b: float = BOLTZMANN,
                               c: float = LIGHTSPEED) -> float:
    """``lambda_p * T = h c / (X_p k_B)`` in m K, computed from the Planck peak at ``m``."""
    x_peak = find_peak(GeneralizedThermal(m, -1.0), ctrl).x
    return h * c / (x_peak * k_b)
