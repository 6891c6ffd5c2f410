"""Quality factors of thermal-radiation spectra and resonance line shapes.

The engine treats the family ``X^M / (e^X + n)`` alongside Gaussian,
Lorentzian, Voigt and RLC/BVD circuit curves: peak location, level
crossings, bandwidth, Q, median-energy divisor and area fractions.
"""

from .analysis import (
    HALF_POWER,
    LevelSpec,
    ShapeAnalysis,
    area_fraction,
    find_peak,
    full_report,
    level_points,
    median_point,
    q_factor,
    sample_curve,
)
from .errors import ConvergenceError, DomainError, QShapeError
from .lineshapes import (
    BvdAdmittanceMagnitude,
    BvdParams,
    Gaussian,
    GeneralizedThermal,
    Lorentzian,
    RlcConductance,
    Voigt,
    evaluate,
    total_area,
)
from .specfun import ConvergenceControl

__version__ = "0.1.0"

__all__ = [
    "HALF_POWER",
    "LevelSpec",
    "ShapeAnalysis",
    "area_fraction",
    "find_peak",
    "full_report",
    "level_points",
    "median_point",
    "q_factor",
    "sample_curve",
    "ConvergenceError",
    "DomainError",
    "QShapeError",
    "BvdAdmittanceMagnitude",
    "BvdParams",
    "Gaussian",
    "GeneralizedThermal",
    "Lorentzian",
    "RlcConductance",
    "Voigt",
    "evaluate",
    "total_area",
    "ConvergenceControl",
]
