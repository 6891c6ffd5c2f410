"""Summary tables (III, IV, V, VI) recomputed from the engine.

Each builder returns a :class:`Table` whose numeric cells are the floats
produced by :mod:`qshape.analysis` (or pure reciprocals of them); rendering
lives in :mod:`qshape.render` and never recomputes anything.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .analysis import HALF_POWER, full_report
from .lineshapes import Gaussian, GeneralizedThermal, Lorentzian, RlcConductance, evaluate
from .specfun import DEFAULT_CONTROL, ConvergenceControl

Cell = Union[str, float, None]

TABLE_IDS = ("III", "IV", "V", "VI")


@dataclass
class Table:
    table_id: str
    title: str
    columns: list[str]
    rows: list[list[Cell]]
    notes: list[str] = field(default_factory=list)


def table_iii(ctrl: ConvergenceControl = DEFAULT_CONTROL) -> Table:
    shape = GeneralizedThermal(3.0, -1.0)
    r = full_report(shape, HALF_POWER, ctrl)
    rows: list[list[Cell]] = [
        ["Lower 1/2-power X(-)", r.x_lower, evaluate(shape, r.x_lower)],
        ["Peak X_p", r.x_peak, r.f_peak],
        ["50%-area divisor X_50%", r.x_median, evaluate(shape, r.x_median)],
        ["Upper 1/2-power X(+)", r.x_upper, evaluate(shape, r.x_upper)],
        ["Delta_3 = X(+) - X(-)", r.bandwidth, None],
        ["Q_3 = X_p / Delta_3", r.q_direct, None],
    ]
    return Table("III", "Pertinent locations on Pl_3(X) = X^3/(e^X - 1), frequency rule (M = 3)",
                 ["Location", "X", "Pl_3(X)"], rows)


def table_iv(ctrl: ConvergenceControl = DEFAULT_CONTROL) -> Table:
    shape = GeneralizedThermal(5.0, -1.0)
    r = full_report(shape, HALF_POWER, ctrl)
    y_lower = 1.0 / r.x_upper
    y_upper = 1.0 / r.x_lower
    rows: list[list[Cell]] = [
        ["Lower 1/2-power Y(-)", y_lower, evaluate(shape, r.x_upper), r.x_upper],
        ["50%-area divisor Y_50%", 1.0 / r.x_median, evaluate(shape, r.x_median), r.x_median],
        ["Peak Y_p", 1.0 / r.x_peak, r.f_peak, r.x_peak],
        ["Upper 1/2-power Y(+)", y_upper, evaluate(shape, r.x_lower), r.x_lower],
        ["Delta_5 = Y(+) - Y(-)", y_upper - y_lower, None, r.bandwidth],
        ["Q_5(lambda) = Y_p/Delta_Y ; Q_5(nu) = X_p/Delta_X", r.q_reciprocal, None, r.q_direct],
    ]
    return Table("IV", "Pertinent locations on Pl_5 = X^5/(e^X - 1), wavelength rule (M = 5), Y = 1/X",
                 ["Location", "Y", "Pl_5", "X"], rows,
                 notes=["the 50%-area divisor is taken on the X axis"])


def table_v(ctrl: ConvergenceControl = DEFAULT_CONTROL) -> Table:
    specs: list[tuple[str, str, object, str, Callable]] = [
        ("Gaussian", "exp(-ln2 X^2)", Gaussian(), "1/2-power points at X = +-1", _direct),
        ("Lorentzian", "1/(1 + X^2)", Lorentzian(), "1/2-power points at X = +-1", _direct),
        ("RLC/BVD", "1/[1 + Q^2 (X - 1/X)^2]", RlcConductance(1.0),
         "evaluated at Q = 1; ratio independent of Q", _direct),
        ("Bose-Einstein (Planck)", "X^3/(e^X - 1)", GeneralizedThermal(3.0, -1.0),
         "nu dispersion", _direct),
        ("Bose-Einstein (Planck)", "X^5/(e^X - 1)", GeneralizedThermal(5.0, -1.0),
         "lambda dispersion; area taken on the X axis", _reciprocal),
        ("Maxwell-Boltzmann (Wien)", "X^3/(e^X - 0)", GeneralizedThermal(3.0, 0.0),
         "nu dispersion", _direct),
        ("Fermi-Dirac", "X^3/(e^X + 1)", GeneralizedThermal(3.0, 1.0), "nu dispersion", _direct),
    ]
    rows: list[list[Cell]] = []
    for name, formula, shape, comment, pick_q in specs:
        r = full_report(shape, HALF_POWER, ctrl)
        rows.append([name, formula, 100.0 * r.area_fraction, pick_q(r), comment])
    return Table("V", "Fractions of area between 1/2-power points and Q for several line shapes",
                 ["Line shape", "Formula", "Ratio (%)", "Q", "Comments"], rows)


def _direct(r):
    return r.q_direct


def _reciprocal(r):
    return r.q_reciprocal


def table_vi(ctrl: ConvergenceControl = DEFAULT_CONTROL) -> Table:
    rows: list[list[Cell]] = []
    for name, n in (("Bose-Einstein", -1.0), ("Maxwell-Boltzmann", 0.0), ("Fermi-Dirac", 1.0)):
        r = full_report(GeneralizedThermal(3.0, n), HALF_POWER, ctrl)
        rows.append([name, n, r.x_lower, r.x_peak, r.x_upper, r.q_direct])
    return Table("VI", "Q by the 1/2-power method for X^3/(e^X + n)",
                 ["Statistics", "n", "X(-)", "X_p", "X(+)", "Q"], rows)


_BUILDERS = {"III": table_iii, "IV": table_iv, "V": table_v, "VI": table_vi}


def build_table(table_id: str, ctrl: Optional[ConvergenceControl] = None) -> Table:
    key = table_id.upper()
    if key not in _BUILDERS:
        raise KeyError(f"unknown table {table_id!r}; choose from {', '.join(TABLE_IDS)}")
    return _BUILDERS[key](ctrl or DEFAULT_CONTROL)
