"""Command-line interface.

Usage:
    qshape analyze --shape thermal --m 3 --stats be
    qshape table VI --format json
    qshape curve --shape thermal --m 3 --n -1 --from 0.01 --to 20 --points 500 --log
    qshape convert --temperature 5778 --peak-of m5
    qshape rlc --restitution 0.85

Exit codes: 0 success, 2 usage error, 3 numerical failure.
Set ``Q_ANALYZER_TOL`` to override the default relative tolerance (1e-13).
"""

from __future__ import annotations

import functools
import os
import sys
from typing import Optional

import click

from . import render
from .analysis import HALF_POWER, LevelSpec, find_peak, full_report, sample_curve
from .circuits import (
    SeriesRlc,
    half_power_frequencies,
    q_from_elements,
    q_from_log_decrement,
    q_from_restitution,
)
from .errors import ConvergenceError, DomainError
from .lineshapes import (
    BvdAdmittanceMagnitude,
    Gaussian,
    GeneralizedThermal,
    Lorentzian,
    RlcConductance,
    Voigt,
    rayleigh_jeans,
)
from .physical import PhysicalContext, x_to_frequency, x_to_wavelength
from .specfun import ConvergenceControl
from .tables import TABLE_IDS, build_table

__all__ = ["cli", "main"]

EXIT_NUMERICAL = 3
TOL_ENV = "Q_ANALYZER_TOL"
STATS = {"be": -1.0, "mb": 0.0, "fd": 1.0}
FORMATS = ("text", "json", "csv")


def _control() -> ConvergenceControl:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return ConvergenceControl()
    try:
        return ConvergenceControl(rel_tol=float(raw))
    except (ValueError, DomainError) as exc:
        raise click.UsageError(f"{TOL_ENV}={raw!r} is not a valid tolerance: {exc}")


def _engine_errors(fn):
    """Map engine exceptions onto the exit-code contract."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ConvergenceError as exc:
            click.echo(f"numerical failure: {exc}", err=True)
            sys.exit(EXIT_NUMERICAL)
        except DomainError as exc:
            raise click.UsageError(str(exc))

    return wrapper


def _output_options(fn):
    fn = click.option("--full-precision", "full_precision", is_flag=True, default=None,
                      help="Print 17 significant digits instead of 6.")(fn)
    fn = click.option("--format", "fmt", type=click.Choice(FORMATS), default=None,
                      help="Output format (overrides the global --format).")(fn)
    return fn


def _resolve_output(fmt: Optional[str], full: Optional[bool], default_fmt: str = "text"):
    obj = click.get_current_context().find_root().obj or {}
    fmt = fmt or obj.get("fmt") or default_fmt
    full = bool(full) or bool(obj.get("full_precision"))
    return fmt, full


def _shape_options(fn):
    options = [
        click.option("--shape", type=click.Choice(["thermal", "gaussian", "lorentzian",
                                                   "rlc", "bvd", "voigt"]),
                     default="thermal", show_default=True),
        click.option("--m", type=float, default=None, help="Thermal exponent M (default 3)."),
        click.option("--n", type=float, default=None, help="Statistics index n (default -1)."),
        click.option("--stats", type=click.Choice(sorted(STATS)), default=None,
                     help="be | mb | fd, aliases for n = -1 | 0 | +1."),
        click.option("--q", "q", type=float, default=None, help="Quality factor (rlc, bvd)."),
        click.option("--r", "r", type=float, default=None, help="Capacitance ratio C0/C (bvd)."),
        click.option("--ratio", type=float, default=None, help="Voigt gamma/sigma."),
    ]
    for opt in reversed(options):
        fn = opt(fn)
    return fn


def _level_options(fn):
    fn = click.option("--db", type=float, default=None, help="Level in dB below the peak.")(fn)
    fn = click.option("--level", "fraction", type=float, default=None,
                      help="Level as a power fraction (default 0.5).")(fn)
    return fn


def _build_shape(shape, m, n, stats, q, r, ratio):
    if shape == "thermal":
        if stats is not None:
            if n is not None and n != STATS[stats]:
                raise click.UsageError(f"--stats {stats} contradicts --n {n}")
            n = STATS[stats]
        return GeneralizedThermal(3.0 if m is None else m, -1.0 if n is None else n)
    if shape in ("rlc", "bvd"):
        if q is None:
            raise click.UsageError(f"--shape {shape} requires --q")
        if shape == "rlc":
            return RlcConductance(q)
        return BvdAdmittanceMagnitude(q, 0.0 if r is None else r)
    if shape == "voigt":
        if ratio is None:
            raise click.UsageError("--shape voigt requires --ratio")
        return Voigt(ratio)
    return Gaussian() if shape == "gaussian" else Lorentzian()


def _build_level(fraction, db) -> LevelSpec:
    if fraction is not None and db is not None:
        raise click.UsageError("give either --level or --db, not both")
    if db is not None:
        return LevelSpec.from_db(db)
    if fraction is not None:
        return LevelSpec.from_fraction(fraction)
    return HALF_POWER


def _emit_mapping(data: dict, fmt: str, full: bool):
    if fmt == "json":
        click.echo(render.to_json(data), nl=False)
    elif fmt == "csv":
        click.echo(render.render_mapping_csv(data, full), nl=False)
    else:
        click.echo(render.render_mapping_text(data, full), nl=False)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--format", "fmt", type=click.Choice(FORMATS), default=None,
              help="Default output format for every subcommand.")
@click.option("--full-precision", "full_precision", is_flag=True, default=False,
              help="Print 17 significant digits instead of 6.")
@click.pass_context
def cli(ctx, fmt, full_precision):
    """Quality factors and half-power analysis of thermal and resonance line shapes."""
    ctx.obj = {"fmt": fmt, "full_precision": full_precision}


@cli.command()
@_shape_options
@_level_options
@_output_options
@_engine_errors
def analyze(shape, m, n, stats, q, r, ratio, fraction, db, fmt, full_precision):
    """Peak, crossings, bandwidth, Q, median and area fraction of one shape."""
    fmt, full = _resolve_output(fmt, full_precision)
    line_shape = _build_shape(shape, m, n, stats, q, r, ratio)
    level = _build_level(fraction, db)
    report = full_report(line_shape, level, _control())
    _emit_mapping(render.report_to_dict(report), fmt, full)


@cli.command()
@click.argument("table_id", metavar="ID", type=click.Choice(TABLE_IDS, case_sensitive=False))
@_output_options
@_engine_errors
def table(table_id, fmt, full_precision):
    """Recompute one of the summary tables (III, IV, V, VI)."""
    fmt, full = _resolve_output(fmt, full_precision)
    data = render.table_to_dict(build_table(table_id, _control()))
    if fmt == "json":
        click.echo(render.to_json(data), nl=False)
    elif fmt == "csv":
        click.echo(render.render_table_csv(data, full), nl=False)
    else:
        click.echo(render.render_table_text(data, full), nl=False)


@cli.command()
@_shape_options
@click.option("--from", "x_min", type=float, required=True, help="First abscissa.")
@click.option("--to", "x_max", type=float, required=True, help="Last abscissa.")
@click.option("--points", type=int, default=200, show_default=True)
@click.option("--log", "log_spacing", is_flag=True, help="Logarithmically spaced abscissas.")
@click.option("--rj-asymptote", is_flag=True,
              help="Emit the Rayleigh-Jeans reference X^(M-1) instead of the thermal curve.")
@_output_options
@_engine_errors
def curve(shape, m, n, stats, q, r, ratio, x_min, x_max, points, log_spacing, rj_asymptote,
          fmt, full_precision):
    """Sample a shape for plotting (CSV with header x,f or omega,g)."""
    fmt, full = _resolve_output(fmt, full_precision, default_fmt="csv")
    line_shape = _build_shape(shape, m, n, stats, q, r, ratio)
    if rj_asymptote and not isinstance(line_shape, GeneralizedThermal):
        raise click.UsageError("--rj-asymptote applies to --shape thermal only")
    samples = sample_curve(line_shape, x_min, x_max, points, log_spacing, _control())
    if rj_asymptote:
        samples = [(x, rayleigh_jeans(line_shape, x)) for x, _ in samples]
    header = ("omega", "g") if shape in ("rlc", "bvd") else ("x", "f")
    if fmt == "json":
        click.echo(render.to_json({"columns": list(header),
                                   "points": [list(p) for p in samples]}), nl=False)
    else:
        click.echo(render.render_curve_csv(samples, header, full), nl=False)


@cli.command()
@click.option("--temperature", type=float, required=True, help="Absolute temperature in K.")
@click.option("--x", "x", type=float, default=None, help="Dimensionless X = h nu / k T.")
@click.option("--peak-of", type=click.Choice(["m3", "m5"]), default=None,
              help="Use the Planck peak of the frequency (m3) or wavelength (m5) rule.")
@_output_options
@_engine_errors
def convert(temperature, x, peak_of, fmt, full_precision):
    """Map X onto frequency and wavelength at a temperature."""
    fmt, full = _resolve_output(fmt, full_precision)
    if (x is None) == (peak_of is None):
        raise click.UsageError("give exactly one of --x or --peak-of")
    ctx = PhysicalContext(temperature)
    if peak_of is not None:
        x = find_peak(GeneralizedThermal(3.0 if peak_of == "m3" else 5.0, -1.0), _control()).x
    nu = x_to_frequency(ctx, x)
    lam = x_to_wavelength(ctx, x)
    data = {"temperature_k": temperature, "x": x, "frequency_hz": nu, "wavelength_m": lam}
    if peak_of == "m3":
        data["nu_p_over_t_hz_per_k"] = nu / temperature
    elif peak_of == "m5":
        data["lambda_p_t_m_k"] = lam * temperature
    _emit_mapping(data, fmt, full)


@cli.command()
@click.option("--q", "q", type=float, default=None, help="Quality factor.")
@click.option("--r", "r_ohms", type=float, default=None, help="Resistance in ohm.")
@click.option("--l", "l_henry", type=float, default=None, help="Inductance in H.")
@click.option("--c", "c_farad", type=float, default=None, help="Capacitance in F.")
@click.option("--decrement", type=float, default=None, help="Logarithmic decrement.")
@click.option("--restitution", type=float, default=None, help="Coefficient of restitution.")
@_output_options
@_engine_errors
def rlc(q, r_ohms, l_henry, c_farad, decrement, restitution, fmt, full_precision):
    """Series RLC figures from Q, elements, a decrement or a restitution coefficient."""
    fmt, full = _resolve_output(fmt, full_precision)
    elements = (r_ohms, l_henry, c_farad)
    modes = [q is not None, any(v is not None for v in elements),
             decrement is not None, restitution is not None]
    if sum(modes) != 1:
        raise click.UsageError("give exactly one of --q, (--r --l --c), --decrement, --restitution")
    data: dict = {}
    if modes[1]:
        if any(v is None for v in elements):
            raise click.UsageError("--r, --l and --c must be given together")
        figures = q_from_elements(SeriesRlc(r_ohms, l_henry, c_farad))
        q = figures.q
        data = {"q": q, "omega_1_rad_s": figures.omega_1, "f_1_hz": figures.f_1}
    elif decrement is not None:
        q = q_from_log_decrement(decrement)
        data = {"q": q}
    elif restitution is not None:
        q = q_from_restitution(restitution)
        data = {"q": q}
    else:
        data = {"q": q}
    lower, upper = half_power_frequencies(q)
    data.update(omega_lower=lower, omega_upper=upper, bandwidth=upper - lower)
    _emit_mapping(data, fmt, full)


def main(argv=None):
    cli.main(args=argv, prog_name="qshape")


if __name__ == "__main__":
    main()
