import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qshape.analysis import find_peak, numeric_level_points, HALF_POWER
from qshape.errors import DomainError
from qshape.lineshapes import (
    BvdAdmittanceMagnitude,
    BvdParams,
    Gaussian,
    GeneralizedThermal,
    Lorentzian,
    RlcConductance,
    Voigt,
    cumulative,
    domain,
    evaluate,
    evaluate_bvd_admittance,
    evaluate_voigt,
    total_area,
)
from qshape.specfun import adaptive_integrate, riemann_zeta

GAUSS_FWHM = 2.0 * math.sqrt(2.0 * math.log(2.0))


def log_slope(shape, x, h=1e-6):
    return (math.log(evaluate(shape, x * (1 + h))) - math.log(evaluate(shape, x * (1 - h)))) / (
        math.log1p(h) - math.log1p(-h))


def voigt_fwhm(ratio):
    hwhm = numeric_level_points(Voigt(ratio), HALF_POWER).upper
    return 2.0 * hwhm


# ---------------------------------------------------------------- construction

def test_invalid_parameters():
    with pytest.raises(DomainError):
        GeneralizedThermal(1.0, -1.0)
    with pytest.raises(DomainError):
        GeneralizedThermal(3.0, -1.5)
    with pytest.raises(DomainError):
        RlcConductance(0.0)
    with pytest.raises(DomainError):
        BvdAdmittanceMagnitude(1.0, -0.1)
    with pytest.raises(DomainError):
        Voigt(-1.0)


def test_domains():
    assert domain(Gaussian()).symmetric_center == 0.0
    with pytest.raises(DomainError):
        evaluate(GeneralizedThermal(3, -1), 0.0)
    with pytest.raises(DomainError):
        evaluate(RlcConductance(1.0), -1.0)
    assert evaluate(Lorentzian(), -3.0) == pytest.approx(0.1)


# ---------------------------------------------------------------- evaluate

def test_thermal_table_values():
    assert evaluate(GeneralizedThermal(3, -1), 2.8214) == pytest.approx(1.4214, abs=5e-5)
    assert evaluate(GeneralizedThermal(5, -1), 4.9651) == pytest.approx(21.2014, abs=5e-5)


def test_circuit_and_lorentz_trivial_values():
    for q in (0.5, 3.0, 100.0):
        assert evaluate(RlcConductance(q), 1.0) == 1.0
    assert evaluate(Lorentzian(), 1.0) == 0.5
    assert evaluate(Lorentzian(), -1.0) == 0.5
    assert evaluate(Gaussian(), 1.0) == pytest.approx(0.5, rel=1e-15)


def test_thermal_stable_near_zero():
    # F ~ X^(M-1) for the Planck member
    shape = GeneralizedThermal(3, -1)
    x = 1e-9
    assert evaluate(shape, x) == pytest.approx(x ** 2 * (1 - x / 2), rel=1e-12)


def test_thermal_large_x_no_overflow():
    shape = GeneralizedThermal(5, 1)
    assert evaluate(shape, 800.0) == pytest.approx(math.exp(5 * math.log(800.0) - 800.0), rel=1e-12)
    assert evaluate(shape, 1e4) == 0.0


@pytest.mark.parametrize("m,n,slope", [(3, -1, 2), (3, 0, 3), (5, -1, 4), (5, 0, 5), (3, 1, 3),
                                       (3, 0.5, 3)])
@pytest.mark.parametrize("x", [1e-4, 5e-4])
def test_small_x_slope(m, n, slope, x):
    assert log_slope(GeneralizedThermal(m, n), x) == pytest.approx(slope, abs=1e-3)


@pytest.mark.parametrize("m,n", [(3, -1), (3, 0), (5, -1), (5, 1)])
def test_small_x_slope_is_exact_derivative(m, n):
    # d log F / d log X = M - X e^X / (e^X + n)
    x = 1e-3
    exact = m - x * math.exp(x) / (math.exp(x) + n)
    assert log_slope(GeneralizedThermal(m, n), x) == pytest.approx(exact, abs=1e-8)


# beyond X ~ 30 the three values agree to within rounding
@given(st.floats(min_value=1e-3, max_value=30.0), st.floats(min_value=1.1, max_value=8.0))
def test_ordering_in_n(x, m):
    be = evaluate(GeneralizedThermal(m, -1), x)
    mb = evaluate(GeneralizedThermal(m, 0), x)
    fd = evaluate(GeneralizedThermal(m, 1), x)
    assert be > mb > fd > 0


def test_fermi_dirac_low_x_ordinate():
    # log F -> 3 log X - log 2 as X -> 0
    x = 1e-6
    assert math.log(evaluate(GeneralizedThermal(3, 1), x)) == pytest.approx(
        3 * math.log(x) - math.log(2), abs=1e-5)


@pytest.mark.parametrize("n", [-1, 0, 1, 0.5])
def test_large_x_limit(n):
    shape = GeneralizedThermal(3, n)
    x = 60.0
    assert evaluate(shape, x) * math.exp(x) / x ** 3 == pytest.approx(1.0, rel=1e-20 + 1e-12)


@given(st.sampled_from([GeneralizedThermal(3, -1), GeneralizedThermal(2.5, 2.0), Gaussian(),
                        Lorentzian(), RlcConductance(5.0), BvdAdmittanceMagnitude(10.0, 2.0)]),
       st.floats(min_value=1e-6, max_value=1e3))
def test_positivity(shape, x):
    assert evaluate(shape, x) >= 0.0


# ---------------------------------------------------------------- BVD admittance

@given(st.floats(min_value=0.05, max_value=20.0), st.floats(min_value=0.1, max_value=200.0))
def test_bvd_without_shunt_is_series_rlc(omega, q):
    y = evaluate_bvd_admittance(BvdParams(q, 0.0), omega)
    expected = 1.0 / complex(1.0, q * (omega - 1.0 / omega))
    assert y == pytest.approx(expected, rel=1e-14)
    assert y.real == pytest.approx(evaluate(RlcConductance(q), omega), rel=1e-13)


def test_bvd_at_resonance():
    for q, r in [(1.0, 0.5), (50.0, 5.0), (3.0, 0.0)]:
        y = evaluate_bvd_admittance(BvdParams(q, r), 1.0)
        assert y == pytest.approx(complex(1.0, r / q), rel=1e-15)


def test_bvd_antiresonance_dense_grid():
    shape = BvdAdmittanceMagnitude(50.0, 5.0)
    grid = [1.0 + i * 1e-5 for i in range(1, 20001)]
    w_min = min(grid, key=lambda w: evaluate(shape, w))
    assert w_min == pytest.approx(math.sqrt(1 + 1 / 5.0), abs=2e-3)


def test_bvd_domain():
    with pytest.raises(DomainError):
        evaluate_bvd_admittance(BvdParams(1.0, 1.0), 0.0)


# ---------------------------------------------------------------- areas

def test_total_area_closed_forms():
    assert total_area(GeneralizedThermal(3, -1)) == pytest.approx(6 * riemann_zeta(4), rel=1e-14)
    assert total_area(GeneralizedThermal(3, -1)) == pytest.approx(6.493939, abs=1e-6)
    assert total_area(GeneralizedThermal(3, 0)) == pytest.approx(6.0, rel=1e-14)
    assert total_area(Lorentzian()) == math.pi
    assert total_area(Gaussian()) == pytest.approx(math.sqrt(math.pi / math.log(2)), rel=1e-15)


@pytest.mark.parametrize("n", [-1.0, -0.5, 0.0, 0.3, 1.0, 2.0, 5.0])
@pytest.mark.parametrize("m", [2.0, 3.0, 4.5])
def test_thermal_area_against_quadrature(m, n):
    shape = GeneralizedThermal(m, n)
    quad = adaptive_integrate(lambda x: evaluate(shape, x), 0.0, math.inf)
    assert total_area(shape) == pytest.approx(quad, rel=1e-11)


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0, 5.0, 50.0])
def test_rlc_area(q):
    shape = RlcConductance(q)
    quad = adaptive_integrate(lambda w: evaluate(shape, w), 0.0, math.inf, points=(1.0,))
    assert total_area(shape) * q == pytest.approx(math.pi / 2, abs=1e-9)
    assert quad * q == pytest.approx(math.pi / 2, abs=1e-9)


def test_bvd_has_no_area():
    with pytest.raises(DomainError):
        total_area(BvdAdmittanceMagnitude(10.0, 1.0))


@pytest.mark.parametrize("ratio", [0.0, 0.3, 1.0, 5.0])
def test_voigt_area_by_quadrature(ratio):
    shape = Voigt(ratio)
    quad = adaptive_integrate(lambda x: evaluate(shape, x), -math.inf, math.inf)
    assert total_area(shape) == pytest.approx(quad, rel=1e-7)


@pytest.mark.parametrize("shape,x", [(Gaussian(), 0.4), (Lorentzian(), -2.0), (Voigt(1.0), 0.7),
                                     (GeneralizedThermal(3, -1), 2.0), (RlcConductance(4), 1.1)])
def test_cumulative_against_quadrature(shape, x):
    lower = domain(shape).lower
    quad = adaptive_integrate(lambda t: evaluate(shape, t), lower, x)
    assert cumulative(shape, x) == pytest.approx(quad, rel=1e-9)


# ---------------------------------------------------------------- Voigt

def test_voigt_gaussian_limit():
    assert evaluate_voigt(0.0, 0.0) == 1.0
    assert evaluate_voigt(0.0, 1.3) == pytest.approx(math.exp(-0.5 * 1.3 ** 2), rel=1e-15)
    assert voigt_fwhm(0.0) == pytest.approx(GAUSS_FWHM, abs=1e-9)
    assert voigt_fwhm(1e-7) == pytest.approx(GAUSS_FWHM, abs=1e-6)


def test_voigt_peak_normalized():
    for ratio in (0.1, 1.0, 10.0):
        assert evaluate_voigt(ratio, 0.0) == pytest.approx(1.0, rel=1e-15)


def test_voigt_ratio_one_fwhm():
    # direct convolution computed once with mpmath quad + findroot: 3.6011356772031574
    fwhm = voigt_fwhm(1.0)
    assert fwhm == pytest.approx(3.6011356772031574, rel=1e-10)
    f_l, f_g = 2.0, GAUSS_FWHM
    approx = 0.5346 * f_l + math.sqrt(0.2166 * f_l ** 2 + f_g ** 2)
    assert fwhm == pytest.approx(approx, rel=0.01)


@pytest.mark.parametrize("ratio", [50.0, 200.0])
def test_voigt_lorentz_limit(ratio):
    assert voigt_fwhm(ratio) == pytest.approx(2.0 * ratio, rel=0.02)


@settings(deadline=None, max_examples=15)
@given(st.floats(min_value=0.05, max_value=20.0), st.floats(min_value=0.0, max_value=30.0))
def test_voigt_symmetric_and_bounded(ratio, x):
    v = evaluate_voigt(ratio, x)
    assert 0.0 <= v <= 1.0 + 1e-15
    assert evaluate_voigt(ratio, -x) == pytest.approx(v, rel=1e-12, abs=1e-300)
