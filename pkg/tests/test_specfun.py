import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qshape.errors import ConvergenceError, DomainError
from qshape.specfun import (
    ConvergenceControl,
    adaptive_integrate,
    dirichlet_eta,
    erf,
    gamma_real,
    lambert_w0,
    polylog_neg_arg,
    riemann_zeta,
)


# ---------------------------------------------------------------- oracles

def bisect_w(z, lo=-1.0, hi=0.0):
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid * math.exp(mid) < z:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def zeta_direct(s, n=2000):
    # partial sum plus Euler-Maclaurin tail: N^(1-s)/(s-1) - N^-s/2 + s N^(-s-1)/12
    partial = math.fsum(k ** -s for k in range(1, n))
    return partial + n ** (1 - s) / (s - 1) + 0.5 * n ** -s + s * n ** (-s - 1) / 12


def erf_series(x, terms=60):
    total = 0.0
    for k in range(terms):
        total += (-1) ** k * x ** (2 * k + 1) / (math.factorial(k) * (2 * k + 1))
    return 2.0 / math.sqrt(math.pi) * total


def bose_integrand(m):
    def f(x):
        return x ** m * math.exp(-x) / -math.expm1(-x)
    return f


# ---------------------------------------------------------------- Lambert W

def test_lambert_trivial_points():
    assert lambert_w0(0.0) == 0.0
    assert lambert_w0(math.e) == pytest.approx(1.0, rel=1e-15)


def test_lambert_matches_bisection_oracle():
    z = -3.0 * math.exp(-3.0)
    oracle = bisect_w(z)
    assert oracle == pytest.approx(-0.178561, abs=1e-6)
    assert lambert_w0(z) == pytest.approx(oracle, rel=1e-13)
    # 3 + W0(-3 e^-3) is the M = 3 Planck peak
    assert 3.0 + lambert_w0(z) == pytest.approx(2.821439, abs=1e-6)


def test_lambert_branch_point_and_domain():
    assert lambert_w0(-math.exp(-1.0)) == -1.0
    with pytest.raises(DomainError):
        lambert_w0(-0.5)


@pytest.mark.parametrize("x", [-0.9999, -0.999, -0.99, -0.9, -0.5, -0.1, 0.0, 0.1,
                               0.5, 1.0, 2.0, 3.0, 5.0, 7.5, 10.0])
def test_lambert_inverts_x_exp_x(x):
    assert lambert_w0(x * math.exp(x)) == pytest.approx(x, rel=1e-11, abs=1e-300)


@given(st.floats(min_value=-0.999, max_value=10.0))
def test_lambert_inverse_property(x):
    assert lambert_w0(x * math.exp(x)) == pytest.approx(x, rel=1e-11, abs=1e-15)


@given(st.floats(min_value=-math.exp(-1.0), max_value=1e6))
def test_lambert_residual(z):
    w = lambert_w0(z)
    assert w >= -1.0
    assert w * math.exp(w) == pytest.approx(z, rel=1e-13, abs=1e-15)


# ---------------------------------------------------------------- gamma / zeta / eta

def test_gamma_factorials():
    assert gamma_real(4) == pytest.approx(6.0, rel=1e-15)
    assert gamma_real(6) == pytest.approx(120.0, rel=1e-15)


def test_gamma_half_integer_by_recursion():
    expected = math.sqrt(math.pi)
    for k in range(5):
        expected *= 0.5 + k
    assert gamma_real(5.5) == pytest.approx(expected, rel=1e-14)
    assert gamma_real(5.5) == pytest.approx(52.34277778455352, rel=1e-14)


@pytest.mark.parametrize("s", [0.5, 1.3, 2.7, 4.9])
def test_gamma_recurrence(s):
    assert gamma_real(s + 1) == pytest.approx(s * gamma_real(s), rel=1e-12)


def test_gamma_domain():
    with pytest.raises(DomainError):
        gamma_real(0.0)


def test_zeta_closed_forms():
    assert riemann_zeta(2) == pytest.approx(math.pi ** 2 / 6, rel=1e-14)
    assert riemann_zeta(4) == pytest.approx(math.pi ** 4 / 90, rel=1e-14)


def test_zeta_against_direct_summation():
    oracle = zeta_direct(3.5)
    assert oracle == pytest.approx(1.1267338673170566, rel=1e-13)
    assert riemann_zeta(3.5) == pytest.approx(oracle, rel=1e-13)


def test_zeta_near_pole():
    # zeta(1 + e) ~ 1/e + Euler gamma
    assert riemann_zeta(1.001) == pytest.approx(1000.5772884760112, rel=1e-12)


def test_zeta_domain():
    with pytest.raises(DomainError):
        riemann_zeta(1.0)


def test_eta_values():
    assert dirichlet_eta(1) == pytest.approx(math.log(2.0), rel=1e-15)
    assert dirichlet_eta(2) == pytest.approx(math.pi ** 2 / 12, rel=1e-14)
    assert dirichlet_eta(4) == pytest.approx((1 - 2 ** -3) * riemann_zeta(4), rel=1e-14)
    assert dirichlet_eta(0.5) == pytest.approx(0.6048986434216303, rel=1e-13)
    with pytest.raises(DomainError):
        dirichlet_eta(0.0)


@pytest.mark.parametrize("s", [1.5, 2, 3, 4, 6])
def test_eta_zeta_identity(s):
    assert dirichlet_eta(s) == pytest.approx((1 - 2 ** (1 - s)) * riemann_zeta(s), rel=1e-12)


def test_eta_needs_enough_iterations():
    with pytest.raises(ConvergenceError):
        dirichlet_eta(2.0, ConvergenceControl(max_iter=5))


# ---------------------------------------------------------------- polylog

def test_polylog_endpoints():
    assert polylog_neg_arg(4, 1.0) == pytest.approx(riemann_zeta(4), rel=1e-15)
    assert polylog_neg_arg(4, -1.0) == pytest.approx(-dirichlet_eta(4), rel=1e-15)


@pytest.mark.parametrize("s", [1.5, 2.0, 3.0, 6.0])
def test_polylog_endpoint_identities(s):
    assert polylog_neg_arg(s, -1.0) == -dirichlet_eta(s)
    assert polylog_neg_arg(s, 1.0) == riemann_zeta(s)


def test_polylog_truncated_series_oracle():
    z, s = -0.5, 4.0
    n = 60
    partial = math.fsum(z ** k / k ** s for k in range(1, n + 1))
    remainder = abs(z) ** (n + 1) / (1 - abs(z))
    assert remainder < 1e-17
    assert polylog_neg_arg(s, z) == pytest.approx(partial, rel=1e-13)
    assert partial == pytest.approx(-0.48571453783060644, rel=1e-14)


def test_polylog_domain():
    with pytest.raises(DomainError):
        polylog_neg_arg(3, -1.5)
    with pytest.raises(DomainError):
        polylog_neg_arg(1.0, 0.5)


# ---------------------------------------------------------------- erf

def test_erf_values():
    assert erf(0.0) == 0.0
    # printed as 76.10 %
    assert erf(math.sqrt(math.log(2))) == pytest.approx(0.7610, abs=5e-5)
    assert erf(1.0) == pytest.approx(erf_series(1.0), abs=1e-12)
    assert erf_series(1.0) == pytest.approx(0.8427007929497149, abs=1e-15)


@given(st.floats(min_value=-3, max_value=3))
def test_erf_odd_and_series(x):
    assert erf(-x) == -erf(x)
    assert erf(x) == pytest.approx(erf_series(x, 120), abs=1e-12)


# ---------------------------------------------------------------- quadrature

def test_integrate_exponential():
    assert adaptive_integrate(lambda x: math.exp(-x), 0, math.inf) == pytest.approx(1.0, rel=1e-13)


def test_integrate_bose_and_fermi():
    assert adaptive_integrate(bose_integrand(3), 0, math.inf) == pytest.approx(
        6 * riemann_zeta(4), rel=1e-12)
    assert 6 * riemann_zeta(4) == pytest.approx(6.493939402266829, rel=1e-14)
    fermi = adaptive_integrate(lambda x: x ** 3 * math.exp(-x) / (1 + math.exp(-x)), 0, math.inf)
    assert fermi == pytest.approx(6 * dirichlet_eta(4), rel=1e-12)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_integrate_bose_family(m):
    expected = gamma_real(m + 1) * riemann_zeta(m + 1)
    assert adaptive_integrate(bose_integrand(m), 0, math.inf) == pytest.approx(expected, rel=1e-9)


def test_integrate_doubly_infinite_and_reversed():
    assert adaptive_integrate(lambda x: 1 / (1 + x * x), -math.inf, math.inf) == pytest.approx(
        math.pi, rel=1e-12)
    assert adaptive_integrate(math.sin, math.pi, 0.0) == pytest.approx(-2.0, rel=1e-13)
    assert adaptive_integrate(math.sin, 1.0, 1.0) == 0.0


def test_integrate_weak_endpoint_singularity():
    assert adaptive_integrate(lambda x: x ** 0.05, 0.0, 1.0) == pytest.approx(1 / 1.05, rel=1e-11)


def test_integrate_reports_failure():
    with pytest.raises(ConvergenceError) as info:
        adaptive_integrate(lambda x: 1.0 / x, 0.0, 1.0, ConvergenceControl(max_iter=2))
    assert info.value.stage == "quadrature"


@settings(deadline=None, max_examples=30)
@given(st.floats(min_value=0.2, max_value=5.0), st.floats(min_value=0.0, max_value=3.0))
def test_integrate_gaussian_tail(width, a):
    got = adaptive_integrate(lambda x: math.exp(-(x / width) ** 2), a, math.inf)
    expected = 0.5 * math.sqrt(math.pi) * width * math.erfc(a / width)
    assert got == pytest.approx(expected, rel=1e-11)


def test_control_validation():
    with pytest.raises(DomainError):
        ConvergenceControl(rel_tol=0.0)
    with pytest.raises(DomainError):
        ConvergenceControl(abs_tol=-1.0)
    with pytest.raises(DomainError):
        ConvergenceControl(max_iter=0)
    ctrl = ConvergenceControl()
    assert (ctrl.rel_tol, ctrl.abs_tol, ctrl.max_iter) == (1e-13, 1e-300, 200)
