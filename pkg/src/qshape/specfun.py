"""Special functions and quadrature used by the analysis engine.

Only elementary functions from :mod:`math` are used.  The gamma and error
functions delegate to the standard library implementations; the remaining
routines (Lambert W, zeta/eta, polylogarithm, adaptive Gauss-Kronrod) are
implemented here.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import ConvergenceError, DomainError

__all__ = [
    "ConvergenceControl",
    "DEFAULT_CONTROL",
    "lambert_w0",
    "gamma_real",
    "riemann_zeta",
    "dirichlet_eta",
    "polylog_neg_arg",
    "erf",
    "adaptive_integrate",
]

_EPS = 2.220446049250313e-16
_INV_E = math.exp(-1.0)


@dataclass(frozen=True)
class ConvergenceControl:
    """Tolerances shared by every iterative routine.

    Parameters
    ----------
    rel_tol : float
        Relative tolerance, must be positive.
    abs_tol : float
        Absolute tolerance, must be non-negative.
    max_iter : int
        Iteration cap for root finders and series accelerators.  Adaptive
        quadrature uses ``50 * max_iter`` as its subinterval limit.
    """

    rel_tol: float = 1e-13
    abs_tol: float = 1e-300
    max_iter: int = 200

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be > 0, got {self.rel_tol!r}")
        if not self.abs_tol >= 0:
            raise DomainError(f"abs_tol must be >= 0, got {self.abs_tol!r}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise DomainError(f"max_iter must be an integer >= 1, got {self.max_iter!r}")


DEFAULT_CONTROL = ConvergenceControl()


# --------------------------------------------------------------------------
# Lambert W, principal branch
# --------------------------------------------------------------------------

def _w0_initial_guess(z: float) -> float:
    if z < -0.25:
        # series about the branch point z = -1/e
        p = math.sqrt(max(0.0, 2.0 * (math.e * z + 1.0)))
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
    if z < 3.0:
        return math.log1p(z) * (1.0 - math.log1p(math.log1p(z)) / (2.0 + math.log1p(z)))
    l1 = math.log(z)
    l2 = math.log(l1)
    return l1 - l2 + l2 / l1


def lambert_w0(z: float, ctrl: ConvergenceControl = DEFAULT_CONTROL) -> float:
    """Principal branch of the Lambert W function for real ``z >= -1/e``.

    Halley iteration started from a piecewise initial guess.

    >>> lambert_w0(math.e)
    1.0
    """
    z = float(z)
    if math.isnan(z) or z < -_INV_E * (1.0 + 2 * _EPS):
        raise DomainError(f"lambert_w0 requires z >= -1/e, got {z!r}")
    if z <= -_INV_E:
        # within rounding of the branch point
        return -1.0
    if z == 0.0:
        return 0.0
    if math.isinf(z):
        return math.inf

    w = _w0_initial_guess(z)
    for _ in range(ctrl.max_iter):
        ew = math.exp(w)
        f = w * ew - z
        if abs(f) <= 4.0 * _EPS * max(abs(z), abs(w * ew)):
            # residual at rounding level; near the branch point further
            # steps only amplify that noise by 1/(w+1)
            return w
        wp1 = w + 1.0
        if wp1 == 0.0:
            return -1.0
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        if denom == 0.0:
            return w
        step = f / denom
        w_new = w - step
        if w_new < -1.0:
            w_new = -1.0 + 0.5 * (w + 1.0)
        if abs(w_new - w) <= ctrl.rel_tol * (1.0 + abs(w_new)):
            return w_new
        w = w_new
    raise ConvergenceError(f"Halley iteration for W0({z!r}) did not converge", stage="lambert_w0")


# --------------------------------------------------------------------------
# Gamma, zeta, eta, polylogarithm
# --------------------------------------------------------------------------

def gamma_real(s: float) -> float:
    """Gamma function for real ``s > 0``."""
    if not s > 0:
        raise DomainError(f"gamma_real requires s > 0, got {s!r}")
    return math.gamma(s)


def _cvz_terms(ctrl: ConvergenceControl) -> int:
    # Cohen-Villegas-Zagier error bound is ~ 3 / (3 + sqrt 8)^n
    n = math.ceil(math.log(3.0 / min(ctrl.rel_tol, 1e-3)) / math.log(3.0 + math.sqrt(8.0))) + 2
    if n > ctrl.max_iter:
        raise ConvergenceError(
            f"{n} acceleration terms needed, max_iter is {ctrl.max_iter}", stage="eta"
        )
    return n


def _eta_cvz(s: float, ctrl: ConvergenceControl) -> float:
    """Alternating series sum_{k>=0} (-1)^k (k+1)^-s with CVZ acceleration."""
    n = _cvz_terms(ctrl)
    d = (3.0 + math.sqrt(8.0)) ** n
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    total = 0.0
    for k in range(n):
        c = b - c
        total += c * (k + 1.0) ** (-s)
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    return total / d


def dirichlet_eta(s: float, ctrl: ConvergenceControl = DEFAULT_CONTROL) -> float:
    """Dirichlet eta function, ``sum (-1)^(k-1) / k^s``, for real ``s > 0``."""
    if not s > 0:
        raise DomainError(f"dirichlet_eta requires s > 0, got {s!r}")
    if s == 1.0:
        return math.log(2.0)
    return _eta_cvz(float(s), ctrl)


def riemann_zeta(s: float, ctrl: ConvergenceControl = DEFAULT_CONTROL) -> float:
    """Riemann zeta function for real ``s > 1``, via the accelerated eta series."""
    if not s > 1:
        raise DomainError(f"riemann_zeta requires s > 1, got {s!r}")
    # 1 - 2^(1-s), computed without cancellation near s = 1
    factor = -math.expm1((1.0 - s) * math.log(2.0))
    return _eta_cvz(float(s), ctrl) / factor


def polylog_neg_arg(s: float, z: float, ctrl: ConvergenceControl = DEFAULT_CONTROL,
                    max_terms: int = 1_000_000) -> float:
    """Polylogarithm ``Li_s(z) = sum z^k / k^s`` for ``s > 1`` and ``|z| <= 1``.

    The endpoints ``z = 1`` and ``z = -1`` are routed to :func:`riemann_zeta`
    and :func:`dirichlet_eta`.  Inside the unit disc the series is summed
    directly until the geometric remainder bound
    ``|z|^(k+1) / ((k+1)^s (1-|z|))`` falls below the tolerance.

    Raises
    ------
    DomainError
        For ``|z| > 1``; callers fall back to quadrature there.
    """
    if not s > 1:
        raise DomainError(f"polylog_neg_arg requires s > 1, got {s!r}")
    if not abs(z) <= 1:
        raise DomainError(f"polylog series diverges for |z| > 1, got z={z!r}")
    if z == 1.0:
        return riemann_zeta(s, ctrl)
    if z == -1.0:
        return -dirichlet_eta(s, ctrl)
    if z == 0.0:
        return 0.0
    az = abs(z)
    total = 0.0
    zk = 1.0
    for k in range(1, max_terms + 1):
        zk *= z
        total += zk / k ** s
        bound = az ** (k + 1) / ((k + 1) ** s * (1.0 - az))
        if bound <= max(ctrl.abs_tol, ctrl.rel_tol * abs(total)):
            return total
    raise ConvergenceError(f"Li_{s}({z}) series not converged after {max_terms} terms",
                           stage="polylog")


def erf(x: float) -> float:
    """Error function."""
    return math.erf(x)


# --------------------------------------------------------------------------
# Adaptive Gauss-Kronrod quadrature
# --------------------------------------------------------------------------

_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
# Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def _gk15(f: Callable[[float], float], a: float, b: float) -> tuple[float, float, float]:
    """Return (kronrod, error estimate, integral of |f|) on [a, b]."""
    centre = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = f(centre)
    res_k = fc * _WGK[7]
    res_g = fc * _WG[3]
    res_abs = abs(res_k)
    for j in range(7):
        dx = half * _XGK[j]
        f1 = f(centre - dx)
        f2 = f(centre + dx)
        res_k += _WGK[j] * (f1 + f2)
        res_abs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            res_g += _WG[j // 2] * (f1 + f2)
    res_k *= half
    res_g *= half
    res_abs *= abs(half)
    return res_k, abs(res_k - res_g), res_abs


def _map_to_finite(f, a, b):
    """Rewrite an integral with infinite limits as one over a finite range."""
    if math.isinf(a) and math.isinf(b):
        raise AssertionError("doubly infinite ranges are split before mapping")
    if math.isinf(b):
        # x = a + t / (1 - t), t in [0, 1)
        def g(t):
            u = 1.0 - t
            return f(a + t / u) / (u * u)
        return g, 0.0, 1.0
    if math.isinf(a):
        # x = b - t / (1 - t)
        def g(t):
            u = 1.0 - t
            return f(b - t / u) / (u * u)
        return g, 0.0, 1.0
    return f, a, b


def adaptive_integrate(f: Callable[[float], float], a: float, b: float,
                       ctrl: ConvergenceControl = DEFAULT_CONTROL,
                       points: Sequence[float] = ()) -> float:
    """Integrate ``f`` over ``[a, b]`` by globally adaptive 15-point Gauss-Kronrod.

    Infinite limits are mapped onto ``[0, 1)`` with ``x = a + t/(1-t)``;
    the integrand then has to decay faster than ``1/x``.  ``points`` are
    interior breakpoints (peaks, kinks) that seed the initial partition.

    The interval with the largest error estimate is bisected until the
    summed estimate is below ``max(abs_tol, rel_tol*|I|)``, floored at the
    round-off level of ``int |f|``.

    Raises
    ------
    ConvergenceError
        When the subinterval limit ``50 * ctrl.max_iter`` is exhausted.
    """
    a = float(a)
    b = float(b)
    if a == b:
        return 0.0
    if a > b:
        return -adaptive_integrate(f, b, a, ctrl, points)
    if math.isinf(a) and math.isinf(b):
        mid = 0.0
        inner = [p for p in points if math.isfinite(p)]
        if inner:
            mid = sorted(inner)[len(inner) // 2]
        left = [p for p in inner if p < mid]
        right = [p for p in inner if p > mid]
        return (adaptive_integrate(f, a, mid, ctrl, left)
                + adaptive_integrate(f, mid, b, ctrl, right))

    if math.isinf(a) or math.isinf(b):
        g, lo, hi = _map_to_finite(f, a, b)
        if math.isinf(b):
            inv = [(p - a) / (1.0 + p - a) for p in points if a < p < math.inf]
        else:
            inv = [(b - p) / (1.0 + b - p) for p in points if -math.inf < p < b]
        return _integrate_finite(g, lo, hi, ctrl, sorted(inv))
    return _integrate_finite(f, a, b, ctrl, sorted(p for p in points if a < p < b))


def _integrate_finite(f, a, b, ctrl, points):
    edges = [a, *points, b]
    heap = []
    total = 0.0
    total_err = 0.0
    total_abs = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi <= lo:
            continue
        r, e, ra = _gk15(f, lo, hi)
        heapq.heappush(heap, (-e, lo, hi, r, ra))
        total += r
        total_err += e
        total_abs += ra

    limit = 50 * ctrl.max_iter
    while True:
        target = max(ctrl.abs_tol, ctrl.rel_tol * abs(total), 50.0 * _EPS * total_abs)
        if total_err <= target:
            return total
        if len(heap) >= limit:
            break
        neg_e, lo, hi, r, ra = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            # interval cannot be split further in floating point
            heapq.heappush(heap, (neg_e, lo, hi, r, ra))
            break
        r1, e1, ra1 = _gk15(f, lo, mid)
        r2, e2, ra2 = _gk15(f, mid, hi)
        heapq.heappush(heap, (-e1, lo, mid, r1, ra1))
        heapq.heappush(heap, (-e2, mid, hi, r2, ra2))
        total += r1 + r2 - r
        total_err += e1 + e2 + neg_e
        total_abs += ra1 + ra2 - ra
        if total_err < 0.0:
            # running sum drifted; recompute from the heap
            total_err = sum(-item[0] for item in heap)

    raise ConvergenceError(
        f"quadrature on [{a}, {b}] reached {len(heap)} subintervals with error "
        f"estimate {total_err:.3e} (target {target:.3e})",
        stage="quadrature",
    )
