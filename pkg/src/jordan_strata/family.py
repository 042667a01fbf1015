"""Closed-form evaluation of the sinc families and their derivatives.

Every family member has the shape

    phi(x) = sinc(x) - 2/pi - p * (pi**q - (2x)**q),    x in (0, pi/2)

and the four kinds differ only in how ``p`` is tied to ``q``.  All
functions accept Python floats or numpy arrays and are pure.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

PI = math.pi
HALF_PI = 0.5 * math.pi
TWO_OVER_PI = 2.0 / math.pi

# below this sin(x)/x loses nothing to the degree-6 Taylor polynomial
SINC_TAYLOR_CUTOFF = 2.0 ** -26
# below this the h_k(x) / x**(k+1) quotients cancel badly; use the series
SERIES_CUTOFF = 0.25
_SERIES_TERMS = 14


class DomainError(ValueError):
    """Raised when an argument falls outside the open interval (0, pi/2)."""


class FamilyKind(enum.Enum):
    TWO_PARAM = "two_param"
    A_TYPE = "a_type"
    B_TYPE = "b_type"
    FIXED_Q = "fixed_q"


@dataclass(frozen=True)
class FamilySpec:
    """Which family a computation targets, plus its parameter values.

    ``p`` is only meaningful for ``TWO_PARAM`` and ``FIXED_Q``; the A- and
    B-type families derive it from ``q``.
    """

    kind: FamilyKind
    q: float
    p: Optional[float] = None

    def __post_init__(self):
        if not self.q > 0:
            raise ValueError(f"q must be positive, got {self.q!r}")
        if self.kind in (FamilyKind.TWO_PARAM, FamilyKind.FIXED_Q):
            if self.p is None or not self.p > 0:
                raise ValueError(f"{self.kind.value} family needs p > 0, got {self.p!r}")
        elif self.p is not None:
            raise ValueError(f"{self.kind.value} family derives p from q; do not pass p")
        if self.kind is FamilyKind.FIXED_Q and self.q not in (1, 2, 3, 4):
            raise ValueError(f"fixed-q family needs q in {{1, 2, 3, 4}}, got {self.q!r}")

    @classmethod
    def two_param(cls, p: float, q: float) -> "FamilySpec":
        return cls(FamilyKind.TWO_PARAM, q=float(q), p=float(p))

    @classmethod
    def a_type(cls, q: float) -> "FamilySpec":
        return cls(FamilyKind.A_TYPE, q=float(q))

    @classmethod
    def b_type(cls, q: float) -> "FamilySpec":
        return cls(FamilyKind.B_TYPE, q=float(q))

    @classmethod
    def fixed_q(cls, q: int, p: float) -> "FamilySpec":
        return cls(FamilyKind.FIXED_Q, q=float(q), p=float(p))

    @property
    def coefficient(self) -> float:
        """The effective ``p`` multiplying ``pi**q - (2x)**q``."""
        if self.kind is FamilyKind.A_TYPE:
            return coeff_A(self.q)
        if self.kind is FamilyKind.B_TYPE:
            return coeff_B(self.q)
        return self.p

    def label(self) -> str:
        if self.kind is FamilyKind.A_TYPE:
            return f"A(q={self.q:.6g})"
        if self.kind is FamilyKind.B_TYPE:
            return f"B(q={self.q:.6g})"
        return f"p={self.p:.6g},q={self.q:.6g}"


@dataclass(frozen=True)
class Interval01:
    """The open interval (0, pi/2) together with one-sided limits of a function."""

    lo_limit: float
    hi_limit: float
    lo: float = 0.0
    hi: float = HALF_PI

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("interval needs lo < hi")
        if not (math.isfinite(self.lo_limit) and math.isfinite(self.hi_limit)):
            raise ValueError("endpoint limits must be finite")


class EndpointLimits(NamedTuple):
    k1: float
    k2: float
    k3: float
    dphiA_dx_at_pi2: float
    phiB_at_0: float
    phiB_pi2_coeff: float


def _check_open(x):
    arr = np.asarray(x, dtype=float)
    if not np.all((arr > 0.0) & (arr < HALF_PI)):
        raise DomainError("x must lie in the open interval (0, pi/2)")
    return arr


def _ret(val):
    """Unwrap 0-d arrays so scalar input gives a Python float back."""
    if np.ndim(val) == 0:
        return float(val)
    return val


def sinc(x):
    """sin(x)/x, extended by 1 at 0."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise DomainError("sinc is defined here for x >= 0 only")
    small = arr < SINC_TAYLOR_CUTOFF
    x2 = arr * arr
    taylor = 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = np.sin(arr) / arr
    return _ret(np.where(small, taylor, direct))


def sinc_minus_one(x):
    """sinc(x) - 1 without cancellation near 0."""
    x = np.asarray(x, dtype=float)
    series = np.zeros_like(x)
    for n in range(1, _SERIES_TERMS):
        series = series + (-1) ** n * x ** (2 * n) / math.factorial(2 * n + 1)
    return _ret(np.where(x < SERIES_CUTOFF, series, np.asarray(sinc(x)) - 1.0))


def _sinc_derivative_series(x, order):
    # d^k/dx^k of sum_n (-1)^n x^(2n) / (2n+1)!
    out = np.zeros_like(x)
    for n in range(_SERIES_TERMS):
        m = 2 * n
        if m < order:
            continue
        c = (-1) ** n * math.perm(m, order) / math.factorial(m + 1)
        out = out + c * x ** (m - order)
    return out


def h_k(x, order: int):
    """Numerator h_k of the k-th sinc derivative, sinc^(k)(x) = h_k(x) / x**(k+1)."""
    x = np.asarray(x, dtype=float)
    s, c = np.sin(x), np.cos(x)
    if order == 1:
        val = x * c - s
    elif order == 2:
        val = -2 * x * c - (x * x - 2) * s
    elif order == 3:
        val = (-x**3 + 6 * x) * c + (3 * x * x - 6) * s
    elif order == 4:
        val = 4 * x * (x * x - 6) * c + (x**4 - 12 * x * x + 24) * s
    else:
        raise ValueError(f"unsupported derivative order {order}")
    return _ret(val)


def f_k(q, order: int):
    """Coefficient f_k(q) = pi^(-q-1) 2^q (pi-2) q(q-1)...(q-k+1)."""
    if order not in (1, 2, 3, 4):
        raise ValueError(f"unsupported derivative order {order}")
    q = np.asarray(q, dtype=float)
    falling = np.ones_like(q)
    for j in range(order):
        falling = falling * (q - j)
    return _ret(PI ** (-q - 1) * 2.0**q * (PI - 2) * falling)


def sinc_derivative(x, order: int):
    """k-th derivative of sinc on (0, pi/2), order 0..4."""
    x = np.asarray(x, dtype=float)
    if order == 0:
        return sinc(x)
    if order not in (1, 2, 3, 4):
        raise ValueError(f"unsupported derivative order {order}")
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        direct = np.asarray(h_k(x, order)) / x ** (order + 1)
    series = _sinc_derivative_series(x, order)
    return _ret(np.where(x < SERIES_CUTOFF, series, direct))


def coeff_A(q):
    return _ret((PI - 2) / PI ** (np.asarray(q, dtype=float) + 1))


def coeff_B(q):
    q = np.asarray(q, dtype=float)
    return _ret(2.0 / (q * PI ** (q + 1)))


def phi(spec: FamilySpec, x):
    """Value of the family member ``spec`` at x in (0, pi/2)."""
    x = _check_open(x)
    q = spec.q
    if spec.kind is FamilyKind.A_TYPE:
        # (2x/pi)^q form avoids subtracting two large powers
        val = sinc_minus_one(x) + (2 * x / PI) ** q * (1 - TWO_OVER_PI)
    elif spec.kind is FamilyKind.B_TYPE:
        val = sinc(x) - TWO_OVER_PI - 2 / (q * PI) * (1 - (2 * x / PI) ** q)
    else:
        val = sinc(x) - TWO_OVER_PI - spec.p * (PI**q - (2 * x) ** q)
    return _ret(val)


def phi_limit_at_zero(spec: FamilySpec) -> float:
    """phi(0+) = 1 - 2/pi - p pi^q."""
    if spec.kind is FamilyKind.A_TYPE:
        return 0.0
    if spec.kind is FamilyKind.B_TYPE:
        return ((PI - 2) * spec.q - 2) / (PI * spec.q)
    return 1 - TWO_OVER_PI - spec.p * PI**spec.q


def endpoint_interval(spec: FamilySpec) -> Interval01:
    """Interval01 carrying the analytic one-sided limits of phi for ``spec``."""
    return Interval01(lo_limit=phi_limit_at_zero(spec), hi_limit=0.0)


def dphi_dx(spec: FamilySpec, x):
    """First x-derivative of any family member."""
    x = _check_open(x)
    q = spec.q
    if spec.kind is FamilyKind.A_TYPE:
        return dphiA_dx(q, x, 1)
    if spec.kind is FamilyKind.B_TYPE:
        return dphiB_dx(q, x)
    return _ret(sinc_derivative(x, 1) + 2 * spec.p * q * (2 * x) ** (q - 1))


def dphi_dp(spec: FamilySpec, x):
    """Partial derivative in p: (2x)^q - pi^q."""
    x = _check_open(x)
    return _ret((2 * x) ** spec.q - PI**spec.q)


def dphi_dq(spec: FamilySpec, x):
    """Partial derivative in q at fixed p: p((2x)^q ln(2x) - pi^q ln(pi))."""
    if spec.kind not in (FamilyKind.TWO_PARAM, FamilyKind.FIXED_Q):
        raise ValueError("dphi_dq is defined for two-parameter and fixed-q families")
    x = _check_open(x)
    q = spec.q
    return _ret(spec.p * ((2 * x) ** q * np.log(2 * x) - PI**q * math.log(PI)))


def dphiA_dq(q, x):
    x = _check_open(x)
    r = 2 * x / PI
    return _ret((1 - TWO_OVER_PI) * r**q * np.log(r))


def dphiB_dq(q, x):
    x = _check_open(x)
    t = (2 * x / PI) ** q
    return _ret(2 / (q * q * PI) * t * (np.log(t) + 1 / t - 1))


def dphiA_dx(q, x, order: int = 1):
    """x-derivatives of the A-type member: (x^(q+1) f_k(q) + h_k(x)) / x^(k+1)."""
    if order not in (1, 2, 3, 4):
        raise ValueError(f"unsupported derivative order {order}")
    x = _check_open(x)
    return _ret(f_k(q, order) * x ** (q - order) + sinc_derivative(x, order))


def dphiB_dx(q, x):
    """(x cos x - sin x + (2x/pi)^(q+1)) / x^2."""
    x = _check_open(x)
    # (2x/pi)^(q+1) / x^2 regrouped so tiny x does not underflow
    return _ret(sinc_derivative(x, 1) + TWO_OVER_PI ** (q + 1) * x ** (q - 1))


def _x_minus_sin_over_cube(x):
    # (x - sin x) / x^3, series near 0 so tiny x neither cancels nor underflows
    x = np.asarray(x, dtype=float)
    series = np.zeros_like(x)
    for n in range(1, 10):
        series = series + (-1) ** (n + 1) * x ** (2 * n - 2) / math.factorial(2 * n + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = (x - np.sin(x)) / x**3
    return np.where(x < SERIES_CUTOFF, series, direct)


def _sin_minus_x_cos_over_cube(x):
    # (sin x - x cos x) / x^3, same treatment
    x = np.asarray(x, dtype=float)
    series = np.zeros_like(x)
    for n in range(1, 10):
        series = series + (-1) ** (n + 1) * 2 * n * x ** (2 * n - 2) / math.factorial(2 * n + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = (np.sin(x) - x * np.cos(x)) / x**3
    return np.where(x < SERIES_CUTOFF, series, direct)


def gA(x):
    """The unique q with phi(A-type q, x) = 0."""
    x = _check_open(x)
    # ln[x(pi-2) / (pi(x - sin x))], written with logs so x^3 never forms
    num = math.log((PI - 2) / PI) - 2 * np.log(x) - np.log(_x_minus_sin_over_cube(x))
    return _ret(num / np.log(PI / (2 * x)))


def gB(x):
    """The unique q at which the B-type member has a critical point at x."""
    x = _check_open(x)
    num = math.log(2 / PI) - 2 * np.log(x) - np.log(_sin_minus_x_cos_over_cube(x))
    return _ret(num / np.log(PI / (2 * x)))


def k1(q):
    """dphi_A/dx at x = pi/4."""
    return (2.0**-q * q * (4 * PI - 8) + 2 * math.sqrt(2) * (PI - 4)) / PI**2


def k2(q):
    """Limit of the second x-derivative of the A-type member at pi/2-."""
    return ((4 * PI - 8) * q**2 + (-4 * PI + 8) * q - 2 * PI**2 + 16) / PI**3


def k3(q):
    """Limit of the third x-derivative of the A-type member at pi/2-."""
    return (
        (8 * PI - 16) * q**3 + (48 - 24 * PI) * q**2 + (16 * PI - 32) * q + 12 * PI**2 - 96
    ) / PI**4


def endpoint_limits(q: float) -> EndpointLimits:
    if not q > 0:
        raise ValueError(f"q must be positive, got {q!r}")
    return EndpointLimits(
        k1=k1(q),
        k2=k2(q),
        k3=k3(q),
        dphiA_dx_at_pi2=2 * (q * (PI - 2) - 2) / PI**2,
        phiB_at_0=((PI - 2) * q - 2) / (PI * q),
        phiB_pi2_coeff=(4 * q - PI**2 + 4) / PI**3,
    )
