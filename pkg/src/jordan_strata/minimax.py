"""Equioscillation solves, boundary constants and regime classification."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

import numpy as np

from .family import (
    PI,
    FamilyKind,
    FamilySpec,
    coeff_A,
    coeff_B,
    endpoint_interval,
    phi,
    phi_limit_at_zero,
    sinc_minus_one,
)
from .solve import (
    DEFAULT_GRID_N,
    DEFAULT_TOL,
    ExtremumKind,
    ExtremumRecord,
    RootRecord,
    _scan_grid,
    bisect,
    find_extrema,
    sign_brackets,
    sup_abs_deviation,
)

# structure degenerates exactly at the boundary constants
BOUNDARY_SHRINK = 1e-6


class SolverError(RuntimeError):
    """The equalization objective did not change sign where it must."""


class Regime(enum.Enum):
    GLOBAL_LOWER = "global_lower"  # phi > 0: the bound sits below sinc
    GLOBAL_UPPER = "global_upper"  # phi < 0: the bound sits above sinc
    CROSSING = "crossing"


@dataclass(frozen=True)
class EndpointWitness:
    side: str  # "0+" or "pi/2-"
    value: float


Witness = Union[ExtremumRecord, EndpointWitness]


@dataclass(frozen=True)
class MinimaxResult:
    family_kind: FamilyKind
    q: float
    param0: float
    d0: float
    witnesses: Tuple[Witness, Witness]
    residual: float

    @property
    def spec(self) -> FamilySpec:
        if self.family_kind is FamilyKind.FIXED_Q:
            return FamilySpec.fixed_q(int(self.q), self.param0)
        return FamilySpec(self.family_kind, q=self.param0)

    @property
    def coefficient(self) -> float:
        return self.spec.coefficient

    @property
    def exponent(self) -> float:
        return self.spec.q


@dataclass(frozen=True)
class RegimeClassification:
    regime: Regime
    crossing_x: Optional[RootRecord] = None


class CriticalConstants(NamedTuple):
    qA1: float
    qA2: float
    qB1: float
    qB2: float
    p_bounds: Dict[int, Tuple[float, float]]


def critical_constants() -> CriticalConstants:
    """Boundary exponents for the A/B families and (p1, p2) for q = 1..4.

    For q = 1 the lower threshold is A(1) and the upper B(1); for q >= 2 the
    two swap, since B(q) < A(q) there.
    """
    p_bounds = {1: (coeff_A(1), coeff_B(1))}
    for q in (2, 3, 4):
        p_bounds[q] = (coeff_B(q), coeff_A(q))
    return CriticalConstants(
        qA1=2 / (PI - 2),
        qA2=2.0,
        qB1=PI**2 / 4 - 1,
        qB2=2 / (PI - 2),
        p_bounds=p_bounds,
    )


def search_interval(kind: FamilyKind, q: Optional[int] = None) -> Tuple[float, float]:
    """Open parameter interval holding the crossing members of a family."""
    cc = critical_constants()
    if kind is FamilyKind.A_TYPE:
        return cc.qA1, cc.qA2
    if kind is FamilyKind.B_TYPE:
        return cc.qB1, cc.qB2
    if kind is FamilyKind.FIXED_Q:
        return cc.p_bounds[int(q)]
    raise ValueError(f"no search interval for {kind}")


def _member(kind: FamilyKind, param: float, q: Optional[int] = None) -> FamilySpec:
    if kind is FamilyKind.FIXED_Q:
        return FamilySpec.fixed_q(q, param)
    return FamilySpec(kind, q=param)


def _phi_floor(spec: FamilySpec, xs: np.ndarray) -> np.ndarray:
    eps = np.finfo(float).eps
    if spec.kind is FamilyKind.A_TYPE:
        # A-type values are computed without O(1) cancellation near 0
        return 64 * eps * np.abs(sinc_minus_one(xs))
    return np.full_like(xs, 64 * eps)


def classify(spec: FamilySpec, grid_n: int = DEFAULT_GRID_N,
             tol: float = DEFAULT_TOL) -> RegimeClassification:
    """Place a family member in its regime; locate the crossing if there is one."""
    cc = critical_constants()
    if spec.kind is FamilyKind.A_TYPE:
        lo, hi, below = cc.qA1, cc.qA2, Regime.GLOBAL_LOWER
        t = spec.q
    elif spec.kind is FamilyKind.B_TYPE:
        lo, hi, below = cc.qB1, cc.qB2, Regime.GLOBAL_UPPER
        t = spec.q
    elif spec.kind is FamilyKind.FIXED_Q:
        (lo, hi), below = cc.p_bounds[int(spec.q)], Regime.GLOBAL_LOWER
        t = spec.p
    else:
        raise ValueError("classify needs an A-type, B-type or fixed-q family")

    if t <= lo:
        return RegimeClassification(below)
    if t >= hi:
        above = Regime.GLOBAL_UPPER if below is Regime.GLOBAL_LOWER else Regime.GLOBAL_LOWER
        return RegimeClassification(above)

    xs = _scan_grid(grid_n)

    def f(x):
        return phi(spec, x)

    brackets = sign_brackets(f, xs, _phi_floor(spec, xs))
    if len(brackets) != 1:
        raise SolverError(
            f"{spec.label()}: expected one sign change of phi, found {len(brackets)}"
        )
    return RegimeClassification(Regime.CROSSING, bisect(f, brackets[0], tol))


def _witnesses(spec: FamilySpec, grid_n: int, tol: float) -> Tuple[Witness, Witness]:
    """The two quantities whose magnitudes the minimax member equalizes.

    A-type: (interior max, interior min).  Others: (phi(0+), interior extremum).
    A missing interior extremum has merged into an endpoint, where phi
    takes its limit value.
    """
    extrema = find_extrema(spec, grid_n, tol)
    if spec.kind is FamilyKind.A_TYPE:
        maxima = [e for e in extrema if e.kind is ExtremumKind.MAX]
        minima = [e for e in extrema if e.kind is ExtremumKind.MIN]
        left = max(maxima, key=lambda e: abs(e.value)) if maxima else EndpointWitness("0+", 0.0)
        right = max(minima, key=lambda e: abs(e.value)) if minima else EndpointWitness("pi/2-", 0.0)
        return left, right
    interior = (
        max(extrema, key=lambda e: abs(e.value)) if extrema else EndpointWitness("pi/2-", 0.0)
    )
    return EndpointWitness("0+", phi_limit_at_zero(spec)), interior


def _imbalance(spec: FamilySpec, grid_n: int, tol: float) -> float:
    left, right = _witnesses(spec, grid_n, tol)
    return abs(left.value) - abs(right.value)


def _solve(kind: FamilyKind, q: Optional[int], tol: float, grid_n: int) -> MinimaxResult:
    lo, hi = search_interval(kind, q)
    width = hi - lo
    a, b = lo + BOUNDARY_SHRINK * width, hi - BOUNDARY_SHRINK * width

    def objective(t):
        return _imbalance(_member(kind, t, q), grid_n, tol)

    da, db = objective(a), objective(b)
    if not da * db < 0:
        raise SolverError(
            f"{kind.value}: equalization objective has no sign change on ({a}, {b})"
        )
    # tolerance taken relative to the search width, so p-scale families
    # (width ~ 1e-3) get the same number of significant digits as q-scale ones
    root = bisect(objective, (a, b), tol * width)
    param0 = root.x
    spec = _member(kind, param0, q)
    left, right = _witnesses(spec, grid_n, tol)
    d0 = sup_abs_deviation(spec, endpoint_interval(spec), grid_n, tol)
    return MinimaxResult(
        family_kind=kind,
        q=float(q) if q is not None else param0,
        param0=param0,
        d0=d0,
        witnesses=(left, right),
        residual=abs(abs(left.value) - abs(right.value)),
    )


def solve_minimax_A(tol: float = DEFAULT_TOL, grid_n: int = DEFAULT_GRID_N) -> MinimaxResult:
    """Exponent q0 equalizing the max and min of the A-type member."""
    return _solve(FamilyKind.A_TYPE, None, tol, grid_n)


def solve_minimax_B(tol: float = DEFAULT_TOL, grid_n: int = DEFAULT_GRID_N) -> MinimaxResult:
    """Exponent q0 equalizing |phi_B(0+)| with the interior maximum."""
    return _solve(FamilyKind.B_TYPE, None, tol, grid_n)


def solve_minimax_fixed_q(q: int, tol: float = DEFAULT_TOL,
                          grid_n: int = DEFAULT_GRID_N) -> MinimaxResult:
    """Coefficient p0 equalizing |phi(0+)| with the interior extremum, q in 1..4."""
    if q not in (1, 2, 3, 4):
        raise ValueError(f"q must be one of 1, 2, 3, 4, got {q!r}")
    return _solve(FamilyKind.FIXED_Q, int(q), tol, grid_n)


def solve_all(tol: float = DEFAULT_TOL, grid_n: int = DEFAULT_GRID_N) -> List[MinimaxResult]:
    """All six minimax members, fixed q = 1..4 first, then A and B."""
    out = [solve_minimax_fixed_q(q, tol, grid_n) for q in (1, 2, 3, 4)]
    out.append(solve_minimax_A(tol, grid_n))
    out.append(solve_minimax_B(tol, grid_n))
    return out


@dataclass(frozen=True)
class DeviationRow:
    bound_id: str
    expression: str
    spec: FamilySpec
    deviation: float
    closed_form: Optional[float] = None
    closed_form_text: Optional[str] = None


def _upper_rows() -> List[Tuple[str, str, FamilySpec, Optional[float], Optional[str]]]:
    cc = critical_constants()
    return [
        ("U1", "2/pi + 2/pi^2 (pi - 2x)", FamilySpec.fixed_q(1, 2 / PI**2),
         (4 - PI) / PI, "(4-pi)/pi"),
        ("U2", "2/pi + (pi-2)/pi^3 (pi^2 - 4x^2)", FamilySpec.a_type(2), None, None),
        ("U3", "2/pi + (pi-2)/pi^4 (pi^3 - 8x^3)", FamilySpec.a_type(3), None, None),
        ("U4", "2/pi + (pi-2)/pi^5 (pi^4 - 16x^4)", FamilySpec.a_type(4), None, None),
        ("U5", "2/pi + B(q)(pi^q - (2x)^q), q = pi^2/4 - 1", FamilySpec.b_type(cc.qB1),
         (-PI**2 + 2 * PI + 4) / (PI**2 - 4), "(-pi^2+2pi+4)/(pi^2-4)"),
    ]


def _lower_rows() -> List[Tuple[str, str, FamilySpec, Optional[float], Optional[str]]]:
    cc = critical_constants()
    return [
        ("L1", "2/pi + (pi-2)/pi^2 (pi - 2x)", FamilySpec.fixed_q(1, (PI - 2) / PI**2),
         None, None),
        ("L2", "2/pi + 1/pi^3 (pi^2 - 4x^2)", FamilySpec.b_type(2), (PI - 3) / PI, "(pi-3)/pi"),
        ("L3", "2/pi + 2/(3pi^4) (pi^3 - 8x^3)", FamilySpec.b_type(3),
         (3 * PI - 8) / (3 * PI), "(3pi-8)/(3pi)"),
        ("L4", "2/pi + 1/(2pi^5) (pi^4 - 16x^4)", FamilySpec.b_type(4),
         (2 * PI - 5) / (2 * PI), "(2pi-5)/(2pi)"),
        ("L5", "2/pi + A(q)(pi^q - (2x)^q), q = 2/(pi-2)", FamilySpec.a_type(cc.qB2), None, None),
    ]


def deviation_tables(grid_n: int = DEFAULT_GRID_N,
                     tol: float = DEFAULT_TOL) -> Tuple[List[DeviationRow], List[DeviationRow]]:
    """Sup deviations of the classical and boundary bounds: (upper rows, lower rows)."""
    tables = []
    for rows in (_upper_rows(), _lower_rows()):
        tables.append([
            DeviationRow(bid, expr, spec, sup_abs_deviation(spec, None, grid_n, tol), cf, cft)
            for bid, expr, spec, cf, cft in rows
        ])
    return tables[0], tables[1]
