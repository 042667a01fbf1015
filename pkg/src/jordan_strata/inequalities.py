"""Grid checks of Jordan-type double inequalities on (0, pi/2]."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .family import HALF_PI, PI, TWO_OVER_PI, coeff_A, coeff_B, sinc
from .minimax import critical_constants

# roundoff allowance for the strict interior comparisons
INTERIOR_SLACK = 1e-14
# x = pi/2 must be an equality to this
ENDPOINT_EQ_TOL = 1e-12


class RangeError(ValueError):
    """Exponents fall outside both admissible ranges of the double inequality."""


def jordan_bound(p, q, x):
    """2/pi + p (pi^q - (2x)^q)."""
    x = np.asarray(x, dtype=float)
    return TWO_OVER_PI + p * (PI**q - (2 * x) ** q)


@dataclass(frozen=True)
class DoubleBound:
    name: str
    lower: Tuple[float, float]  # (p, q) of the bound below sinc
    upper: Tuple[float, float]


@dataclass(frozen=True)
class Counterexample:
    name: str
    x: float
    side: str
    params: Tuple[float, float]
    lhs: float
    rhs: float


def unit_grid(n: int) -> np.ndarray:
    """n points (pi/2) i / n, i = 1..n; the last one is pi/2 itself."""
    grid = HALF_PI * np.arange(1, n + 1) / n
    grid[-1] = HALF_PI
    return grid


def check_double_bound(bound: DoubleBound, xs: Sequence[float]) -> Optional[Counterexample]:
    """First grid point where lower <= sinc <= upper fails, or None."""
    xs = np.asarray(xs, dtype=float)
    s = np.asarray(sinc(xs))
    lo = jordan_bound(*bound.lower, xs)
    hi = jordan_bound(*bound.upper, xs)
    at_end = np.isclose(xs, HALF_PI, rtol=0, atol=1e-15)
    bad_lo = np.where(at_end, np.abs(lo - s) > ENDPOINT_EQ_TOL, lo > s + INTERIOR_SLACK)
    bad_hi = np.where(at_end, np.abs(hi - s) > ENDPOINT_EQ_TOL, s > hi + INTERIOR_SLACK)
    for side, bad, vals, params in (("lower", bad_lo, lo, bound.lower),
                                    ("upper", bad_hi, hi, bound.upper)):
        idx = np.nonzero(bad)[0]
        if idx.size:
            i = idx[0]
            return Counterexample(bound.name, float(xs[i]), side, params, float(vals[i]), float(s[i]))
    return None


def classical_bounds(max_n: int = 10) -> List[DoubleBound]:
    """The linear, quadratic, cubic and quartic bounds, and the integer-n family."""
    out = [
        DoubleBound("linear", (coeff_A(1), 1), (coeff_B(1), 1)),
        DoubleBound("quadratic", (1 / PI**3, 2), ((PI - 2) / PI**3, 2)),
        DoubleBound("cubic", (2 / (3 * PI**4), 3), ((PI - 2) / PI**4, 3)),
        DoubleBound("quartic", (1 / (2 * PI**5), 4), ((PI - 2) / PI**5, 4)),
    ]
    for n in range(2, max_n + 1):
        out.append(DoubleBound(f"integer n={n}", (coeff_B(n), n), (coeff_A(n), n)))
    return out


def statement_regime(q1: float, q2: float) -> str:
    """'i' when the B-bound is above and the A-bound below sinc, 'ii' when reversed."""
    cc = critical_constants()
    if 0 < q1 <= cc.qB1 and 0 < q2 <= cc.qA1:
        return "i"
    if q1 >= cc.qB2 and q2 >= cc.qA2:
        return "ii"
    raise RangeError(f"(q1, q2) = ({q1}, {q2}) is outside both admissible ranges")


def generalized_bound(q1: float, q2: float) -> DoubleBound:
    """B(q1)-bound and A(q2)-bound, oriented according to the regime."""
    b = (coeff_B(q1), q1)
    a = (coeff_A(q2), q2)
    if statement_regime(q1, q2) == "i":
        return DoubleBound(f"B({q1:g}) above, A({q2:g}) below", lower=a, upper=b)
    return DoubleBound(f"B({q1:g}) below, A({q2:g}) above", lower=b, upper=a)


def verify_statement3(q1: float, q2: float, n: int = 10_000) -> bool:
    """Check the generalized double inequality on an n-point grid of (0, pi/2].

    Raises RangeError when (q1, q2) is in neither admissible range.
    """
    bound = generalized_bound(q1, q2)
    return check_double_bound(bound, unit_grid(n)) is None


def random_exponent_pairs(rng: np.random.Generator, count: int,
                          q_max: float = 8.0) -> List[Tuple[float, float]]:
    """Draw admissible (q1, q2) pairs, half from each regime."""
    cc = critical_constants()
    pairs = []
    for i in range(count):
        if i % 2 == 0:
            pairs.append((float(rng.uniform(0.05, cc.qB1)), float(rng.uniform(0.05, cc.qA1))))
        else:
            pairs.append((float(rng.uniform(cc.qB2, q_max)), float(rng.uniform(cc.qA2, q_max))))
    return pairs


def run_checks(checks: Sequence[DoubleBound], n: int,
               on_result: Callable[[DoubleBound, Optional[Counterexample]], None] = None
               ) -> List[Counterexample]:
    xs = unit_grid(n)
    failures = []
    for bound in checks:
        cex = check_double_bound(bound, xs)
        if on_result is not None:
            on_result(bound, cex)
        if cex is not None:
            failures.append(cex)
    return failures
