"""Bracketing root finding and extremum location on (0, pi/2)."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np

from .family import (
    HALF_PI,
    FamilySpec,
    Interval01,
    dphi_dx,
    endpoint_interval,
    phi,
    sinc_derivative,
)

DEFAULT_GRID_N = 1024
DEFAULT_TOL = 1e-12
WINDOW = (1e-9, HALF_PI - 1e-9)

# Extra scan points hugging both endpoints. Critical points of members close
# to a boundary constant sit within ~1e-10 of pi/2 or far below 1e-9 near 0,
# where a uniform grid never sees them.
_EDGE_ZERO = np.logspace(-150, -1.5, 300)
_EDGE_PI2 = HALF_PI - np.logspace(-10, -1.5, 120)


class BracketError(ValueError):
    """The supplied bracket does not straddle a sign change."""


class ExtremumKind(enum.Enum):
    MAX = "max"
    MIN = "min"


@dataclass(frozen=True)
class ExtremumRecord:
    x: float
    value: float
    kind: ExtremumKind


@dataclass(frozen=True)
class RootRecord:
    x: float
    residual: float
    bracket: Tuple[float, float]
    iterations: int = 0


def _evaluate(f: Callable, xs: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(f(xs), dtype=float)
    except (TypeError, ValueError):
        vals = None
    if vals is None or vals.shape != xs.shape:
        vals = np.array([f(float(x)) for x in xs], dtype=float)
    return vals


def sign_brackets(f: Callable, xs: Sequence[float], floor=None) -> List[Tuple[float, float]]:
    """Pairs of the sorted points ``xs`` where f strictly changes sign.

    Points with ``|f| <= floor`` are treated as sign-indeterminate and skipped,
    so a bracket may span several grid cells.
    """
    xs = np.asarray(xs, dtype=float)
    vals = _evaluate(f, xs)
    s = np.sign(vals)
    if floor is not None:
        s[np.abs(vals) <= floor] = 0
    keep = np.nonzero(s)[0]
    s = s[keep]
    idx = np.nonzero(s[:-1] * s[1:] < 0)[0]
    return [(float(xs[keep[i]]), float(xs[keep[i + 1]])) for i in idx]


def bracket_scan(f: Callable, lo: float, hi: float, n: int) -> List[Tuple[float, float]]:
    """Scan n uniformly spaced points strictly inside (lo, hi) for sign changes."""
    if not lo < hi:
        raise ValueError("bracket_scan needs lo < hi")
    if n < 2:
        raise ValueError("bracket_scan needs n >= 2")
    xs = np.linspace(lo, hi, n + 2)[1:-1]
    return sign_brackets(f, xs)


def bisect(f: Callable, bracket: Tuple[float, float], tol: float = DEFAULT_TOL) -> RootRecord:
    """Plain bisection until the bracket is no wider than ``tol``."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    lo, hi = float(bracket[0]), float(bracket[1])
    if lo > hi:
        lo, hi = hi, lo
    flo, fhi = float(f(lo)), float(f(hi))
    if flo == 0.0:
        return RootRecord(lo, 0.0, (lo, hi))
    if fhi == 0.0:
        return RootRecord(hi, 0.0, (lo, hi))
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise BracketError(f"f has the same sign at both ends of ({lo!r}, {hi!r})")

    max_iter = max(0, math.ceil(math.log2((hi - lo) / tol))) + 2
    it = 0
    while hi - lo > tol and it < max_iter:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # bracket is down to adjacent floats
        fmid = float(f(mid))
        it += 1
        if fmid == 0.0:
            lo = hi = mid
            break
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    x = 0.5 * (lo + hi)
    return RootRecord(x, abs(float(f(x))), (lo, hi), it)


def _scan_grid(grid_n: int) -> np.ndarray:
    uniform = np.linspace(WINDOW[0], WINDOW[1], grid_n)
    return np.unique(np.concatenate([_EDGE_ZERO, uniform, _EDGE_PI2]))


def find_extrema(spec: FamilySpec, grid_n: int = DEFAULT_GRID_N,
                 tol: float = DEFAULT_TOL) -> List[ExtremumRecord]:
    """All interior extrema of phi(spec, .), classified by the derivative's sign flip."""
    if grid_n < 64:
        raise ValueError("grid_n must be at least 64")

    def deriv(x):
        return dphi_dx(spec, x)

    xs = _scan_grid(grid_n)
    # the derivative is a near-cancelling sum of terms the size of sinc'(x)
    floor = 64 * np.finfo(float).eps * np.abs(sinc_derivative(xs, 1))
    out = []
    for a, b in sign_brackets(deriv, xs, floor):
        root = bisect(deriv, (a, b), tol)
        kind = ExtremumKind.MAX if deriv(a) > 0 else ExtremumKind.MIN
        out.append(ExtremumRecord(root.x, phi(spec, root.x), kind))
    return sorted(out, key=lambda e: e.x)


def sup_abs_deviation(spec: FamilySpec, interval: Interval01 = None,
                      grid_n: int = DEFAULT_GRID_N, tol: float = DEFAULT_TOL) -> float:
    """sup over (0, pi/2) of |phi|, from interior extrema and the endpoint limits."""
    if interval is None:
        interval = endpoint_interval(spec)
    candidates = [abs(interval.lo_limit), abs(interval.hi_limit)]
    candidates += [abs(e.value) for e in find_extrema(spec, grid_n, tol)]
    return max(candidates)
