"""Exact certification of one-sided polynomial bounds for trigonometric sums.

A mixed trigonometric polynomial f is bounded by replacing every sin/cos
factor with a Maclaurin truncation whose error sign is known, choosing
the direction of each truncation so the sum is a one-sided bound P of f.
The sign of P on a rational interval is then settled by Sturm's theorem
in exact rational arithmetic.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .polynomial import RationalPoly

DEFAULT_INTERVAL = (Fraction(0), Fraction(8, 5))
_VALID_HI_DIGITS = 6


class Trig(enum.Enum):
    SIN = "sin"
    COS = "cos"


class Direction(enum.Enum):
    UPPER = "upper"
    LOWER = "lower"

    def flipped(self) -> "Direction":
        return Direction.LOWER if self is Direction.UPPER else Direction.UPPER


class Sign(enum.Enum):
    POSITIVE = 1
    NEGATIVE = -1


class CertificateError(Exception):
    """A certification stage failed; ``stage`` names it, ``detail`` says why."""

    def __init__(self, stage: str, detail: str, certificate=None):
        super().__init__(f"[{stage}] {detail}")
        self.stage = stage
        self.detail = detail
        self.certificate = certificate


def _as_fraction(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


# ---------------------------------------------------------------- enclosures

@dataclass(frozen=True)
class Enclosure:
    target: Trig
    scale: Fraction
    degree: int
    direction: Direction
    valid_hi: Fraction
    poly: RationalPoly = field(compare=False)

    @property
    def first_omitted(self) -> int:
        n = self.degree + 1
        want_odd = self.target is Trig.SIN
        while (n % 2 == 1) != want_odd:
            n += 1
        return n

    def holds_at(self, x: Fraction) -> bool:
        """Term-ratio predicate: every omitted term shrinks from the first one on."""
        n0 = self.first_omitted
        return (self.scale * x) ** 2 < (n0 + 1) * (n0 + 2)

    def describe(self) -> str:
        k = "" if self.scale == 1 else f"{self.scale}"
        return f"{self.target.value}({k}x)"


def _series_coeff(target: Trig, k: Fraction, n: int) -> Fraction:
    if target is Trig.SIN:
        if n % 2 == 0:
            return Fraction(0)
        sign = -1 if (n // 2) % 2 else 1
    else:
        if n % 2 == 1:
            return Fraction(0)
        sign = -1 if (n // 2) % 2 else 1
    return sign * k**n / math.factorial(n)


def maclaurin(target: Trig, scale, degree: int) -> Tuple[RationalPoly, Enclosure]:
    """Truncated Maclaurin series of sin(kx) or cos(kx) and its error direction.

    The truncation overshoots (UPPER) when the first dropped term is
    negative and undershoots (LOWER) when it is positive, as long as the
    dropped terms decrease in magnitude; ``valid_hi`` is a rational lower
    approximation of the largest x where they do.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    k = _as_fraction(scale)
    if not k > 0:
        raise ValueError("scale must be a positive rational")
    poly = RationalPoly(_series_coeff(target, k, n) for n in range(degree + 1))

    probe = Enclosure(target, k, degree, Direction.UPPER, Fraction(0), poly)
    n0 = probe.first_omitted
    direction = Direction.UPPER if _series_coeff(target, k, n0) < 0 else Direction.LOWER

    # largest 10^-digits grid point strictly below sqrt((n0+1)(n0+2)) / k
    bound = (n0 + 1) * (n0 + 2)
    denom = 10**_VALID_HI_DIGITS
    v = math.isqrt(bound * denom * denom)
    if v * v == bound * denom * denom:
        v -= 1
    valid_hi = Fraction(v, denom) / k
    enc = Enclosure(target, k, degree, direction, valid_hi, poly)
    assert enc.holds_at(valid_hi)
    return poly, enc


@dataclass(frozen=True)
class BoundTerm:
    """multiplier * trig(scale x), with the trig factor replaced by an enclosure."""

    label: str
    multiplier: RationalPoly
    enclosure: Enclosure


# ---------------------------------------------------------------- Sturm

def sturm_chain(poly: RationalPoly) -> List[RationalPoly]:
    if poly.is_zero():
        raise ValueError("Sturm chain of the zero polynomial")
    chain = [poly.primitive_scale()]
    d = poly.derivative()
    if d.is_zero():
        return chain
    chain.append(d.primitive_scale())
    while True:
        r = -(chain[-2] % chain[-1])
        if r.is_zero():
            return chain
        chain.append(r.primitive_scale())


def sign_variations(chain: Sequence[RationalPoly], x: Fraction) -> int:
    signs = [v > 0 for v in (p(x) for p in chain) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(poly: RationalPoly, lo, hi) -> int:
    """Number of distinct real roots in (lo, hi]; lo must not be a root."""
    lo, hi = _as_fraction(lo), _as_fraction(hi)
    chain = sturm_chain(poly)
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def _strip_root(poly: RationalPoly, at: Fraction) -> Tuple[RationalPoly, int]:
    lin = RationalPoly([-at, 1])
    m = 0
    while not poly.is_zero() and poly(at) == 0:
        poly, r = divmod(poly, lin)
        assert r.is_zero()
        m += 1
    return poly, m


@dataclass(frozen=True)
class SturmCertificate:
    poly: RationalPoly
    interval: Tuple[Fraction, Fraction]
    claimed_sign: Sign
    root_count: int
    chain_length: int
    cofactor: RationalPoly
    lo_multiplicity: int = 0
    hi_multiplicity: int = 0
    midpoint_sign: Optional[Sign] = None

    @property
    def valid(self) -> bool:
        return self.root_count == 0 and self.midpoint_sign is self.claimed_sign

    def to_text(self) -> str:
        lo, hi = self.interval
        return "\n".join([
            f"poly: {self.poly.to_text()}",
            f"interval: ({lo}, {hi})",
            f"endpoint factors: (x - {lo})^{self.lo_multiplicity} (x - {hi})^{self.hi_multiplicity}",
            f"cofactor: {self.cofactor.to_text()}",
            f"chain_length: {self.chain_length}",
            f"root_count: {self.root_count}",
            f"claimed_sign: {self.claimed_sign.name.lower()}",
            f"valid: {str(self.valid).lower()}",
        ])


def sturm_sign(poly: RationalPoly, lo, hi, claimed_sign: Sign) -> SturmCertificate:
    """Prove poly has constant sign ``claimed_sign`` on the open interval (lo, hi).

    Roots sitting exactly on an endpoint are divided out first; their
    factors have known sign inside the interval.  Raises CertificateError
    when a root lies inside or the sign is wrong.
    """
    lo, hi = _as_fraction(lo), _as_fraction(hi)
    if not lo < hi:
        raise ValueError("sturm_sign needs lo < hi")
    if poly.is_zero():
        raise ValueError("the zero polynomial has no sign")

    cof, m_lo = _strip_root(poly, lo)
    cof, m_hi = _strip_root(cof, hi)
    chain = sturm_chain(cof)
    roots = sign_variations(chain, lo) - sign_variations(chain, hi)
    mid = poly((lo + hi) / 2)
    mid_sign = None if mid == 0 else (Sign.POSITIVE if mid > 0 else Sign.NEGATIVE)
    cert = SturmCertificate(
        poly=poly, interval=(lo, hi), claimed_sign=claimed_sign, root_count=roots,
        chain_length=len(chain), cofactor=cof, lo_multiplicity=m_lo,
        hi_multiplicity=m_hi, midpoint_sign=mid_sign,
    )
    if roots != 0:
        raise CertificateError("sturm", f"{roots} root(s) of {poly} inside ({lo}, {hi})", cert)
    if mid_sign is not claimed_sign:
        raise CertificateError(
            "sturm", f"{poly} at midpoint {(lo + hi) / 2} is {mid}, not {claimed_sign.name.lower()}",
            cert,
        )
    return cert


# ---------------------------------------------------------------- combination

def _multiplier_sign(mult: RationalPoly, lo: Fraction, hi: Fraction) -> Sign:
    if mult.is_zero():
        raise CertificateError("combine", "zero multiplier")
    if mult.is_monomial() and (lo >= 0 or mult.low_order() == 0):
        return Sign.POSITIVE if mult.leading > 0 else Sign.NEGATIVE
    for s in (Sign.POSITIVE, Sign.NEGATIVE):
        try:
            sturm_sign(mult, lo, hi, s)
            return s
        except CertificateError:
            pass
    raise CertificateError("combine", f"multiplier {mult} changes sign on ({lo}, {hi})")


def combine_bound(terms: Sequence[BoundTerm], direction: Direction,
                  exact: Optional[RationalPoly] = None,
                  interval=DEFAULT_INTERVAL) -> RationalPoly:
    """Sum multiplier * enclosure + exact into a one-sided bound of the MTP sum.

    For an UPPER bound a positive multiplier needs an UPPER enclosure and a
    negative one a LOWER enclosure; the reverse for a LOWER bound.
    """
    lo, hi = (_as_fraction(v) for v in interval)
    total = exact if exact is not None else RationalPoly()
    for term in terms:
        enc = term.enclosure
        if not enc.valid_hi >= hi:
            raise CertificateError(
                "enclosure", f"{term.label}: truncation only certified up to {enc.valid_hi} < {hi}"
            )
        sign = _multiplier_sign(term.multiplier, lo, hi)
        need = direction if sign is Sign.POSITIVE else direction.flipped()
        if enc.direction is not need:
            raise CertificateError(
                "combine",
                f"{term.label}: degree-{enc.degree} {enc.describe()} truncation is "
                f"{enc.direction.value}, but {'an' if need is Direction.UPPER else 'a'} "
                f"{need.value} one is needed",
            )
        total = total + term.multiplier * enc.poly
    return total


# ---------------------------------------------------------------- lemmas

@dataclass(frozen=True)
class _TermSpec:
    label: str
    multiplier: RationalPoly
    target: Trig
    scale: Fraction
    degree: int


@dataclass(frozen=True)
class LemmaRecipe:
    name: str
    formula: str
    terms: Tuple[_TermSpec, ...]
    exact: RationalPoly
    direction: Direction
    claimed_sign: Sign
    evaluate: Callable = field(compare=False)


_X = RationalPoly.x()
_HALF = Fraction(1, 2)

LEMMAS: Dict[str, LemmaRecipe] = {
    "S1_h1_negative": LemmaRecipe(
        name="S1_h1_negative",
        formula="x cos(x) + 1/2 sin(2x) + x^2 sin(x) - sin(x) - x < 0",
        terms=(
            _TermSpec("x*cos(x)", _X, Trig.COS, Fraction(1), 4),
            _TermSpec("1/2*sin(2x)", RationalPoly([_HALF]), Trig.SIN, Fraction(2), 9),
            _TermSpec("x^2*sin(x)", _X**2, Trig.SIN, Fraction(1), 5),
            _TermSpec("-sin(x)", RationalPoly([-1]), Trig.SIN, Fraction(1), 7),
        ),
        exact=-_X,
        direction=Direction.UPPER,
        claimed_sign=Sign.NEGATIVE,
        evaluate=lambda x: (x * np.cos(x) + 0.5 * np.sin(2 * x) + x * x * np.sin(x)
                            - np.sin(x) - x),
    ),
    "S2_h1_positive": LemmaRecipe(
        name="S2_h1_positive",
        formula="cos(2x) + 1/2 x sin(2x) + x^2 - 1 > 0",
        terms=(
            _TermSpec("cos(2x)", RationalPoly([1]), Trig.COS, Fraction(2), 6),
            _TermSpec("1/2*x*sin(2x)", _HALF * _X, Trig.SIN, Fraction(2), 7),
        ),
        exact=_X**2 - 1,
        direction=Direction.LOWER,
        claimed_sign=Sign.POSITIVE,
        evaluate=lambda x: np.cos(2 * x) + 0.5 * x * np.sin(2 * x) + x * x - 1,
    ),
}

# degree override used by the negative-control hook
NEGATIVE_CONTROL = ("S1_h1_negative", {"x^2*sin(x)": 3})


@dataclass(frozen=True)
class CertificateBundle:
    lemma: str
    formula: str
    interval: Tuple[Fraction, Fraction]
    direction: Direction
    terms: Tuple[BoundTerm, ...]
    exact: RationalPoly
    combined: RationalPoly
    certificate: SturmCertificate

    @property
    def valid(self) -> bool:
        lo, hi = self.interval
        return self.certificate.valid and all(t.enclosure.valid_hi >= hi for t in self.terms)

    def to_dict(self) -> dict:
        lo, hi = self.interval
        cert = self.certificate
        return {
            "lemma": self.lemma,
            "claim": self.formula,
            "interval": [str(lo), str(hi)],
            "bound_direction": self.direction.value,
            "enclosures": [
                {
                    "term": t.label,
                    "target": t.enclosure.describe(),
                    "degree": t.enclosure.degree,
                    "direction": t.enclosure.direction.value,
                    "valid_hi": str(t.enclosure.valid_hi),
                    "covers_interval": t.enclosure.valid_hi >= hi,
                }
                for t in self.terms
            ],
            "exact_part": self.exact.to_text(),
            "combined": self.combined.to_text(),
            "combined_coeffs": [str(c) for c in self.combined.coeffs],
            "sturm": {
                "cofactor": cert.cofactor.to_text(),
                "lo_multiplicity": cert.lo_multiplicity,
                "hi_multiplicity": cert.hi_multiplicity,
                "chain_length": cert.chain_length,
                "root_count": cert.root_count,
                "claimed_sign": cert.claimed_sign.name.lower(),
            },
            "valid": self.valid,
        }

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [
            f"lemma: {d['lemma']}",
            f"claim: {d['claim']}",
            f"interval: ({d['interval'][0]}, {d['interval'][1]})",
            f"bound: {d['bound_direction']}",
        ]
        for e in d["enclosures"]:
            lines.append(
                f"enclosure: {e['term']} via {e['target']} degree {e['degree']} "
                f"{e['direction']} valid_hi {e['valid_hi']}"
            )
        lines.append(f"exact part: {d['exact_part']}")
        lines.append(f"combined: {d['combined']}")
        s = d["sturm"]
        lines.append(
            f"sturm: cofactor {s['cofactor']}; endpoint multiplicities "
            f"{s['lo_multiplicity']}/{s['hi_multiplicity']}; chain length "
            f"{s['chain_length']}; root_count {s['root_count']}; sign {s['claimed_sign']}"
        )
        lines.append(f"valid: {str(d['valid']).lower()}")
        return "\n".join(lines)


def certify_lemma(which: str, degrees: Optional[Mapping[str, int]] = None,
                  interval=DEFAULT_INTERVAL) -> CertificateBundle:
    """Run enclosure, combination and Sturm stages for a named sign lemma.

    ``degrees`` overrides truncation degrees by term label.  Any failing
    stage raises CertificateError carrying the stage name.
    """
    try:
        recipe = LEMMAS[which]
    except KeyError:
        raise ValueError(f"unknown lemma {which!r}; expected one of {sorted(LEMMAS)}") from None
    degrees = dict(degrees or {})
    unknown = set(degrees) - {t.label for t in recipe.terms}
    if unknown:
        raise ValueError(f"no terms named {sorted(unknown)} in {which}")
    lo, hi = (_as_fraction(v) for v in interval)

    terms = []
    for spec in recipe.terms:
        _, enc = maclaurin(spec.target, spec.scale, degrees.get(spec.label, spec.degree))
        terms.append(BoundTerm(spec.label, spec.multiplier, enc))

    combined = combine_bound(terms, recipe.direction, recipe.exact, (lo, hi))
    cert = sturm_sign(combined, lo, hi, recipe.claimed_sign)
    return CertificateBundle(
        lemma=which, formula=recipe.formula, interval=(lo, hi), direction=recipe.direction,
        terms=tuple(terms), exact=recipe.exact, combined=combined, certificate=cert,
    )
