"""Dense univariate polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, List, Tuple, Union

Number = Union[int, Fraction]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"exact rational coefficient required, got {type(c).__name__}")


class RationalPoly:
    """Polynomial sum_i coeffs[i] x^i over Q.

    Coefficients are stored lowest degree first with trailing zeros
    stripped, so the zero polynomial has an empty coefficient tuple.
    Instances are immutable and hashable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_frac(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c: Tuple[Fraction, ...] = tuple(c)

    @classmethod
    def monomial(cls, coeff, power: int) -> "RationalPoly":
        return cls([0] * power + [coeff])

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls([0, 1])

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    @property
    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, i: int) -> Fraction:
        return self._c[i] if 0 <= i < len(self._c) else Fraction(0)

    def low_order(self) -> int:
        """Multiplicity of the root at 0 (index of the lowest nonzero term)."""
        for i, c in enumerate(self._c):
            if c != 0:
                return i
        raise ValueError("zero polynomial has no lowest term")

    def is_monomial(self) -> bool:
        return sum(1 for c in self._c if c != 0) == 1

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0 * x
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == RationalPoly([other])._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def _coerce(self, other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return other
        return RationalPoly([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self._c), len(other._c))
        return RationalPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self._c)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(other._c):
                out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = RationalPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(0, len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c == 0:
                continue
            quot[k - dq] = c
            for j, b in enumerate(other._c):
                rem[k - dq + j] -= c * b
        return RationalPoly(quot), RationalPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "RationalPoly":
        return RationalPoly(i * c for i, c in enumerate(self._c) if i > 0)

    def shift_down(self, m: int) -> "RationalPoly":
        """Divide by x^m; the low m coefficients must vanish."""
        if any(c != 0 for c in self._c[:m]):
            raise ValueError(f"polynomial is not divisible by x^{m}")
        return RationalPoly(self._c[m:])

    def primitive_scale(self) -> "RationalPoly":
        """Positive rescaling to leading coefficient +-1 (keeps every sign)."""
        if self.is_zero():
            return self
        s = abs(self.leading)
        return RationalPoly(c / s for c in self._c)

    def to_text(self, var: str = "x") -> str:
        """Canonical form, highest degree first, reduced fractions, no decimals."""
        if self.is_zero():
            return "0"
        parts: List[str] = []
        for i in range(len(self._c) - 1, -1, -1):
            c = self._c[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"RationalPoly({self.to_text()!r})"

    def __str__(self):
        return self.to_text()
