"""Truncated formal power series with exact rational coefficients.

A series stores its coefficients for degrees 0..trunc-1 and nothing else.
Binary operations truncate to the shorter operand; no operation ever invents
coefficients beyond the degrees it can compute exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    NonzeroInnerConstantError,
    NotOrderOneError,
    ParseError,
    TruncationExceededError,
    ZeroConstantTermError,
)

Scalar = Union[int, Fraction]


def rat(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce an int, a 'p/q' string, or a Fraction to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational literal: {value!r}") from exc
    raise ParseError(f"cannot interpret {value!r} as a rational")


def rat_str(value: Fraction) -> str:
    """Render a rational as 'p/q', or 'p' when the denominator is 1."""
    return str(value)


@dataclass(frozen=True)
class PowerSeries:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) < 1:
            raise ValueError("truncation must be at least 1")
        if not all(isinstance(c, Fraction) for c in self.coeffs):
            object.__setattr__(self, "coeffs", tuple(rat(c) for c in self.coeffs))

    @property
    def trunc(self) -> int:
        return len(self.coeffs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def of(cls, values: Iterable[Union[int, str, Fraction]], trunc: int | None = None) -> "PowerSeries":
        """Series of a polynomial: the given coefficients, zero-padded to trunc."""
        coeffs = [rat(v) for v in values]
        if trunc is not None:
            if trunc < 1:
                raise ValueError("truncation must be at least 1")
            coeffs = coeffs[:trunc] + [Fraction(0)] * (trunc - len(coeffs))
        elif not coeffs:
            coeffs = [Fraction(0)]
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, value: Union[int, Fraction], trunc: int) -> "PowerSeries":
        return cls.of([value], trunc)

    @classmethod
    def zero(cls, trunc: int) -> "PowerSeries":
        return cls.of([], trunc)

    @classmethod
    def one(cls, trunc: int) -> "PowerSeries":
        return cls.of([1], trunc)

    @classmethod
    def x(cls, trunc: int) -> "PowerSeries":
        return cls.of([0, 1], trunc)

    @classmethod
    def geometric(cls, trunc: int) -> "PowerSeries":
        """1/(1-x): all coefficients equal to 1."""
        return cls(tuple(Fraction(1) for _ in range(trunc)))

    @classmethod
    def binomial(cls, exponent: Union[int, Fraction], trunc: int) -> "PowerSeries":
        """(1+x)**exponent for any rational exponent, via C(r,k) coefficients."""
        r = rat(exponent)
        coeffs = [Fraction(1)]
        for k in range(1, trunc):
            coeffs.append(coeffs[-1] * (r - k + 1) / k)
        return cls(tuple(coeffs))

    @classmethod
    def poly_quotient(
        cls,
        numerator: Sequence[Union[int, Fraction]],
        denominator: Sequence[Union[int, Fraction]],
        trunc: int,
    ) -> "PowerSeries":
        """Expand a rational function given by polynomial coefficient lists."""
        num = cls.of(numerator, trunc)
        den = cls.of(denominator, trunc)
        return num * den.mul_inverse()

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.trunc, other.trunc)
        return PowerSeries(tuple(self.coeffs[k] + other.coeffs[k] for k in range(n)))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.trunc, other.trunc)
        return PowerSeries(tuple(self.coeffs[k] - other.coeffs[k] for k in range(n)))

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(tuple(-c for c in self.coeffs))

    def __mul__(self, other: Union["PowerSeries", Scalar]) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            n = min(self.trunc, other.trunc)
            a, b = self.coeffs, other.coeffs
            out = [Fraction(0)] * n
            for i in range(n):
                ai = a[i]
                if ai == 0:
                    continue
                for j in range(n - i):
                    bj = b[j]
                    if bj:
                        out[i + j] += ai * bj
            return PowerSeries(tuple(out))
        c = rat(other)
        return PowerSeries(tuple(c * v for v in self.coeffs))

    def __rmul__(self, other: Scalar) -> "PowerSeries":
        return self.__mul__(other)

    def __truediv__(self, other: Scalar) -> "PowerSeries":
        c = rat(other)
        if c == 0:
            raise ZeroDivisionError("division of a series by zero")
        return self * (Fraction(1) / c)

    def __pow__(self, exponent: int) -> "PowerSeries":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("series powers are defined for nonnegative integers")
        result = PowerSeries.one(self.trunc)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_inverse(self) -> "PowerSeries":
        """Series b with self*b = 1; needs a nonzero constant term."""
        a = self.coeffs
        if a[0] == 0:
            raise ZeroConstantTermError("cannot invert a series of positive order")
        n = self.trunc
        inv0 = Fraction(1) / a[0]
        out = [inv0] + [Fraction(0)] * (n - 1)
        for k in range(1, n):
            acc = Fraction(0)
            for i in range(1, k + 1):
                if a[i]:
                    acc += a[i] * out[k - i]
            out[k] = -acc * inv0
        return PowerSeries(tuple(out))

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """self(inner(x)); inner must have zero constant term."""
        if inner.coeffs[0] != 0:
            raise NonzeroInnerConstantError("inner series must have zero constant term")
        n = min(self.trunc, inner.trunc)
        inner = inner.truncate(n)
        result = PowerSeries.constant(self.coeffs[n - 1], n)
        for k in range(n - 2, -1, -1):
            result = result * inner + PowerSeries.constant(self.coeffs[k], n)
        return result

    def comp_inverse(self) -> "PowerSeries":
        """Series g with self(g(x)) = x; needs order exactly one.

        Solved degree by degree: the degree-k coefficient of self(g) is
        linear in g_k with slope self.coeffs[1], everything else known.
        """
        a = self.coeffs
        n = self.trunc
        if a[0] != 0 or n < 2 or a[1] == 0:
            raise NotOrderOneError("compositional inverse needs order exactly 1")
        g = [Fraction(0)] * n
        g[1] = Fraction(1) / a[1]
        for k in range(2, n):
            partial = self.compose(PowerSeries(tuple(g)))
            g[k] = -partial.coeffs[k] / a[1]
        return PowerSeries(tuple(g))

    # -- structural helpers ------------------------------------------------

    def truncate(self, trunc: int) -> "PowerSeries":
        if trunc > self.trunc:
            raise TruncationExceededError(
                f"cannot extend truncation {self.trunc} to {trunc}"
            )
        if trunc < 1:
            raise ValueError("truncation must be at least 1")
        return PowerSeries(self.coeffs[:trunc])

    def shift_up(self) -> "PowerSeries":
        """Multiply by x, dropping the top coefficient to keep trunc fixed."""
        return PowerSeries((Fraction(0),) + self.coeffs[:-1])

    def shift_down(self) -> "PowerSeries":
        """Divide by x; the constant term must vanish. Truncation drops by one."""
        if self.coeffs[0] != 0:
            raise ZeroConstantTermError("cannot divide by x: nonzero constant term")
        if self.trunc < 2:
            raise TruncationExceededError("no coefficients left after shifting down")
        return PowerSeries(self.coeffs[1:])

    def negate_variable(self) -> "PowerSeries":
        """Substitute x -> -x."""
        return PowerSeries(tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)))

    def coefficient(self, k: int) -> Fraction:
        if k < 0:
            return Fraction(0)
        if k >= self.trunc:
            raise TruncationExceededError(f"coefficient {k} beyond truncation {self.trunc}")
        return self.coeffs[k]

    def order(self) -> int | None:
        """Index of the first nonzero coefficient, or None if all stored are zero."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def agrees_with(self, other: "PowerSeries") -> bool:
        """Equality on the common truncation."""
        n = min(self.trunc, other.trunc)
        return self.coeffs[:n] == other.coeffs[:n]

    # -- serialization -----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"trunc": self.trunc, "coeffs": [rat_str(c) for c in self.coeffs]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "PowerSeries":
        try:
            trunc = obj["trunc"]
            coeffs = obj["coeffs"]
        except (TypeError, KeyError) as exc:
            raise ParseError("series object needs 'trunc' and 'coeffs'") from exc
        series = cls.of([rat(c) for c in coeffs])
        if series.trunc != trunc:
            raise ParseError(f"series declares trunc {trunc} but has {series.trunc} coefficients")
        return series

    def __str__(self) -> str:
        return "[" + ", ".join(rat_str(c) for c in self.coeffs) + "]"
