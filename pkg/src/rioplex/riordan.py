"""Riordan matrices T(alpha|omega) and exact finite lower-triangular matrices.

Column j of T(alpha|omega) has generating function x^j * alpha / omega^(j+1),
so the entry at (i, j) is the degree-i coefficient of that series.  The pair
carries a truncation: entries are available for indices strictly below it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import ParseError, TruncationExceededError, ZeroConstantTermError
from .fps import PowerSeries, rat, rat_str


@dataclass(frozen=True)
class FiniteMatrix:
    """Square lower-triangular matrix with exact rational entries."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        if n == 0:
            raise ValueError("matrix must have at least one row")
        for i, row in enumerate(self.rows):
            if len(row) != n:
                raise ValueError("matrix must be square")
            if any(row[j] != 0 for j in range(i + 1, n)):
                raise ValueError("support above the diagonal")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Union[int, Fraction, str]]]) -> "FiniteMatrix":
        """Build from possibly ragged rows; missing entries above the diagonal are 0."""
        n = len(rows)
        full = []
        for row in rows:
            vals = [rat(v) for v in row]
            if len(vals) > n:
                raise ValueError("row longer than matrix order")
            full.append(tuple(vals + [Fraction(0)] * (n - len(vals))))
        return cls(tuple(full))

    @classmethod
    def identity(cls, order: int) -> "FiniteMatrix":
        return cls(
            tuple(
                tuple(Fraction(1 if i == j else 0) for j in range(order))
                for i in range(order)
            )
        )

    @property
    def order(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def __matmul__(self, other: "FiniteMatrix") -> "FiniteMatrix":
        if self.order != other.order:
            raise ValueError("orders differ")
        n = self.order
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = Fraction(0)
                for k in range(j, i + 1):
                    a = self.rows[i][k]
                    if a:
                        acc += a * other.rows[k][j]
                row.append(acc)
            out.append(tuple(row))
        return FiniteMatrix(tuple(out))

    def mat_vec(self, vector: Sequence[Union[int, Fraction]]) -> tuple[Fraction, ...]:
        if len(vector) != self.order:
            raise ValueError("vector length differs from matrix order")
        vec = [rat(v) for v in vector]
        return tuple(
            sum((self.rows[i][j] * vec[j] for j in range(i + 1)), Fraction(0))
            for i in range(self.order)
        )

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.rows[i][j] for i in range(self.order))

    def is_identity(self) -> bool:
        return all(
            self.rows[i][j] == (1 if i == j else 0)
            for i in range(self.order)
            for j in range(i + 1)
        )

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self.rows[i][i] for i in range(self.order))

    def to_json_obj(self) -> dict:
        return {
            "order": self.order,
            "rows": [[rat_str(v) for v in row] for row in self.rows],
        }

    def to_csv_text(self) -> str:
        return "\n".join(",".join(rat_str(v) for v in row) for row in self.rows) + "\n"


class RiordanPair:
    """A Riordan matrix represented by its defining series.

    Column generating functions are computed lazily and cached; the cache is
    write-once so concurrent readers at worst redo identical work.
    """

    __slots__ = ("alpha", "omega", "trunc", "_columns", "_omega_inv")

    def __init__(self, alpha: PowerSeries, omega: PowerSeries, trunc: int | None = None):
        if alpha.coeffs[0] == 0:
            raise ZeroConstantTermError("alpha must have nonzero constant term")
        if omega.coeffs[0] == 0:
            raise ZeroConstantTermError("omega must have nonzero constant term")
        known = min(alpha.trunc, omega.trunc)
        if trunc is None:
            trunc = known
        if trunc < 1 or trunc > known:
            raise TruncationExceededError(
                f"pair truncation {trunc} exceeds series knowledge {known}"
            )
        self.alpha = alpha
        self.omega = omega
        self.trunc = trunc
        self._columns: list[PowerSeries] = []
        self._omega_inv: PowerSeries | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def pascal(cls, trunc: int) -> "RiordanPair":
        return cls(PowerSeries.one(trunc), PowerSeries.of([1, -1], trunc))

    @classmethod
    def identity(cls, trunc: int) -> "RiordanPair":
        return cls(PowerSeries.one(trunc), PowerSeries.one(trunc))

    # -- entry evaluation ----------------------------------------------------

    def _omega_inverse(self) -> PowerSeries:
        if self._omega_inv is None:
            self._omega_inv = self.omega.mul_inverse()
        return self._omega_inv

    def _column(self, j: int) -> PowerSeries:
        cols = self._columns
        if not cols:
            cols.append(self.alpha * self._omega_inverse())
        ratio = self._omega_inverse().shift_up()
        while len(cols) <= j:
            cols.append(cols[-1] * ratio)
        return cols[j]

    def entry(self, i: int, j: int) -> Fraction:
        if i < 0 or j < 0:
            raise ValueError("indices must be nonnegative")
        if i >= self.trunc:
            raise TruncationExceededError(f"row {i} beyond truncation {self.trunc}")
        if j > i:
            return Fraction(0)
        return self._column(j).coeffs[i]

    def finite(self, n: int) -> FiniteMatrix:
        """The leading principal submatrix of order n+1."""
        if n >= self.trunc:
            raise TruncationExceededError(f"order {n + 1} beyond truncation {self.trunc}")
        cols = [self._column(j) for j in range(n + 1)]
        rows = tuple(
            tuple(cols[j].coeffs[i] if j <= i else Fraction(0) for j in range(n + 1))
            for i in range(n + 1)
        )
        return FiniteMatrix(rows)

    # -- group structure -----------------------------------------------------

    def x_over_omega(self) -> PowerSeries:
        return self._omega_inverse().shift_up()

    def multiply(self, other: "RiordanPair") -> "RiordanPair":
        inner = self.x_over_omega()
        alpha = self.alpha * other.alpha.compose(inner)
        omega = self.omega * other.omega.compose(inner)
        return RiordanPair(alpha, omega, min(self.trunc, other.trunc, alpha.trunc, omega.trunc))

    def __matmul__(self, other: "RiordanPair") -> "RiordanPair":
        return self.multiply(other)

    def inverse(self) -> "RiordanPair":
        """The group inverse; the known truncation shrinks by one degree."""
        g = self.x_over_omega().comp_inverse()
        a_series = g.shift_down().mul_inverse()
        alpha = self.alpha.compose(g).mul_inverse()
        trunc = min(alpha.trunc, a_series.trunc, self.trunc)
        return RiordanPair(alpha.truncate(trunc), a_series.truncate(trunc))

    def a_sequence(self) -> PowerSeries:
        """The series A with x/A the compositional inverse of x/omega."""
        g = self.x_over_omega().comp_inverse()
        return g.shift_down().mul_inverse()

    def ftrm(self, zeta: PowerSeries) -> PowerSeries:
        """Action on a column vector: (alpha/omega) * zeta(x/omega)."""
        return self.alpha * self._omega_inverse() * zeta.compose(self.x_over_omega())

    def row_polynomials(self, n: int) -> list[tuple[Fraction, ...]]:
        """Coefficients of the first n+1 row polynomials.

        Also replays the row recurrence driven by alpha and omega and checks
        it against the matrix rows; a mismatch would mean corrupted state.
        """
        matrix = self.finite(n)
        rows = [tuple(matrix.rows[i][: i + 1]) for i in range(n + 1)]
        w = self.omega.coeffs
        a = self.alpha.coeffs
        for m in range(1, n + 1):
            prev = rows[m - 1]
            expect = [Fraction(0)] * (m + 1)
            for k, c in enumerate(prev):
                expect[k + 1] += c / w[0]
                expect[k] -= c * w[1] / w[0]
            for s in range(2, m + 1):
                if w[s] == 0:
                    continue
                for k, c in enumerate(rows[m - s]):
                    expect[k] -= c * w[s] / w[0]
            expect[0] += a[m] / w[0]
            if tuple(expect) != rows[m]:
                raise AssertionError(f"row recurrence failed at row {m}")
        return rows

    # -- serialization -------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "alpha": self.alpha.to_json_obj(),
            "omega": self.omega.to_json_obj(),
            "trunc": self.trunc,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RiordanPair":
        try:
            alpha = PowerSeries.from_json_obj(obj["alpha"])
            omega = PowerSeries.from_json_obj(obj["omega"])
        except (TypeError, KeyError) as exc:
            raise ParseError("Riordan pair needs 'alpha' and 'omega' series") from exc
        return cls(alpha, omega, obj.get("trunc"))

    def __repr__(self) -> str:
        return f"RiordanPair(alpha={self.alpha}, omega={self.omega}, trunc={self.trunc})"
