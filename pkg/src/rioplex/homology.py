"""Reduced rational homology via exact boundary-matrix ranks.

Coefficients are rational: every claim in scope concerns free ranks, so
torsion never matters.  Ranks come from integer Gaussian elimination with
gcd normalization, column by column against a growing pivot table; entries
stay tiny on boundary matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .scomplex import SimplicialComplex


@dataclass(frozen=True)
class BoundaryMatrix:
    """Boundary operator from k-faces to (k-1)-faces.

    Rows and columns are labeled by sorted vertex tuples in lexicographic
    (size-respecting) order; for k = 0 the single row is the empty face and
    the matrix is the augmentation.
    """

    k: int
    rows: tuple[tuple[int, ...], ...]
    cols: tuple[tuple[int, ...], ...]
    entries: tuple[tuple[int, ...], ...]

    def to_csv_text(self) -> str:
        header = "," + ",".join("|".join(map(str, c)) for c in self.cols)
        lines = [header]
        for label, row in zip(self.rows, self.entries):
            lines.append("|".join(map(str, label)) + "," + ",".join(map(str, row)))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class BettiVector:
    entries: tuple[int, ...]

    def to_json_obj(self) -> list[int]:
        return list(self.entries)


def _faces_by_dim(complex_: SimplicialComplex) -> list[list[tuple[int, ...]]]:
    if complex_.is_empty():
        return []
    by_dim: list[list[tuple[int, ...]]] = [[] for _ in range(complex_.dimension + 1)]
    for face in complex_.faces():
        t = tuple(sorted(face))
        by_dim[len(t) - 1].append(t)
    for bucket in by_dim:
        bucket.sort()
    return by_dim


def _sparse_columns(faces_low: list[tuple[int, ...]], faces_high: list[tuple[int, ...]]):
    """Columns of the boundary operator as {row index: sign} dicts."""
    index = {face: i for i, face in enumerate(faces_low)}
    cols = []
    for face in faces_high:
        col = {}
        for i in range(len(face)):
            sub = face[:i] + face[i + 1:]
            col[index[sub]] = -1 if i % 2 else 1
        cols.append(col)
    return cols


def boundary_matrix(complex_: SimplicialComplex, k: int) -> BoundaryMatrix:
    by_dim = _faces_by_dim(complex_)
    if not 0 <= k <= complex_.dimension:
        raise ValueError(f"no boundary operator in degree {k}")
    cols = tuple(by_dim[k])
    if k == 0:
        rows = ((),)
        entries = (tuple(1 for _ in cols),)
        return BoundaryMatrix(0, rows, cols, entries)
    rows = tuple(by_dim[k - 1])
    sparse = _sparse_columns(by_dim[k - 1], by_dim[k])
    dense = [[0] * len(cols) for _ in rows]
    for j, col in enumerate(sparse):
        for i, v in col.items():
            dense[i][j] = v
    return BoundaryMatrix(k, rows, cols, tuple(tuple(r) for r in dense))


def _normalize(col: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in col.values():
        g = gcd(g, v)
    if g > 1:
        return {r: v // g for r, v in col.items()}
    return col


def rank_of_sparse_columns(columns: list[dict[int, int]]) -> int:
    """Exact rank over the rationals by integer column reduction."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for col in columns:
        col = {r: v for r, v in col.items() if v}
        while col:
            r = min(col)
            piv = pivots.get(r)
            if piv is None:
                pivots[r] = _normalize(col)
                rank += 1
                break
            a, b = col[r], piv[r]
            g = gcd(a, b)
            ca, cb = b // g, a // g
            merged = {k: v * ca for k, v in col.items()}
            for k, v in piv.items():
                merged[k] = merged.get(k, 0) - v * cb
            col = _normalize({k: v for k, v in merged.items() if v})
    return rank


def _boundary_ranks(complex_: SimplicialComplex) -> list[int]:
    by_dim = _faces_by_dim(complex_)
    d = len(by_dim) - 1
    ranks = []
    for k in range(d + 1):
        if k == 0:
            ranks.append(1 if by_dim[0] else 0)
        else:
            ranks.append(rank_of_sparse_columns(_sparse_columns(by_dim[k - 1], by_dim[k])))
    return ranks


def reduced_betti(complex_: SimplicialComplex) -> BettiVector:
    """Reduced Betti numbers from the augmented chain complex."""
    if complex_.is_empty():
        return BettiVector(())
    f = complex_.f_vector().entries
    d = len(f) - 1
    ranks = _boundary_ranks(complex_) + [0]
    betti = tuple(f[k] - ranks[k] - ranks[k + 1] for k in range(d + 1))
    alternating = sum((-1) ** k * b for k, b in enumerate(betti))
    if alternating != complex_.euler_characteristic() - 1:
        raise AssertionError("Betti numbers inconsistent with the Euler characteristic")
    return BettiVector(betti)


def euler_from_betti(betti: BettiVector) -> int:
    """Euler characteristic recovered from reduced Betti numbers."""
    return 1 + sum((-1) ** k * b for k, b in enumerate(betti.entries))
