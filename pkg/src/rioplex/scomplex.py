"""Abstract simplicial complexes and their face-count transforms.

Complexes are stored by facets; the face family is the downward closure,
enumerated on demand and cached (bitmask sets internally, so closure of a
few thousand facets stays cheap).  The f/h/g/gamma pipeline runs through
Riordan actions, each cross-checked against the defining summation formula.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import (
    DimensionMismatchError,
    InvalidComplexError,
    InvalidFacingError,
    InvalidQError,
    NotAFaceError,
    NotPureError,
    SearchCapExceededError,
)
from .fps import PowerSeries, rat_str
from .riordan import FiniteMatrix, RiordanPair

Face = frozenset[int]

DEFAULT_FACE_CAP = 5000


def _face_key(face: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    t = tuple(sorted(face))
    return (len(t), t)


def _maximal(sets: Iterable[frozenset[int]]) -> frozenset[Face]:
    pool = sorted({frozenset(s) for s in sets}, key=len, reverse=True)
    kept: list[Face] = []
    for s in pool:
        if not any(s < t or s == t for t in kept):
            kept.append(s)
    return frozenset(kept)


class SimplicialComplex:
    __slots__ = ("vertex_count", "facets", "_face_masks", "_faces", "_fvec")

    def __init__(self, vertex_count: int, facets: Iterable[Iterable[int]]):
        if vertex_count < 0:
            raise InvalidComplexError("vertex count must be nonnegative")
        cleaned = []
        for f in facets:
            face = frozenset(f)
            if not face:
                raise InvalidComplexError("facets must be nonempty")
            for v in face:
                if not isinstance(v, int) or not 0 <= v < vertex_count:
                    raise InvalidComplexError(f"vertex {v!r} out of range 0..{vertex_count - 1}")
            cleaned.append(face)
        self.vertex_count = vertex_count
        self.facets = _maximal(cleaned)
        self._face_masks: Optional[frozenset[int]] = None
        self._faces: Optional[frozenset[Face]] = None
        self._fvec: Optional["FVector"] = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        facets = [frozenset(f) for f in facets]
        count = max((max(f) for f in facets if f), default=-1) + 1
        return cls(count, facets)

    @classmethod
    def points(cls, q: int) -> "SimplicialComplex":
        """q isolated vertices."""
        if q < 1:
            raise InvalidQError("need at least one point")
        return cls(q, [[v] for v in range(q)])

    @classmethod
    def full_simplex(cls, vertices: int) -> "SimplicialComplex":
        if vertices < 1:
            raise InvalidComplexError("a simplex needs at least one vertex")
        return cls(vertices, [range(vertices)])

    @classmethod
    def cycle(cls, n: int) -> "SimplicialComplex":
        """Boundary of an n-gon."""
        if n < 3:
            raise InvalidComplexError("a cycle needs at least three vertices")
        return cls(n, [[i, (i + 1) % n] for i in range(n)])

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls(0, [])

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "SimplicialComplex":
        try:
            vertices = obj["vertices"]
            facets = obj["facets"]
        except (TypeError, KeyError) as exc:
            raise InvalidComplexError("complex object needs 'vertices' and 'facets'") from exc
        if not isinstance(vertices, int) or not isinstance(facets, list):
            raise InvalidComplexError("'vertices' must be an int and 'facets' a list")
        return cls(vertices, facets)

    def to_json_obj(self) -> dict:
        return {
            "vertices": self.vertex_count,
            "facets": [list(t) for t in self.facet_list()],
        }

    # -- basic structure -----------------------------------------------------

    def facet_list(self) -> list[tuple[int, ...]]:
        return sorted((tuple(sorted(f)) for f in self.facets), key=lambda t: (len(t), t))

    @property
    def dimension(self) -> int:
        """Dimension of the complex; -1 for the empty complex."""
        return max((len(f) for f in self.facets), default=0) - 1

    def is_empty(self) -> bool:
        return not self.facets

    def is_pure(self) -> bool:
        sizes = {len(f) for f in self.facets}
        return len(sizes) <= 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimplicialComplex)
            and self.vertex_count == other.vertex_count
            and self.facets == other.facets
        )

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.facets))

    def __repr__(self) -> str:
        return f"SimplicialComplex({self.vertex_count}, {self.facet_list()})"

    # -- face enumeration ------------------------------------------------------

    def face_masks(self) -> frozenset[int]:
        """All nonempty faces as vertex bitmasks."""
        if self._face_masks is None:
            seen: set[int] = set()
            for f in self.facets:
                mask = 0
                for v in f:
                    mask |= 1 << v
                sub = mask
                while sub:
                    if sub not in seen:
                        seen.add(sub)
                    sub = (sub - 1) & mask
            self._face_masks = frozenset(seen)
        return self._face_masks

    def faces(self) -> frozenset[Face]:
        if self._faces is None:
            out = []
            for mask in self.face_masks():
                face = []
                m = mask
                while m:
                    v = (m & -m).bit_length() - 1
                    face.append(v)
                    m &= m - 1
                out.append(frozenset(face))
            self._faces = frozenset(out)
        return self._faces

    def face_count(self) -> int:
        """Number of nonempty faces."""
        return len(self.face_masks())

    def has_face(self, sigma: Iterable[int]) -> bool:
        face = frozenset(sigma)
        return any(face <= f for f in self.facets) if face else True

    # -- face counts ------------------------------------------------------------

    def f_vector(self) -> "FVector":
        if self._fvec is None:
            if self.is_empty():
                self._fvec = FVector(())
            else:
                counts = [0] * (self.dimension + 1)
                for mask in self.face_masks():
                    counts[mask.bit_count() - 1] += 1
                self._fvec = FVector(tuple(counts))
        return self._fvec

    def extended_f_vector(self) -> "ExtendedFVector":
        return self.f_vector().extend()

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * fk for k, fk in enumerate(self.f_vector().entries))

    # -- constructions ------------------------------------------------------------

    def join(self, other: "SimplicialComplex") -> "SimplicialComplex":
        """Join; the second factor's vertices are shifted past this one's."""
        if self.is_empty():
            return SimplicialComplex(
                self.vertex_count + other.vertex_count,
                [{v + self.vertex_count for v in f} for f in other.facets],
            )
        if other.is_empty():
            return SimplicialComplex(self.vertex_count + other.vertex_count, self.facets)
        offset = self.vertex_count
        facets = [
            f | {v + offset for v in g} for f in self.facets for g in other.facets
        ]
        return SimplicialComplex(offset + other.vertex_count, facets)

    def q_cone(self, q: int) -> "SimplicialComplex":
        if not isinstance(q, int) or q < 1:
            raise InvalidQError(f"q must be a positive integer, got {q!r}")
        return self.join(SimplicialComplex.points(q))

    def _require_face(self, sigma: Iterable[int]) -> Face:
        face = frozenset(sigma)
        if not self.has_face(face) or not face:
            raise NotAFaceError(f"{sorted(face)} is not a nonempty face")
        return face

    def link(self, sigma: Iterable[int]) -> "SimplicialComplex":
        face = self._require_face(sigma)
        candidates = [f - face for f in self.facets if face <= f]
        return _compacted(_maximal(c for c in candidates if c))

    def deletion(self, sigma: Iterable[int]) -> "SimplicialComplex":
        face = self._require_face(sigma)
        candidates = [f - face for f in self.facets]
        return _compacted(_maximal(c for c in candidates if c))


def _compacted(facets: Iterable[Face]) -> SimplicialComplex:
    """Relabel the support densely, preserving vertex order."""
    facets = list(facets)
    support = sorted({v for f in facets for v in f})
    index = {v: i for i, v in enumerate(support)}
    return SimplicialComplex(len(support), [{index[v] for v in f} for f in facets])


# -- vector types ---------------------------------------------------------------


@dataclass(frozen=True)
class FVector:
    """Face counts by dimension, f_0 .. f_d."""

    entries: tuple[int, ...]

    def extend(self) -> "ExtendedFVector":
        return ExtendedFVector((1,) + self.entries)

    def to_json_obj(self) -> dict:
        return {str(k): v for k, v in enumerate(self.entries)}


@dataclass(frozen=True)
class ExtendedFVector:
    """(f_-1, f_0, .., f_d) with f_-1 = 1 for the empty face."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) < 1 or self.entries[0] != 1:
            raise DimensionMismatchError("extended f-vector must start with 1")

    @property
    def d(self) -> int:
        return len(self.entries) - 2

    def polynomial(self, trunc: int | None = None) -> PowerSeries:
        return PowerSeries.of(self.entries, trunc)

    def to_json_obj(self) -> dict:
        return {str(k - 1): v for k, v in enumerate(self.entries)}


@dataclass(frozen=True)
class HVector:
    """(h_0, .., h_{d+1}) for a d-dimensional complex."""

    entries: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.entries) - 2

    def is_palindromic(self) -> bool:
        return self.entries == self.entries[::-1]

    def polynomial(self, trunc: int | None = None) -> PowerSeries:
        return PowerSeries.of(self.entries, trunc)

    def to_json_obj(self) -> dict:
        return {str(k): v for k, v in enumerate(self.entries)}


@dataclass(frozen=True)
class GVector:
    """(g_0, .., g_{d+2}): first differences of the h-vector."""

    entries: tuple[int, ...]

    def to_json_obj(self) -> dict:
        return {str(k): v for k, v in enumerate(self.entries)}


@dataclass(frozen=True)
class GammaSeries:
    """Coefficients of the gamma series of an h-polynomial of degree d+1.

    The prefix up to index floor((d+1)/2) is a gamma-vector exactly when
    every later computed entry vanishes.
    """

    entries: tuple[Fraction, ...]
    d: int

    @property
    def vector_length(self) -> int:
        return (self.d + 1) // 2 + 1

    def is_vector(self) -> bool:
        return all(c == 0 for c in self.entries[self.vector_length:])

    def vector(self) -> tuple[Fraction, ...]:
        if not self.is_vector():
            raise DimensionMismatchError("gamma series does not terminate; not a gamma-vector")
        return self.entries[: self.vector_length]

    def to_json_obj(self) -> dict:
        return {
            "entries": {str(k): rat_str(c) for k, c in enumerate(self.entries)},
            "is_vector": self.is_vector(),
            "vector": [rat_str(c) for c in self.vector()] if self.is_vector() else None,
        }


# -- f/h/g/gamma transforms -------------------------------------------------------


def _as_int(value: Fraction) -> int:
    if value.denominator != 1:
        raise DimensionMismatchError(f"expected an integer, got {value}")
    return value.numerator


def f_to_h_pair(d: int, trunc: int | None = None) -> RiordanPair:
    """The pair sending extended f-polynomials to h-polynomials in dimension d."""
    trunc = trunc if trunc is not None else d + 3
    alpha = PowerSeries.binomial(d + 2, trunc).negate_variable()
    omega = PowerSeries.of([1, -1], trunc)
    return RiordanPair(alpha, omega)


def h_from_f(ef: ExtendedFVector) -> HVector:
    """h-vector from the extended f-vector.

    Computed twice, by the alternating binomial sum and by the Riordan
    action, and cross-checked; they are two routes to the same definition.
    """
    d = ef.d
    if d < 0:
        raise DimensionMismatchError("need at least (f_-1, f_0)")
    direct = []
    for k in range(d + 2):
        acc = 0
        for i in range(k + 1):
            acc += (-1) ** (k - i) * _comb(d + 1 - i, d + 1 - k) * ef.entries[i]
        direct.append(acc)
    pair = f_to_h_pair(d)
    via_matrix = pair.ftrm(ef.polynomial(d + 3)).coeffs[: d + 2]
    if tuple(direct) != tuple(_as_int(c) for c in via_matrix):
        raise AssertionError("h-vector computations disagree")
    return HVector(tuple(direct))


def f_from_h(h: HVector) -> ExtendedFVector:
    """Invert the f-to-h transform."""
    d = h.d
    pair = f_to_h_pair(d, d + 4).inverse()
    coeffs = pair.ftrm(h.polynomial(d + 3)).coeffs[: d + 2]
    return ExtendedFVector(tuple(_as_int(c) for c in coeffs))


def g_from_h(h: HVector) -> GVector:
    """First differences, with h_{d+2} = 0 appended."""
    ext = h.entries + (0,)
    out = [ext[0]]
    for k in range(1, len(ext)):
        out.append(ext[k] - ext[k - 1])
    return GVector(tuple(out))


def gamma_pair(d: int, trunc: int | None = None) -> RiordanPair:
    trunc = trunc if trunc is not None else d + 3
    return RiordanPair(
        PowerSeries.binomial(d + 3, trunc),
        PowerSeries.binomial(2, trunc),
    )


def gamma_from_h(h: HVector, trunc: int | None = None) -> GammaSeries:
    """Gamma series of the h-polynomial in its dimension-d normalization.

    Solved two ways: through the inverse Riordan action, and by the
    triangular system with generalized binomial coefficients.
    """
    d = h.d
    if trunc is None:
        trunc = d + 8
    via_pair = gamma_pair(d, trunc + 1).inverse().ftrm(h.polynomial(trunc + 1))
    # direct solve of  h_j = sum_k gamma_k * C(d+1-2k, j-k)
    gamma: list[Fraction] = []
    hpad = list(h.entries) + [0] * (trunc - len(h.entries))
    for j in range(trunc):
        acc = Fraction(hpad[j])
        for k in range(j):
            acc -= gamma[k] * _gbinom(d + 1 - 2 * k, j - k)
        gamma.append(acc)
    if tuple(gamma) != via_pair.coeffs[:trunc]:
        raise AssertionError("gamma computations disagree")
    return GammaSeries(tuple(gamma), d)


def _comb(n: int, k: int) -> int:
    if k < 0 or k > n or n < 0:
        return 0
    return math.comb(n, k)


def _gbinom(r: Union[int, Fraction], k: int) -> Fraction:
    """Binomial coefficient C(r, k) for arbitrary integer or rational r."""
    if k < 0:
        return Fraction(0)
    out = Fraction(1)
    for i in range(k):
        out *= Fraction(r - i)
    return out / math.factorial(k)


# -- Dehn-Sommerville ---------------------------------------------------------------


def dehn_sommerville_matrix(d: int) -> FiniteMatrix:
    """The involution fixing reversed extended f-vectors of DS complexes."""
    trunc = d + 3
    alpha = -PowerSeries.binomial(d + 2, trunc)
    omega = PowerSeries.of([-1, -1], trunc)
    return RiordanPair(alpha, omega).finite(d + 1)


@dataclass(frozen=True)
class DehnSommervilleResult:
    satisfied: bool
    fixed_vector_ok: bool
    palindromic: bool
    h: HVector
    residual: tuple[Fraction, ...]


def ds_check(ef: ExtendedFVector) -> DehnSommervilleResult:
    """Test the Dehn-Sommerville condition two ways and insist they agree.

    The reversed extended f-vector must be fixed by the involution matrix;
    equivalently the h-vector must be palindromic.
    """
    d = ef.d
    rev = tuple(reversed(ef.entries))
    matrix = dehn_sommerville_matrix(d)
    image = matrix.mat_vec(rev)
    residual = tuple(image[i] - rev[i] for i in range(len(rev)))
    fixed = all(r == 0 for r in residual)
    h = h_from_f(ef)
    palin = h.is_palindromic()
    if fixed != palin:
        raise AssertionError("eigenvector test and h-palindromy disagree")
    return DehnSommervilleResult(fixed, fixed, palin, h, residual)


def ds_basis(d: int) -> list[tuple[Fraction, ...]]:
    """Even columns spanning the fixed space of the DS involution.

    Columns 0, 2, 4, ... (column index at most d+1) of the half-integer
    binomial pair, each verified to be fixed by the involution.
    """
    if d < 0:
        raise DimensionMismatchError("dimension must be nonnegative")
    trunc = d + 3
    pair = RiordanPair(
        PowerSeries.binomial(Fraction(d, 2) + 1, trunc),
        PowerSeries.binomial(Fraction(1, 2), trunc),
    )
    matrix = pair.finite(d + 1)
    involution = dehn_sommerville_matrix(d)
    columns = []
    for j in range(0, d + 2, 2):
        col = matrix.column(j)
        if involution.mat_vec(col) != col:
            raise AssertionError(f"column {j} is not fixed by the involution")
        columns.append(col)
    return columns


def solve_in_span(columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Exact least-structure solve: coefficients expressing target in the span, or None."""
    rows = len(target)
    ncols = len(columns)
    aug = [[Fraction(columns[j][i]) for j in range(ncols)] + [Fraction(target[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = Fraction(1) / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                factor = aug[i][c]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 and all(v == 0 for v in row[:-1]) for row in aug):
        return None
    coeffs = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        coeffs[c] = aug[i][-1]
    return coeffs


# -- exact facings / partitionability ----------------------------------------------


@dataclass(frozen=True)
class ExactFacing:
    """Map from each facet to a sub-face whose intervals tile the face family."""

    assignment: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    @classmethod
    def from_dict(cls, mapping: Mapping[Face, Face]) -> "ExactFacing":
        items = sorted(
            ((tuple(sorted(facet)), tuple(sorted(phi))) for facet, phi in mapping.items()),
            key=lambda p: _face_key(p[0]),
        )
        return cls(tuple(items))

    def as_dict(self) -> dict[Face, Face]:
        return {frozenset(facet): frozenset(phi) for facet, phi in self.assignment}

    def to_json_obj(self) -> list:
        return [[list(facet), list(phi)] for facet, phi in self.assignment]


def _interval(bottom: Face, top: Face) -> list[Face]:
    extra = sorted(top - bottom)
    out = []
    for r in range(len(extra) + 1):
        for combo in itertools.combinations(extra, r):
            out.append(bottom | frozenset(combo))
    return out


def facing_is_valid(complex_: SimplicialComplex, facing: ExactFacing) -> bool:
    mapping = facing.as_dict()
    if set(mapping) != set(complex_.facets):
        return False
    covered: set[Face] = set()
    for facet, phi in mapping.items():
        if not phi <= facet:
            return False
        for face in _interval(phi, facet):
            if face in covered:
                return False
            covered.add(face)
    universe = set(complex_.faces()) | {frozenset()}
    return covered == universe


def find_exact_facing(
    complex_: SimplicialComplex, cap_faces: int = DEFAULT_FACE_CAP
) -> Optional[ExactFacing]:
    """Backtracking search for an exact facing, deterministic order.

    The smallest uncovered face must be the bottom of its interval, so the
    search branches only over which unassigned facet above it to use.
    """
    if not complex_.is_pure():
        raise NotPureError("facings are defined for pure complexes")
    if complex_.is_empty():
        return None  # nothing can cover the empty face
    if complex_.face_count() + 1 > cap_faces:
        raise SearchCapExceededError(
            f"{complex_.face_count() + 1} faces exceed the cap {cap_faces}"
        )
    universe: list[Face] = [frozenset()] + sorted(complex_.faces(), key=_face_key)
    facets = sorted(complex_.facets, key=_face_key)
    uncovered = set(universe)
    assignment: dict[Face, Face] = {}

    def backtrack() -> bool:
        sigma = next((f for f in universe if f in uncovered), None)
        if sigma is None:
            return True
        for facet in facets:
            if facet in assignment or not sigma <= facet:
                continue
            block = _interval(sigma, facet)
            if any(face not in uncovered for face in block):
                continue
            assignment[facet] = sigma
            uncovered.difference_update(block)
            if backtrack():
                return True
            del assignment[facet]
            uncovered.update(block)
        return False

    if backtrack():
        return ExactFacing.from_dict(assignment)
    return None


def facing_h_counts(complex_: SimplicialComplex, facing: ExactFacing) -> HVector:
    """h-vector read off a facing: h_j counts facets whose image has j vertices."""
    if not facing_is_valid(complex_, facing):
        raise InvalidFacingError("assignment does not tile the face family")
    d = complex_.dimension
    counts = [0] * (d + 2)
    for _, phi in facing.assignment:
        counts[len(phi)] += 1
    h = HVector(tuple(counts))
    if h != h_from_f(complex_.extended_f_vector()):
        raise AssertionError("facing counts disagree with the h-vector")
    return h


def qcone_facing(complex_: SimplicialComplex, facing: ExactFacing, q: int) -> ExactFacing:
    """Transport a facing of the base to its q-cone.

    The first cone vertex keeps the image; every other cone vertex is
    adjoined to it.
    """
    if not isinstance(q, int) or q < 1:
        raise InvalidQError(f"q must be a positive integer, got {q!r}")
    if not facing_is_valid(complex_, facing):
        raise InvalidFacingError("assignment does not tile the face family")
    base = complex_.vertex_count
    out: dict[Face, Face] = {}
    for facet, phi in facing.as_dict().items():
        out[facet | {base}] = phi
        for i in range(1, q):
            out[facet | {base + i}] = phi | {base + i}
    return ExactFacing.from_dict(out)


# -- vertex decomposability and shellability ------------------------------------------


def _facets_of(sets: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    pool = sorted({tuple(sorted(s)) for s in sets}, key=len, reverse=True)
    kept: list[tuple[int, ...]] = []
    for s in pool:
        ss = set(s)
        if not any(ss <= set(t) for t in kept):
            kept.append(s)
    return tuple(sorted(kept))


def _canonical(facets: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    support = sorted({v for f in facets for v in f})
    index = {v: i for i, v in enumerate(support)}
    return tuple(sorted(tuple(index[v] for v in f) for f in facets))


def is_vertex_decomposable(
    complex_: SimplicialComplex, cap_faces: int = DEFAULT_FACE_CAP
) -> bool:
    """Recursive vertex-decomposability check with memoized subproblems."""
    if not complex_.is_empty() and complex_.face_count() > cap_faces:
        raise SearchCapExceededError(
            f"{complex_.face_count()} faces exceed the cap {cap_faces}"
        )
    memo: dict[tuple, bool] = {}

    def rec(facets: tuple[tuple[int, ...], ...]) -> bool:
        if len(facets) <= 1:
            return True
        key = _canonical(facets)
        cached = memo.get(key)
        if cached is not None:
            return cached
        memo[key] = False  # cycles cannot occur; placeholder against rework
        facet_sets = [set(f) for f in facets]
        support = sorted({v for f in facets for v in f})
        result = False
        for x in support:
            deletion = _facets_of(
                tuple(v for v in f if v != x) for f in facets
            )
            deletion = tuple(f for f in deletion if f)
            # every facet of the deletion must already be a facet of the complex
            if any(set(f) not in facet_sets for f in deletion):
                continue
            link = _facets_of(
                tuple(v for v in f if v != x) for f in facets if x in set(f)
            )
            link = tuple(f for f in link if f)
            if rec(link) and rec(deletion):
                result = True
                break
        memo[key] = result
        return result

    return rec(tuple(sorted(tuple(sorted(f)) for f in complex_.facets)))


def is_shellable(complex_: SimplicialComplex, cap_faces: int = DEFAULT_FACE_CAP) -> bool:
    """Backtracking search over facet orderings for a shelling."""
    if not complex_.is_pure():
        raise NotPureError("shellability is defined for pure complexes")
    if complex_.is_empty():
        return True
    if complex_.face_count() > cap_faces:
        raise SearchCapExceededError(
            f"{complex_.face_count()} faces exceed the cap {cap_faces}"
        )
    facets = [tuple(sorted(f)) for f in complex_.facets]
    facets.sort()

    def step_ok(candidate: tuple[int, ...], used: list[tuple[int, ...]]) -> bool:
        if not used:
            return True
        old_caps = [set(candidate) & set(u) for u in used]
        verts = list(candidate)
        k = len(verts)
        minimal = 0
        # a subset is old iff it lies inside some earlier facet
        new_flag = {}
        for size in range(k + 1):
            for combo in itertools.combinations(range(k), size):
                sub = frozenset(verts[i] for i in combo)
                is_old = any(sub <= cap for cap in old_caps)
                new_flag[sub] = not is_old
                if not is_old:
                    if all(not new_flag[sub - {v}] for v in sub):
                        minimal += 1
                        if minimal > 1:
                            return False
        return minimal == 1

    failed: set[frozenset[tuple[int, ...]]] = set()

    def backtrack(used: list[tuple[int, ...]], remaining: list[tuple[int, ...]]) -> bool:
        if not remaining:
            return True
        state = frozenset(used)
        if state in failed:
            return False
        for idx, cand in enumerate(remaining):
            if step_ok(cand, used):
                if backtrack(used + [cand], remaining[:idx] + remaining[idx + 1:]):
                    return True
        failed.add(state)
        return False

    return backtrack([], facets)
