"""Finite posets viewed as T0 Alexandroff spaces.

The full strict relation is stored (down-sets per element); cover edges are
derived on demand.  Elements are integers 0..n-1 and all constructions are
positional, matching the vertex labeling of the associated order complexes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import InvalidPosetError, SearchCapExceededError
from .scomplex import SimplicialComplex

DEFAULT_POSET_CAP = 12


class FinitePoset:
    __slots__ = ("size", "_below", "_above")

    def __init__(self, size: int, below: Sequence[frozenset[int]]):
        if size < 0 or len(below) != size:
            raise InvalidPosetError("down-set table must match the size")
        for i, b in enumerate(below):
            if i in b or not all(0 <= j < size for j in b):
                raise InvalidPosetError("relation must be irreflexive and in range")
        self.size = size
        self._below = tuple(frozenset(b) for b in below)
        above = [set() for _ in range(size)]
        for i in range(size):
            for j in self._below[i]:
                above[j].add(i)
        self._above = tuple(frozenset(a) for a in above)
        for i in range(size):
            for j in self._below[i]:
                if not self._below[j] <= self._below[i] - {j}:
                    raise InvalidPosetError("relation is not transitively closed")
                if i in self._below[j]:
                    raise InvalidPosetError("relation is not antisymmetric")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[Sequence[int]]) -> "FinitePoset":
        """Build from generator pairs (i, j) meaning i < j; closure is applied."""
        below = [set() for _ in range(size)]
        for pair in pairs:
            if len(pair) != 2:
                raise InvalidPosetError(f"relation entries must be pairs, got {pair!r}")
            i, j = pair
            if not (0 <= i < size and 0 <= j < size):
                raise InvalidPosetError(f"pair {pair!r} out of range")
            if i == j:
                raise InvalidPosetError("strict relation cannot be reflexive")
            below[j].add(i)
        changed = True
        while changed:
            changed = False
            for j in range(size):
                extra = set()
                for i in below[j]:
                    extra |= below[i] - below[j]
                if extra:
                    below[j] |= extra
                    changed = True
        for j in range(size):
            if j in below[j]:
                raise InvalidPosetError("relation contains a cycle")
        return cls(size, [frozenset(b) for b in below])

    @classmethod
    def antichain(cls, n: int) -> "FinitePoset":
        return cls(n, [frozenset() for _ in range(n)])

    @classmethod
    def chain(cls, n: int) -> "FinitePoset":
        return cls(n, [frozenset(range(i)) for i in range(n)])

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "FinitePoset":
        try:
            size = obj["size"]
            less = obj["less"]
        except (TypeError, KeyError) as exc:
            raise InvalidPosetError("poset object needs 'size' and 'less'") from exc
        if not isinstance(size, int) or not isinstance(less, list):
            raise InvalidPosetError("'size' must be an int and 'less' a list of pairs")
        return cls.from_pairs(size, less)

    def to_json_obj(self) -> dict:
        pairs = sorted((i, j) for j in range(self.size) for i in self._below[j])
        return {"size": self.size, "less": [list(p) for p in pairs]}

    # -- the order ---------------------------------------------------------

    def lt(self, i: int, j: int) -> bool:
        return i in self._below[j]

    def leq(self, i: int, j: int) -> bool:
        return i == j or i in self._below[j]

    def below(self, i: int) -> frozenset[int]:
        """Strictly smaller elements."""
        return self._below[i]

    def above(self, i: int) -> frozenset[int]:
        """Strictly larger elements."""
        return self._above[i]

    def covers(self, j: int) -> frozenset[int]:
        """Elements covered by j (transitive reduction edges into j)."""
        b = self._below[j]
        return frozenset(i for i in b if not any(k in self._above[i] for k in b if k != i))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FinitePoset)
            and self.size == other.size
            and self._below == other._below
        )

    def __hash__(self) -> int:
        return hash((self.size, self._below))

    def __repr__(self) -> str:
        return f"FinitePoset(size={self.size})"

    # -- joins and complexes -------------------------------------------------

    def nh_join(self, other: "FinitePoset") -> "FinitePoset":
        """Disjoint union with every element here below every element there."""
        offset = self.size
        everything = frozenset(range(offset))
        below = list(self._below)
        below += [
            frozenset(v + offset for v in other._below[j]) | everything
            for j in range(other.size)
        ]
        return FinitePoset(offset + other.size, below)

    def order_complex(self) -> SimplicialComplex:
        """Complex of nonempty chains; facets are the maximal chains."""
        if self.size == 0:
            return SimplicialComplex.empty()
        maximal_chains: list[frozenset[int]] = []
        minimal = [i for i in range(self.size) if not self._below[i]]
        maximal_elts = {i for i in range(self.size) if not self._above[i]}
        cover_up: list[list[int]] = [[] for _ in range(self.size)]
        for j in range(self.size):
            for i in self.covers(j):
                cover_up[i].append(j)

        def grow(chain: list[int]) -> None:
            top = chain[-1]
            if top in maximal_elts:
                maximal_chains.append(frozenset(chain))
                return
            for j in cover_up[top]:
                chain.append(j)
                grow(chain)
                chain.pop()

        for i in minimal:
            grow([i])
        return SimplicialComplex(self.size, maximal_chains)

    def chain_f_vector(self) -> tuple[int, ...]:
        """Number of chains of each length; entry k counts (k+1)-element chains."""
        if self.size == 0:
            return ()
        order = sorted(range(self.size), key=lambda i: len(self._below[i]))
        counts: dict[int, list[int]] = {}
        height = self.height()
        for i in order:
            row = [0] * (height + 2)
            row[1] = 1
            for j in self._below[i]:
                for length in range(1, height + 1):
                    row[length + 1] += counts[j][length]
            counts[i] = row
        out = []
        for length in range(1, height + 2):
            out.append(sum(counts[i][length] for i in range(self.size)))
        return tuple(out)

    # -- homotopy-theoretic reductions ----------------------------------------

    def up_beat_points(self) -> tuple[int, ...]:
        """Points whose strict up-set has a minimum."""
        out = []
        for x in range(self.size):
            up = self._above[x]
            if up and any(all(self.leq(m, y) for y in up) for m in up):
                out.append(x)
        return tuple(out)

    def down_beat_points(self) -> tuple[int, ...]:
        """Points whose strict down-set has a maximum."""
        out = []
        for x in range(self.size):
            down = self._below[x]
            if down and any(all(self.leq(y, m) for y in down) for m in down):
                out.append(x)
        return tuple(out)

    def beat_points(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.up_beat_points()) | set(self.down_beat_points())))

    def remove_point(self, x: int) -> "FinitePoset":
        keep = [i for i in range(self.size) if i != x]
        index = {v: i for i, v in enumerate(keep)}
        below = [
            frozenset(index[j] for j in self._below[v] if j != x) for v in keep
        ]
        return FinitePoset(len(keep), below)

    def core(self) -> "FinitePoset":
        """Iteratively strip beat points; the result has none left."""
        current = self
        while True:
            beats = current.beat_points()
            if not beats:
                return current
            current = current.remove_point(beats[0])

    # -- invariants --------------------------------------------------------

    def height(self) -> int:
        """Longest chain size minus one; -1 for the empty poset."""
        if self.size == 0:
            return -1
        order = sorted(range(self.size), key=lambda i: len(self._below[i]))
        depth = {}
        for i in order:
            depth[i] = 1 + max((depth[j] for j in self._below[i]), default=0)
        return max(depth.values()) - 1

    def width(self) -> int:
        """Largest antichain, via a minimum chain cover (bipartite matching)."""
        if self.size == 0:
            return 0
        match_right: dict[int, int] = {}

        def augment(i: int, seen: set[int]) -> bool:
            for j in sorted(self._above[i]):
                if j in seen:
                    continue
                seen.add(j)
                if j not in match_right or augment(match_right[j], seen):
                    match_right[j] = i
                    return True
            return False

        matched = 0
        for i in range(self.size):
            if augment(i, set()):
                matched += 1
        return self.size - matched

    def automorphism_count(self, cap: int = DEFAULT_POSET_CAP) -> int:
        """Exact count of order self-isomorphisms by pruned backtracking."""
        if self.size > cap:
            raise SearchCapExceededError(f"{self.size} elements exceed the cap {cap}")
        if self.size == 0:
            return 1
        order = sorted(range(self.size), key=lambda i: len(self._below[i]))
        depth = {}
        for i in order:
            depth[i] = 1 + max((depth[j] for j in self._below[i]), default=0)
        sig = [(len(self._below[i]), len(self._above[i]), depth[i]) for i in range(self.size)]
        candidates = [
            [j for j in range(self.size) if sig[j] == sig[i]] for i in range(self.size)
        ]
        image = [-1] * self.size
        used = [False] * self.size
        count = 0

        def backtrack(i: int) -> None:
            nonlocal count
            if i == self.size:
                count += 1
                return
            for j in candidates[i]:
                if used[j]:
                    continue
                ok = True
                for prev in range(i):
                    if self.lt(prev, i) != self.lt(image[prev], j) or self.lt(
                        i, prev
                    ) != self.lt(j, image[prev]):
                        ok = False
                        break
                if ok:
                    image[i] = j
                    used[j] = True
                    backtrack(i + 1)
                    used[j] = False
            image[i] = -1

        backtrack(0)
        return count

    def determinant(self) -> int:
        """|det| of the incomparability-pattern matrix (0 where x_i <= x_j)."""
        n = self.size
        if n == 0:
            return 1
        m = [[0 if self.leq(i, j) else 1 for j in range(n)] for i in range(n)]
        return abs(_int_determinant(m))

    def is_chain(self) -> bool:
        return all(
            self.leq(i, j) or self.leq(j, i)
            for i in range(self.size)
            for j in range(i + 1, self.size)
        )


def _int_determinant(matrix: list[list[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# -- face posets ----------------------------------------------------------------


def face_poset(complex_: SimplicialComplex) -> FinitePoset:
    """Faces ordered by strict inclusion; element order matches face_order."""
    faces = face_order(complex_)
    index = {f: i for i, f in enumerate(faces)}
    below = []
    for f in faces:
        fs = set(f)
        below.append(
            frozenset(
                index[g] for g in faces if len(g) < len(f) and set(g) < fs
            )
        )
    return FinitePoset(len(faces), below)


def face_order(complex_: SimplicialComplex) -> list[tuple[int, ...]]:
    """The element labeling used by face_poset: faces sorted by size then lex."""
    return sorted(
        (tuple(sorted(f)) for f in complex_.faces()), key=lambda t: (len(t), t)
    )


# -- the iterated non-Hausdorff join families --------------------------------------


def delta_poset(m: int, q: int, n: int) -> FinitePoset:
    """n-fold join of q-element antichains over an m-element antichain.

    Level 0 holds m elements, each later level holds q, and every element
    sits above all elements of all earlier levels.
    """
    if m < 1 or q < 1 or n < 0:
        raise InvalidPosetError("need m, q >= 1 and n >= 0")
    poset = FinitePoset.antichain(m)
    for _ in range(n):
        poset = poset.nh_join(FinitePoset.antichain(q))
    return poset


@dataclass(frozen=True)
class DimensionCertificate:
    """Order dimension with a witnessing realizer.

    For a chain the dimension is 1 and both extensions coincide; otherwise
    two extensions intersect to the order and an incomparable pair shows the
    dimension is not 1.
    """

    dimension: int
    extensions: tuple[tuple[int, ...], ...]
    incomparable_pair: Optional[tuple[int, int]]

    def to_json_obj(self) -> dict:
        return {
            "dimension": self.dimension,
            "extensions": [list(e) for e in self.extensions],
            "incomparable_pair": list(self.incomparable_pair)
            if self.incomparable_pair
            else None,
        }


def is_linear_extension(poset: FinitePoset, order: Sequence[int]) -> bool:
    if sorted(order) != list(range(poset.size)):
        return False
    position = {v: i for i, v in enumerate(order)}
    return all(
        position[i] < position[j]
        for j in range(poset.size)
        for i in poset.below(j)
    )


def _realizes(poset: FinitePoset, extensions: Sequence[Sequence[int]]) -> bool:
    positions = [{v: i for i, v in enumerate(ext)} for ext in extensions]
    for i in range(poset.size):
        for j in range(poset.size):
            if i == j:
                continue
            meets_all = all(pos[i] < pos[j] for pos in positions)
            if poset.lt(i, j) != meets_all:
                return False
    return True


def order_dimension_realizer(m: int, q: int, n: int) -> DimensionCertificate:
    """Realizer for the iterated join family: dimension 1 for chains, else 2.

    The two extensions run through the levels in order; the second reverses
    the elements inside every level.
    """
    poset = delta_poset(m, q, n)
    levels = [list(range(m))]
    start = m
    for _ in range(n):
        levels.append(list(range(start, start + q)))
        start += q
    forward = tuple(v for level in levels for v in level)
    if poset.is_chain():
        assert is_linear_extension(poset, forward)
        assert _realizes(poset, [forward])
        return DimensionCertificate(1, (forward,), None)
    backward = tuple(v for level in levels for v in reversed(level))
    for ext in (forward, backward):
        if not is_linear_extension(poset, ext):
            raise AssertionError("constructed order is not a linear extension")
    if not _realizes(poset, [forward, backward]):
        raise AssertionError("extensions fail to realize the order")
    pair = next(
        (
            (i, j)
            for i in range(poset.size)
            for j in range(i + 1, poset.size)
            if not poset.leq(i, j) and not poset.leq(j, i)
        ),
        None,
    )
    assert pair is not None
    return DimensionCertificate(2, (forward, backward), pair)
