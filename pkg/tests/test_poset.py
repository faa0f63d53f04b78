"""Posets as finite spaces: joins, chains, cores, symmetry, dimension."""

import math
import random

import pytest

from rioplex.errors import InvalidPosetError, SearchCapExceededError
from rioplex.poset import (
    DimensionCertificate,
    FinitePoset,
    delta_poset,
    face_order,
    face_poset,
    is_linear_extension,
    order_dimension_realizer,
)
from rioplex.scomplex import FVector, SimplicialComplex


def random_poset(rng, max_size=7):
    n = rng.randint(1, max_size)
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.4:
                pairs.append((i, j))
    return FinitePoset.from_pairs(n, pairs)


class TestConstruction:
    def test_closure_applied(self):
        p = FinitePoset.from_pairs(3, [(0, 1), (1, 2)])
        assert p.lt(0, 2)

    def test_cycle_rejected(self):
        with pytest.raises(InvalidPosetError):
            FinitePoset.from_pairs(2, [(0, 1), (1, 0)])

    def test_reflexive_rejected(self):
        with pytest.raises(InvalidPosetError):
            FinitePoset.from_pairs(2, [(0, 0)])

    def test_json_roundtrip(self):
        p = delta_poset(2, 2, 1)
        assert FinitePoset.from_json_obj(p.to_json_obj()) == p


class TestNhJoin:
    def test_point_join_point(self):
        p = FinitePoset.antichain(1).nh_join(FinitePoset.antichain(1))
        assert p == FinitePoset.chain(2)

    def test_two_by_two(self):
        p = FinitePoset.antichain(2).nh_join(FinitePoset.antichain(2))
        assert p == delta_poset(2, 2, 1)
        assert sorted(p.below(2)) == [0, 1]
        assert not p.lt(0, 1)

    def test_three_by_three_cross_relations(self):
        p = FinitePoset.antichain(3).nh_join(FinitePoset.antichain(3))
        crossings = sum(1 for j in range(p.size) for _ in p.below(j))
        assert crossings == 9

    def test_order_complex_of_join_is_join_of_order_complexes(self):
        rng = random.Random(12)
        for _ in range(10):
            a, b = random_poset(rng, 4), random_poset(rng, 4)
            joined = a.nh_join(b).order_complex()
            assert joined == a.order_complex().join(b.order_complex())


class TestOrderComplex:
    def test_antichain(self):
        k = FinitePoset.antichain(3).order_complex()
        assert k == SimplicialComplex.points(3)

    def test_chain_is_simplex(self):
        k = FinitePoset.chain(3).order_complex()
        assert k == SimplicialComplex.full_simplex(3)

    def test_two_by_two_is_square(self):
        k = delta_poset(2, 2, 1).order_complex()
        assert k.f_vector() == FVector((4, 4))


class TestFacePoset:
    def test_edge(self):
        p = face_poset(SimplicialComplex.full_simplex(2))
        assert p.size == 3
        assert p.height() == 1

    def test_triangle_boundary_barycentric(self):
        p = face_poset(SimplicialComplex.cycle(3))
        assert p.size == 6
        assert p.order_complex().f_vector() == FVector((6, 6))

    def test_two_simplex(self):
        p = face_poset(SimplicialComplex.full_simplex(3))
        assert p.size == 7
        assert p.height() == 2

    def test_labels_sorted(self):
        order = face_order(SimplicialComplex.full_simplex(2))
        assert order == [(0,), (1,), (0, 1)]


class TestChainFVector:
    def test_antichain(self):
        assert FinitePoset.antichain(4).chain_f_vector() == (4,)

    def test_two_by_two(self):
        assert delta_poset(2, 2, 1).chain_f_vector() == (4, 4)

    def test_three_chain(self):
        assert FinitePoset.chain(3).chain_f_vector() == (3, 3, 1)

    def test_matches_order_complex(self):
        rng = random.Random(55)
        for _ in range(12):
            p = random_poset(rng)
            assert p.chain_f_vector() == p.order_complex().f_vector().entries


class TestBeatPointsAndCore:
    def test_chain_core_is_point(self):
        assert FinitePoset.chain(5).core().size == 1

    def test_min_makes_core_point(self):
        for q in (2, 3):
            for n in (1, 2):
                assert delta_poset(1, q, n).core().size == 1

    def test_max_makes_core_point(self):
        for m in (2, 3):
            for n in (1, 2):
                assert delta_poset(m, 1, n).core().size == 1

    def test_two_by_two_is_minimal(self):
        p = delta_poset(2, 2, 1)
        assert p.beat_points() == ()
        assert p.core() == p

    def test_core_idempotent(self):
        rng = random.Random(8)
        for _ in range(12):
            p = random_poset(rng)
            core = p.core()
            assert core.core() == core


class TestAutomorphisms:
    def test_antichain(self):
        for m in (1, 2, 3, 4):
            assert FinitePoset.antichain(m).automorphism_count() == math.factorial(m)

    def test_two_by_two(self):
        assert delta_poset(2, 2, 1).automorphism_count() == 4

    def test_three_two_two(self):
        assert delta_poset(3, 2, 2).automorphism_count() == 24

    def test_family_formula(self):
        for m in (1, 2, 3):
            for q in (1, 2, 3):
                for n in (0, 1, 2):
                    if m + n * q <= 12:
                        expect = math.factorial(m) * math.factorial(q) ** n
                        assert delta_poset(m, q, n).automorphism_count() == expect

    def test_join_multiplicativity(self):
        rng = random.Random(2)
        for _ in range(8):
            a, b = random_poset(rng, 4), random_poset(rng, 4)
            if a.size + b.size <= 10:
                assert (
                    a.nh_join(b).automorphism_count()
                    == a.automorphism_count() * b.automorphism_count()
                )

    def test_cap(self):
        with pytest.raises(SearchCapExceededError):
            FinitePoset.antichain(13).automorphism_count()


class TestDimension:
    def test_chain_family(self):
        cert = order_dimension_realizer(1, 1, 3)
        assert cert.dimension == 1
        assert cert.incomparable_pair is None

    def test_two_by_two(self):
        cert = order_dimension_realizer(2, 2, 1)
        assert cert.dimension == 2
        assert len(cert.extensions) == 2
        p = delta_poset(2, 2, 1)
        for ext in cert.extensions:
            assert is_linear_extension(p, ext)

    def test_bigger_family(self):
        cert = order_dimension_realizer(3, 4, 2)
        assert cert.dimension == 2
        i, j = cert.incomparable_pair
        p = delta_poset(3, 4, 2)
        assert not p.leq(i, j) and not p.leq(j, i)

    def test_antichain_case(self):
        assert order_dimension_realizer(3, 1, 0).dimension == 2
        assert order_dimension_realizer(1, 5, 0).dimension == 1


class TestDeterminant:
    def test_point(self):
        assert FinitePoset.antichain(1).determinant() == 0

    def test_two_by_two(self):
        assert delta_poset(2, 2, 1).determinant() == 1

    def test_three_three_two(self):
        assert delta_poset(3, 3, 2).determinant() == 8

    def test_family_formula(self):
        for m in (1, 2, 3):
            for q in (1, 2, 3):
                for n in (0, 1, 2, 3):
                    expect = (m - 1) * (q - 1) ** n if n > 0 else (m - 1)
                    got = delta_poset(m, q, n).determinant()
                    assert got == expect, (m, q, n)

    def test_antichain(self):
        # all-ones off the diagonal: |det(J - I)| = m - 1
        for m in (1, 2, 3, 4, 5):
            assert FinitePoset.antichain(m).determinant() == m - 1


class TestHeightWidth:
    def test_antichain(self):
        p = FinitePoset.antichain(4)
        assert p.height() == 0
        assert p.width() == 4

    def test_chain(self):
        p = FinitePoset.chain(3)
        assert p.height() == 2
        assert p.width() == 1

    def test_family_height(self):
        for m in (1, 2, 3):
            for q in (1, 2, 3):
                for n in (0, 1, 2, 3):
                    assert delta_poset(m, q, n).height() == n

    def test_family_width(self):
        assert delta_poset(2, 3, 2).width() == 3
        assert delta_poset(4, 2, 1).width() == 4


class TestDeltaVersusComplex:
    def test_order_complex_equals_iterated_cone(self):
        for m in (1, 2, 3):
            for q in (1, 2, 3):
                for n in (0, 1, 2, 3):
                    poset_side = delta_poset(m, q, n).order_complex()
                    complex_side = SimplicialComplex.points(m)
                    for _ in range(n):
                        complex_side = complex_side.q_cone(q)
                    assert poset_side == complex_side
