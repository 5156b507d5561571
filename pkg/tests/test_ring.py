"""Ring arithmetic: canonical forms, units, determinants over non-domains."""

import random
from itertools import combinations, permutations

import pytest

from multimagic.ring import (FiniteRing, NotIrreducibleError, RingError,
                             RingMismatchError, matrix_det, nxn_minors,
                             poly_from_string, poly_to_string, same_ring)


def perm_expansion_det(ring, rows):
    """Independent determinant oracle: sum over permutations."""
    n = len(rows)
    acc = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n)
                         if perm[i] > perm[j])
        term = ring.one
        for i in range(n):
            term = ring.mul(term, rows[i][perm[i]])
        acc = ring.add(acc, ring.neg(term) if inversions % 2 else term)
    return acc


GF4 = FiniteRing.gf(2, 2)  # encoding 0,1,x,x+1 -> 0,1,2,3


class TestArithmetic:
    def test_add_examples(self):
        assert FiniteRing.zmod(10).add(7, 5) == 2
        assert GF4.add(2, 3) == 1           # x + (x+1) = 1
        assert FiniteRing.zmod(9).add(0, 4) == 4

    def test_mul_examples(self):
        assert FiniteRing.zmod(10).mul(7, 3) == 1
        assert GF4.mul(2, 2) == 3           # x*x = x+1
        assert FiniteRing.zmod(9).mul(3, 3) == 0

    def test_neg_examples(self):
        assert FiniteRing.zmod(10).neg(7) == 3
        assert GF4.neg(2) == 2              # characteristic 2
        assert FiniteRing.zmod(9).neg(0) == 0

    def test_inverse_examples(self):
        assert FiniteRing.zmod(10).try_inverse(3) == 7
        assert FiniteRing.zmod(10).try_inverse(5) is None
        assert GF4.try_inverse(2) == 3      # x * (x+1) = 1

    def test_elements_order(self):
        assert list(FiniteRing.zmod(3).elements()) == [0, 1, 2]
        assert list(GF4.elements()) == [0, 1, 2, 3]
        assert list(FiniteRing.zmod(2).elements()) == [0, 1]

    def test_subtraction(self):
        Z7 = FiniteRing.zmod(7)
        for a in Z7.elements():
            for b in Z7.elements():
                assert Z7.add(Z7.sub(a, b), b) == a


RING_BATTERY = [
    FiniteRing.zmod(4),
    FiniteRing.zmod(6),
    FiniteRing.zmod(9),
    FiniteRing.zmod(12),
    FiniteRing.zmod(16),
    FiniteRing.zmod(13),
    GF4,
    FiniteRing.gf(2, 3),
    FiniteRing.gf(3, 2),
    FiniteRing.gf(2, 4),
]


@pytest.mark.parametrize("ring", RING_BATTERY, ids=lambda r: r.descriptor())
class TestAxioms:
    def test_ring_axioms_exhaustive(self, ring):
        els = list(ring.elements())
        assert len(els) == ring.q <= 16
        for a in els:
            assert ring.add(a, 0) == a
            assert ring.mul(a, ring.one) == a
            assert ring.add(a, ring.neg(a)) == 0
            for b in els:
                assert ring.add(a, b) == ring.add(b, a)
                assert ring.mul(a, b) == ring.mul(b, a)
                for c in els:
                    assert ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))
                    assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
                    assert ring.mul(a, ring.add(b, c)) == \
                        ring.add(ring.mul(a, b), ring.mul(a, c))

    def test_inverse_cross_check(self, ring):
        for a in ring.elements():
            inv = ring.try_inverse(a)
            by_search = [b for b in ring.elements() if ring.mul(a, b) == ring.one]
            if inv is None:
                assert not by_search
            else:
                assert ring.mul(a, inv) == ring.one
                assert inv in by_search


def test_prime_field_all_nonzero_invertible():
    for q in (2, 3, 5, 7, 11, 13):
        ring = FiniteRing.zmod(q)
        assert all(ring.try_inverse(a) is not None for a in range(1, q))


class TestDeterminant:
    def test_examples(self):
        assert matrix_det(FiniteRing.zmod(5), [[1, 2], [2, 1]]) == 2
        assert matrix_det(GF4, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
        assert matrix_det(FiniteRing.zmod(6), [[2, 0], [0, 3]]) == 0

    def test_against_permutation_expansion_z4(self):
        ring = FiniteRing.zmod(4)
        rng = random.Random(20240917)
        for _ in range(1000):
            m = [[rng.randrange(4) for _ in range(3)] for _ in range(3)]
            assert matrix_det(ring, m) == perm_expansion_det(ring, m)

    def test_against_permutation_expansion_gf4(self):
        rng = random.Random(7)
        for _ in range(200):
            m = [[rng.randrange(4) for _ in range(3)] for _ in range(3)]
            assert matrix_det(GF4, m) == perm_expansion_det(GF4, m)

    def test_minor_table_matches_direct(self):
        ring = FiniteRing.zmod(6)
        rng = random.Random(3)
        mat = [[rng.randrange(6) for _ in range(3)] for _ in range(7)]
        table = dict(nxn_minors(ring, mat, 3))
        for rowset in combinations(range(7), 3):
            sub = [mat[i] for i in rowset]
            assert table[rowset] == perm_expansion_det(ring, sub)

    def test_non_square_rejected(self):
        with pytest.raises(RingError):
            matrix_det(FiniteRing.zmod(5), [[1, 2, 3], [4, 5, 6]])


class TestDescriptors:
    def test_parse_forms(self):
        assert FiniteRing.parse("zmod:10").q == 10
        assert FiniteRing.parse("gf:5") == FiniteRing.zmod(5)
        ring = FiniteRing.parse("gf:2^2:x^2+x+1")
        assert ring == GF4

    def test_round_trip(self):
        for ring in (FiniteRing.zmod(10), FiniteRing.zmod(7), GF4,
                     FiniteRing.gf(3, 2), FiniteRing.gf(2, 3)):
            assert FiniteRing.parse(ring.descriptor()) == ring

    def test_poly_strings(self):
        assert poly_from_string("x^2+x+1", 2) == (1, 1, 1)
        assert poly_from_string("x^2+2", 3) == (2, 0, 1)
        assert poly_to_string((1, 1, 1)) == "x^2+x+1"

    def test_reducible_modulus_rejected(self):
        with pytest.raises(NotIrreducibleError):
            FiniteRing.gf(2, 2, modulus=(1, 0, 1))  # x^2+1 = (x+1)^2

    def test_bad_descriptor(self):
        with pytest.raises(RingError):
            FiniteRing.parse("zmod:1")
        with pytest.raises(RingError):
            FiniteRing.parse("field:7")

    def test_mismatch_detection(self):
        with pytest.raises(RingMismatchError):
            same_ring(FiniteRing.zmod(5), FiniteRing.zmod(7))
        assert same_ring(GF4, FiniteRing.gf(2, 2)) == GF4

    def test_canonical_element_validation(self):
        assert FiniteRing.zmod(10).element(-3) == 7
        assert GF4.element([1, 1]) == 3
        with pytest.raises(RingError):
            GF4.element(7)


def test_extension_coeff_round_trip():
    GF9 = FiniteRing.gf(3, 2)
    for a in GF9.elements():
        assert GF9.element(list(GF9.coeffs(a))) == a
