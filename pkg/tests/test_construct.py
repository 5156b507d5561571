"""Square construction: fixture regeneration, normality, star product."""

import json
import random

import numpy as np
import pytest

from multimagic.construct import (NotNormalError, SquareSpec, TooLargeError,
                                  VirtualHypercube, construct_square,
                                  read_square_csv, star, write_square_csv)
from multimagic.fixtures import get_generator, get_square
from multimagic.genmat import explicit_generator, brute_force_generator
from multimagic.numbering import TypeBijection
from multimagic.ring import FiniteRing, RingError
from multimagic.verify import check_multimagic, check_normal


class TestFixtureRegeneration:
    """The printed reference tables must be reproduced cell for cell."""

    @pytest.mark.parametrize("name", ["ex56-9", "ex55-16", "ex57-25"])
    def test_regenerates_printed_table(self, name):
        fx = get_square(name)
        regen = VirtualHypercube(fx.spec()).materialize()
        assert (regen == np.asarray(fx.table)).all()

    def test_heath_square_unique_shift(self):
        """(2,1,2,0) is the only shift making the odd-family 9x9 associative."""
        gm = get_generator("gen-d2-n2-odd").over(3)
        associative_shifts = []
        for enc in range(81):
            t = [(enc // 3 ** i) % 3 for i in range(4)]
            vals = VirtualHypercube(
                SquareSpec.build(gm, t=t, certify=False)).materialize()
            if ((vals + vals[::-1, ::-1]) == 82).all():
                associative_shifts.append(tuple(t))
        assert associative_shifts == [(2, 1, 2, 0)]

    def test_heath_fixture_is_that_square(self):
        fx = get_square("heath-9")
        assert tuple(fx.spec_json["t"]) == (2, 1, 2, 0)
        vals = fx.values()
        assert ((vals + vals[::-1, ::-1]) == 82).all()


class TestEntry:
    def test_entry_equals_materialized(self):
        vh = VirtualHypercube(get_square("ex57-25").spec())
        dense = vh.materialize()
        rng = random.Random(1)
        for _ in range(60):
            i, j = rng.randrange(1, 26), rng.randrange(1, 26)
            assert vh.entry((i, j)) == dense[i - 1, j - 1]

    def test_entry_is_pure(self):
        vh = VirtualHypercube(get_square("ex55-16").spec())
        assert vh.entry((7, 9)) == vh.entry((7, 9))

    def test_index_validation(self):
        vh = VirtualHypercube(get_square("ex56-9").spec())
        with pytest.raises(RingError):
            vh.entry((0, 1))
        with pytest.raises(RingError):
            vh.entry((1, 10))
        with pytest.raises(RingError):
            vh.entry((1,))

    def test_zero_shift_corner(self):
        """With t = 0 every numbering sends the all-zero vector to 1."""
        gm = explicit_generator(2, 5)
        vh = construct_square(gm)
        assert vh.entry((1, 1)) == 1


class TestNormality:
    @pytest.mark.parametrize("n,q", [(1, 5), (2, 3), (2, 5), (2, 7)])
    def test_generated_squares_are_normal(self, n, q):
        if n == 1:
            gm = brute_force_generator(FiniteRing.zmod(q), 1)
        elif (n, q) == (2, 3):
            gm = get_generator("gen-d2-n2-odd").over(3)
        else:
            gm = explicit_generator(n, q)
        rng = random.Random(n * 100 + q)
        for _ in range(2):
            t = [rng.randrange(q) for _ in range(gm.size)]
            vh = construct_square(gm, t=t)
            vals = vh.materialize()
            assert sorted(vals.ravel().tolist()) == \
                list(range(1, vh.cells + 1))

    def test_gf4_square_normal(self):
        vh = VirtualHypercube(get_square("ex55-16").spec())
        assert check_normal(vh)


class TestMaterializeBudget:
    def test_too_large(self):
        gm = explicit_generator(5, 11)
        vh = construct_square(gm)
        assert vh.cells == 11 ** 10
        with pytest.raises(TooLargeError):
            vh.materialize()

    def test_budget_env(self, monkeypatch):
        monkeypatch.setenv("MULTIMAGIC_CELL_BUDGET", "10")
        vh = VirtualHypercube(get_square("ex56-9").spec())
        with pytest.raises(TooLargeError):
            vh.materialize()
        assert vh.materialize(budget=100).shape == (9, 9)


class TestStar:
    def test_identity_composition(self):
        A = np.asarray(get_square("pfeffermann-8").table)
        assert (star(A, [[1]]) == A).all()

    def test_normal_output(self):
        A = np.asarray(get_square("pfeffermann-8").table)
        s = star(A, A)
        assert s.shape == (64, 64)
        assert sorted(s.ravel().tolist()) == list(range(1, 64 * 64 + 1))

    def test_composition_is_bimagic(self):
        A = np.asarray(get_square("pfeffermann-8").table)
        report = check_multimagic(star(A, A), 2)
        assert report.ok and report.normal

    def test_mixed_orders(self):
        a = np.asarray(get_square("ex56-9").table)
        b = np.asarray(get_square("ex55-16").table)
        s = star(a, b)
        assert s.shape == (144, 144)
        report = check_multimagic(s, 2)
        assert report.ok and report.normal

    def test_literal_variant_magic_but_not_normal(self):
        A = np.asarray(get_square("ex56-9").table)
        s = star(A, A, normalized=False)
        values = sorted(s.ravel().tolist())
        assert values[0] == 81 + 1 and values != list(range(1, 81 * 81 + 1))
        # every line still sums to one common constant per degree, only the
        # constant is not the normal-square magic sum
        m = s.shape[0]
        for e in (1, 2):
            pe = s.astype(object) ** e
            sums = {int(pe[i].sum()) for i in range(m)}
            sums |= {int(pe[:, j].sum()) for j in range(m)}
            sums.add(int(pe.trace()))
            sums.add(int(pe[:, ::-1].trace()))
            assert len(sums) == 1, e
        from multimagic.verify import magic_sum
        assert int(s.sum(axis=1)[0]) != magic_sum(m, 2, 1)

    def test_rejects_non_normal_inputs(self):
        with pytest.raises(NotNormalError):
            star([[1, 2], [3, 3]], [[1]])

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            star([[1, 2, 3]], [[1]])


class TestSpecSerialization:
    def test_round_trip(self):
        for name in ("ex55-16", "ex57-25", "heath-9"):
            spec = get_square(name).spec()
            again = SquareSpec.from_json(json.loads(json.dumps(spec.to_json())))
            assert again.t == spec.t
            assert again.generator == spec.generator
            assert (VirtualHypercube(again).materialize() ==
                    VirtualHypercube(spec).materialize()).all()

    def test_defaults_fill_in(self):
        gm = explicit_generator(2, 5)
        obj = gm.to_json()
        obj["t"] = [0, 0, 0, 0]
        spec = SquareSpec.from_json(obj)
        assert spec.axis_numbering.bijections[0] == TypeBijection.standard(gm.ring)

    def test_ring_mismatch_rejected(self):
        gm = explicit_generator(2, 5)
        wrong = TypeBijection.standard(FiniteRing.zmod(7))
        with pytest.raises(RingError):
            SquareSpec.build(gm, axis_bijection=wrong)


class TestCsv:
    def test_round_trip(self, tmp_path):
        A = np.asarray(get_square("ex56-9").table)
        path = tmp_path / "square.csv"
        write_square_csv(A, path)
        assert (read_square_csv(path) == A).all()

    def test_ragged_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,2\n3\n")
        with pytest.raises(ValueError):
            read_square_csv(path)
