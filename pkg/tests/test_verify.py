"""Verification: magic sums, reports, streaming/dense agreement, mutations."""

import random

import numpy as np
import pytest

from multimagic.construct import VirtualHypercube, construct_square
from multimagic.fixtures import get_generator, get_square
from multimagic.genmat import explicit_generator
from multimagic.verify import (LineFailure, MagicReport, check_multimagic,
                               check_normal, check_sub5x5_properties,
                               magic_sum, power_sum)

PF = np.asarray(get_square("pfeffermann-8").table)


class TestMagicSum:
    def test_examples(self):
        assert magic_sum(8, 2, 1) == 260
        assert magic_sum(8, 2, 2) == 11180
        assert magic_sum(16, 2, 2) == 351576
        assert magic_sum(9, 2, 1) == 369
        assert magic_sum(9, 2, 2) == 20049
        assert magic_sum(25, 2, 1) == 7825
        assert magic_sum(25, 2, 2) == 3263025

    def test_power_sum_matches_direct_summation(self):
        for limit in (1, 2, 9, 64, 625):
            for e in range(0, 7):
                assert power_sum(limit, e) == \
                    sum(k ** e for k in range(1, limit + 1))

    def test_s4_order_2401_two_summation_orders(self):
        """Closed form against the telescoped big-integer loop."""
        pinned = 530346399165225564147884368641
        total = magic_sum(2401, 2, 4)
        assert total == pinned
        m4 = 2401 ** 2
        ascending = 0
        for k in range(1, m4 + 1):
            ascending += k * k * k * k
        assert ascending // 2401 == pinned and ascending % 2401 == 0

    def test_divisibility_never_fails_in_scope(self):
        # the integrality guard stays silent for every shape exercised here
        for m in range(2, 30):
            for d in (2, 3):
                for e in range(1, 6):
                    magic_sum(m, d, e)


class TestCheckNormal:
    def test_reference_table(self):
        assert check_normal(PF)

    def test_duplicate_cell_detected(self):
        bad = PF.copy()
        bad[0, 0] = bad[1, 1]
        assert not check_normal(bad)

    def test_generated_square(self):
        assert check_normal(construct_square(explicit_generator(2, 5)))

    def test_virtual_cube(self):
        gm = get_generator("gen-d3-n1").over(11)
        assert check_normal(construct_square(gm, t=(1, 2, 3)))


class TestFixtureReports:
    def test_pfeffermann_bimagic(self):
        report = check_multimagic(PF, 2)
        assert report.ok and report.normal
        assert report.sums == {1: 260, 2: 11180}

    def test_pfeffermann_not_trimagic(self):
        report = check_multimagic(PF, 3)
        assert not report.ok
        assert report.per_degree[3]["rows"] is False
        # lower degrees remain part of the same report and still pass
        assert all(report.per_degree[1].values())
        assert all(report.per_degree[2].values())

    def test_order9_bimagic(self):
        report = check_multimagic(np.asarray(get_square("ex56-9").table), 2)
        assert report.ok and report.sums == {1: 369, 2: 20049}

    def test_order16_associative(self):
        report = check_multimagic(np.asarray(get_square("ex55-16").table), 2,
                                  associative=True)
        assert report.ok and report.associative

    def test_order25_full_profile(self):
        vals = np.asarray(get_square("ex57-25").table)
        report = check_multimagic(vals, 2, pandiagonal=True, associative=True)
        assert report.ok and report.associative
        assert report.per_degree[1]["pandiagonal"] is True
        # broken diagonals stop agreeing at degree 2; informational only
        assert report.per_degree[2]["pandiagonal"] is False
        assert report.ok

    def test_report_json_shape(self):
        report = check_multimagic(PF, 2)
        out = report.to_json()
        assert out["ok"] is True and out["magic_sums"]["2"] == "11180"
        assert out["per_degree"]["1"]["rows"] is True
        assert out["normal"] is True


class TestMutationSensitivity:
    def test_hundred_random_swaps_all_detected(self):
        rng = random.Random(1891)
        for _ in range(100):
            bad = PF.copy()
            i1, j1, i2, j2 = (rng.randrange(8) for _ in range(4))
            if bad[i1, j1] == bad[i2, j2]:
                continue
            bad[i1, j1], bad[i2, j2] = bad[i2, j2], bad[i1, j1]
            report = check_multimagic(bad, 1)
            assert not report.ok
            assert report.failures, "swap must leave a witness"

    def test_witness_identifies_line(self):
        bad = PF.copy()
        bad[0, 0], bad[3, 4] = bad[3, 4], bad[0, 0]
        report = check_multimagic(bad, 1)
        fail = report.failures[0]
        assert isinstance(fail, LineFailure)
        assert fail.prop in ("rows", "cols")
        assert fail.observed != fail.expected


class TestStreamedVsMaterialized:
    @pytest.mark.parametrize("name", ["ex56-9", "ex55-16", "ex57-25"])
    def test_fixtures_agree(self, name):
        spec = get_square(name).spec()
        vh = VirtualHypercube(spec)
        streamed = check_multimagic(vh, 2)
        dense = check_multimagic(vh.materialize(), 2)
        assert streamed.per_degree == dense.per_degree
        assert streamed.sums == dense.sums
        assert streamed.normal == dense.normal

    def test_trimagic_125(self):
        vh = construct_square(explicit_generator(3, 5), t=(1, 0, 2, 3, 4, 1))
        assert vh.order == 125
        streamed = check_multimagic(vh, 3)
        dense = check_multimagic(vh.materialize(), 3)
        assert streamed.ok and dense.ok
        assert streamed.sums == dense.sums

    def test_kernels_agree(self):
        vh = construct_square(explicit_generator(2, 7), t=(1, 2, 3, 4))
        a = check_multimagic(vh, 2, kernel="python")
        b = check_multimagic(vh, 2)
        assert a.per_degree == b.per_degree and a.sums == b.sums

    def test_worker_partitions_agree(self):
        vh = construct_square(explicit_generator(2, 7), t=(0, 1, 2, 3))
        solo = check_multimagic(vh, 2, workers=1)
        multi = check_multimagic(vh, 2, workers=4)
        assert solo.per_degree == multi.per_degree
        assert solo.normal == multi.normal


class TestSub5x5:
    def test_reference_square_has_both(self):
        vals = np.asarray(get_square("ex57-25").table)
        assert check_sub5x5_properties(vals) == (True, True)

    def test_mutation_breaks_a_property(self):
        vals = np.asarray(get_square("ex57-25").table).copy()
        vals[0, 0], vals[12, 7] = vals[12, 7], vals[0, 0]
        aligned, spread = check_sub5x5_properties(vals)
        assert not (aligned and spread)

    def test_random_normal_fill_fails(self):
        rng = np.random.default_rng(20240131)
        vals = rng.permutation(np.arange(1, 626)).reshape(25, 25)
        assert check_sub5x5_properties(vals) == (False, False)

    def test_wrong_order_rejected(self):
        with pytest.raises(ValueError):
            check_sub5x5_properties(PF)


class TestCubeVerification:
    def test_cube_from_three_generator(self):
        gm = get_generator("gen-d3-n1").over(11)
        cube = construct_square(gm, t=(3, 1, 4))
        report = check_multimagic(cube, 1)
        assert report.ok and report.normal
        assert report.dimension == 3
        assert set(report.per_degree[1]) == \
            {"rows", "cols", "pillars", "space-diagonals"}

    def test_perfect_slices(self):
        gm = get_generator("gen-d3-n1").over(11)
        cube = construct_square(gm, t=(0, 0, 0))
        report = check_multimagic(cube, 1, perfect=True)
        assert report.ok
        assert report.per_degree[1]["perfect-slices"] is True

    def test_dense_cube_matches_virtual(self):
        gm = get_generator("gen-d3-n1").over(11)
        cube = construct_square(gm, t=(5, 6, 7))
        dense = cube.materialize()
        a = check_multimagic(cube, 1)
        b = check_multimagic(dense, 1)
        assert a.per_degree == b.per_degree

    def test_broken_cube_detected(self):
        gm = get_generator("gen-d3-n1").over(11)
        dense = construct_square(gm, t=(0, 2, 4)).materialize()
        dense[0, 0, 0], dense[5, 5, 5] = dense[5, 5, 5], dense[0, 0, 0]
        report = check_multimagic(dense, 1)
        assert not report.ok


class TestAssociativeOption:
    def test_non_associative_square_reports_false(self):
        report = check_multimagic(PF, 1, associative=True)
        assert report.associative is False
        assert not report.ok

    def test_heath_square(self):
        vals = get_square("heath-9").values()
        report = check_multimagic(vals, 2, associative=True)
        assert report.ok and report.associative


def test_magic_report_ok_logic():
    report = MagicReport(order=4, dimension=2, degree=1, sums={1: 34},
                         per_degree={1: {"rows": True, "cols": True,
                                         "diag": True, "anti": True}})
    assert report.ok
    report.per_degree[1]["diag"] = False
    assert not report.ok
