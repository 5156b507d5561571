"""Compiled and pure Python scan kernels must agree bit for bit."""

import numpy as np
import pytest

from multimagic import _kernel, _scan_py
from multimagic.construct import VirtualHypercube, construct_square
from multimagic.fixtures import get_square
from multimagic.genmat import explicit_generator

compiled = pytest.importorskip("multimagic._scan_c") \
    if _kernel.HAVE_COMPILED else None

pytestmark = pytest.mark.skipif(not _kernel.HAVE_COMPILED,
                                reason="compiled kernel not built")


def pair_inputs(vh):
    tables = vh.axis_tables()
    return (tables[0], tables[1], vh.spec.ring.add_table(), vh.weight_table())


def assert_same(a, b):
    ra, ca, da, aa, pa = a
    rb, cb, db, ab, pb = b
    assert ra == rb and ca == cb and da == db and aa == ab
    if pa is None or pb is None:
        assert pa is None and pb is None
    else:
        assert (np.asarray(pa) == np.asarray(pb)).all()


class TestPairScan:
    def test_fixture_square(self):
        vh = VirtualHypercube(get_square("ex57-25").spec())
        args = pair_inputs(vh)
        for emax in (1, 2, 3):
            assert_same(compiled.scan_pair(*args, emax, 0, 25, True),
                        _scan_py.scan_pair(*args, emax, 0, 25, True))

    def test_gf4_square(self):
        vh = VirtualHypercube(get_square("ex55-16").spec())
        args = pair_inputs(vh)
        assert_same(compiled.scan_pair(*args, 2, 0, 16, True),
                    _scan_py.scan_pair(*args, 2, 0, 16, True))

    def test_row_range_partition(self):
        vh = VirtualHypercube(get_square("ex56-9").spec())
        args = pair_inputs(vh)
        full = compiled.scan_pair(*args, 2, 0, 9, False)
        lo = compiled.scan_pair(*args, 2, 0, 4, False)
        hi = compiled.scan_pair(*args, 2, 4, 9, False)
        assert lo[0] + hi[0] == full[0]
        merged_cols = [[lo[1][j][e] + hi[1][j][e] for e in range(2)]
                       for j in range(9)]
        assert merged_cols == full[1]
        assert [lo[2][e] + hi[2][e] for e in range(2)] == full[2]
        assert [lo[3][e] + hi[3][e] for e in range(2)] == full[3]

    def test_degree_four_large_values(self):
        vh = construct_square(explicit_generator(2, 7), t=(3, 1, 4, 1))
        args = pair_inputs(vh)
        assert_same(compiled.scan_pair(*args, 4, 0, 49, True),
                    _scan_py.scan_pair(*args, 4, 0, 49, True))


class TestDenseScan:
    def test_fixture(self):
        vals = np.asarray(get_square("pfeffermann-8").table, dtype=np.int64)
        for emax in (1, 2, 4):
            assert_same(compiled.scan_dense(vals, emax, 0, 8, True),
                        _scan_py.scan_dense(vals, emax, 0, 8, True))

    def test_random_values(self):
        rng = np.random.default_rng(11)
        vals = rng.integers(1, 10 ** 6, size=(37, 37)).astype(np.int64)
        assert_same(compiled.scan_dense(vals, 4, 0, 37, False),
                    _scan_py.scan_dense(vals, 4, 0, 37, False))

    def test_python_kernel_handles_huge_values_exactly(self):
        # beyond the compiled guard: degree-4 sums of 2**40-scale entries
        vals = np.full((3, 3), 2 ** 40, dtype=np.int64)
        rows, cols, diag, anti, _ = _scan_py.scan_dense(vals, 4, 0, 3, False)
        assert rows[0][3] == 3 * (2 ** 160)
        assert diag[3] == 3 * (2 ** 160)


class TestDispatcher:
    def test_prefers_compiled_when_safe(self):
        mod = _kernel.active_kernel(5764801, 5764801, 4)
        assert _kernel.kernel_name(mod) == "compiled"

    def test_falls_back_when_sums_overflow(self):
        mod = _kernel.active_kernel(2 ** 40, 2 ** 20, 4)
        assert _kernel.kernel_name(mod) == "python"

    def test_explicit_python(self):
        mod = _kernel.active_kernel(100, 100, 2, prefer="python")
        assert _kernel.kernel_name(mod) == "python"

    def test_explicit_compiled_raises_when_unsafe(self):
        with pytest.raises(ValueError):
            _kernel.active_kernel(2 ** 40, 2 ** 20, 4, prefer="compiled")

    def test_fit_bound(self):
        assert _kernel.compiled_fits(5764801, 5764801, 4)
        assert not _kernel.compiled_fits(2 ** 32, 2 ** 31, 4)
