"""Exact verification of magic properties for dense and virtual sources.

Every sum is computed in exact integer arithmetic; no floating point is
used anywhere (fourth-power sums of large squares exceed 64-bit range,
so low-degree sums ride int64/128-bit fast paths only when overflow is
provably impossible, and arbitrary-precision integers otherwise).

A source is either a dense integer array (any d-dimensional hypercube)
or a VirtualHypercube, whose entries are computed on demand; verifying
a virtual square streams it without ever materializing the tensor.
Two-dimensional scans go through the selected kernel and may be
partitioned row-wise across worker threads; the merge is a plain sum of
per-worker partials, so results do not depend on scheduling.

Checked properties per power degree e = 1..n: all axis-parallel lines
(rows/columns, plus pillars for cubes), the main diagonal and
antidiagonal for squares or all 2^(d-1) space diagonals for d >= 3, and
optionally: broken (wrap-around) diagonals, center-symmetry
(associativity), and for cubes the diagonals of every orthogonal slice.
Broken diagonals are required at degree 1, the classical meaning of
"pandiagonal"; their higher-degree results are still recorded.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import _kernel
from .construct import VirtualHypercube, cell_budget

_SUPPORTED_SOURCE = "expected a dense integer array or a VirtualHypercube"


class NotIntegralError(ArithmeticError):
    """No normal hypercube of this shape can be magic at this degree."""


def power_sum(limit: int, e: int) -> int:
    """Exact sum of k**e for k = 1..limit (closed forms through e = 4)."""
    n = limit
    if e == 0:
        return n
    if e == 1:
        return n * (n + 1) // 2
    if e == 2:
        return n * (n + 1) * (2 * n + 1) // 6
    if e == 3:
        return (n * (n + 1) // 2) ** 2
    if e == 4:
        return n * (n + 1) * (2 * n + 1) * (3 * n * n + 3 * n - 1) // 30
    return sum(k ** e for k in range(1, n + 1))


def magic_sum(m: int, d: int, e: int) -> int:
    """The forced line sum of a normal d-dimensional side-m hypercube."""
    total = power_sum(m ** d, e)
    lines = m ** (d - 1)
    if total % lines:
        raise NotIntegralError(
            f"side {m}, dimension {d}: degree-{e} power total {total} is not "
            f"divisible by {lines}, so no normal magic hypercube exists there")
    return total // lines


@dataclass(frozen=True)
class LineFailure:
    degree: int | None
    prop: str
    line: str
    observed: int
    expected: int

    def to_json(self):
        return {"degree": self.degree, "property": self.prop,
                "line": self.line, "observed": str(self.observed),
                "expected": str(self.expected)}


@dataclass
class MagicReport:
    order: int
    dimension: int
    degree: int
    sums: dict                  # degree -> expected magic sum
    per_degree: dict            # degree -> {property -> bool}
    normal: bool | None = None
    associative: bool | None = None
    failures: list = field(default_factory=list)
    kernel: str = ""

    REQUIRED_2D = ("rows", "cols", "diag", "anti")

    @property
    def ok(self) -> bool:
        if self.normal is False or self.associative is False:
            return False
        for e, props in self.per_degree.items():
            for name, passed in props.items():
                if name == "pandiagonal" and e > 1:
                    continue  # informational beyond degree 1
                if not passed:
                    return False
        return True

    def to_json(self):
        return {
            "order": self.order,
            "dimension": self.dimension,
            "degree": self.degree,
            "ok": self.ok,
            "normal": self.normal,
            "associative": self.associative,
            "magic_sums": {str(e): str(s) for e, s in self.sums.items()},
            "per_degree": {str(e): dict(props)
                           for e, props in self.per_degree.items()},
            "failures": [f.to_json() for f in self.failures],
            "kernel": self.kernel,
        }


# ---------------------------------------------------------------------------
# Source handling
# ---------------------------------------------------------------------------

def _resolve(source):
    if isinstance(source, VirtualHypercube):
        return "virtual", source
    arr = np.asarray(source)
    if arr.dtype == object or not np.issubdtype(arr.dtype, np.integer):
        arr = arr.astype(np.int64)
    if arr.ndim < 2 or len(set(arr.shape)) != 1:
        raise ValueError(_SUPPORTED_SOURCE)
    return "dense", arr


def _scan_2d(kind, src, emax, want_presence, workers, prefer):
    """Merged (row_sums, col_sums, diag, anti, presence) over all rows."""
    if kind == "virtual":
        m = src.order
        tables = src.axis_tables()
        add = src.spec.ring.add_table()
        wt = src.weight_table()
        max_value = src.cells
        args = (tables[0], tables[1], add, wt)
        scan_name = "scan_pair"
    else:
        m = src.shape[0]
        max_value = int(src.max(initial=0))
        if int(src.min(initial=0)) < 0:
            prefer = "python"  # compiled kernel is unsigned
        args = (src,)
        scan_name = "scan_dense"
    mod = _kernel.active_kernel(max_value, m * m, emax, prefer)
    scan = getattr(mod, scan_name)

    workers = max(1, int(workers))
    bounds = _chunks(m, workers)
    if len(bounds) == 1:
        lo, hi = bounds[0]
        parts = [scan(*args, emax, lo, hi, want_presence)]
    else:
        with ThreadPoolExecutor(max_workers=len(bounds)) as pool:
            futs = [pool.submit(scan, *args, emax, lo, hi, want_presence)
                    for lo, hi in bounds]
            parts = [f.result() for f in futs]

    row_sums = []
    col_sums = [[0] * emax for _ in range(m)]
    diag = [0] * emax
    anti = [0] * emax
    presence = None
    for rs, cs, dg, at, pr in parts:
        row_sums.extend(rs)
        for j in range(m):
            cj = col_sums[j]
            for e in range(emax):
                cj[e] += cs[j][e]
        for e in range(emax):
            diag[e] += dg[e]
            anti[e] += at[e]
        if pr is not None:
            presence = pr if presence is None else presence | pr
    return row_sums, col_sums, diag, anti, presence, _kernel.kernel_name(mod)


def _chunks(m, workers):
    workers = min(workers, m)
    step = m // workers
    bounds = []
    lo = 0
    for i in range(workers):
        hi = m if i == workers - 1 else lo + step
        bounds.append((lo, hi))
        lo = hi
    return bounds


def _entry_getter(kind, src):
    if kind == "virtual":
        return src.entry, src.order, src.d
    m = src.shape[0]
    return (lambda idx: int(src[tuple(i - 1 for i in idx)])), m, src.ndim


# ---------------------------------------------------------------------------
# Normality
# ---------------------------------------------------------------------------

def check_normal(source, workers: int = 1, kernel=None) -> bool:
    """True iff the entries are exactly a permutation of 1..m^d."""
    kind, src = _resolve(source)
    if kind == "dense" and src.ndim != 2:
        vals = np.sort(src.ravel())
        return bool((vals == np.arange(1, vals.size + 1)).all())
    if kind == "virtual" and src.d != 2:
        seen = np.zeros(src.cells, dtype=np.uint8)
        order = src.order
        for idx in product(range(1, order + 1), repeat=src.d):
            v = src.entry(idx)
            if not 1 <= v <= src.cells:
                return False
            seen[v - 1] = 1
        return bool(seen.all())
    *_, presence, _ = _scan_2d(kind, src, 1, True, workers, kernel)
    return bool(presence.all())


# ---------------------------------------------------------------------------
# Full multimagic verification
# ---------------------------------------------------------------------------

def check_multimagic(source, degree: int, pandiagonal: bool = False,
                     associative: bool = False, perfect: bool = False,
                     check_normality: bool = True, workers: int = 1,
                     kernel=None) -> MagicReport:
    kind, src = _resolve(source)
    entry, m, d = _entry_getter(kind, src)
    sums = {e: magic_sum(m, d, e) for e in range(1, degree + 1)}
    report = MagicReport(order=m, dimension=d, degree=degree, sums=sums,
                         per_degree={e: {} for e in range(1, degree + 1)})

    if d == 2:
        _check_2d(kind, src, report, degree, check_normality, workers, kernel)
        if pandiagonal:
            _check_pandiagonal(kind, src, report, degree)
    else:
        _check_highdim(entry, m, d, report, degree, check_normality, perfect)
    if associative:
        report.associative = _check_associative(kind, src, entry, m, d, report)
    return report


def _note(report, degree, prop, line, observed, expected):
    ok = observed == expected
    props = report.per_degree[degree]
    if prop not in props:
        props[prop] = ok
    elif not ok:
        props[prop] = False
    if not ok and not any(f.degree == degree and f.prop == prop
                          for f in report.failures):
        report.failures.append(
            LineFailure(degree, prop, line, observed, expected))


def _check_2d(kind, src, report, degree, check_normality, workers, kernel):
    m = report.order
    rows, cols, diag, anti, presence, used = _scan_2d(
        kind, src, degree, check_normality, workers, kernel)
    report.kernel = used
    if check_normality:
        report.normal = bool(presence.all())
    for e in range(1, degree + 1):
        S = report.sums[e]
        for i in range(m):
            _note(report, e, "rows", f"row {i + 1}", rows[i][e - 1], S)
        for j in range(m):
            _note(report, e, "cols", f"col {j + 1}", cols[j][e - 1], S)
        _note(report, e, "diag", "main diagonal", diag[e - 1], S)
        _note(report, e, "anti", "antidiagonal", anti[e - 1], S)


def _dense_values(kind, src):
    if kind == "dense":
        return src
    if src.cells > cell_budget():
        raise ValueError("this check requires a materializable square; "
                         "the source exceeds the cell budget")
    return src.materialize()


def _check_pandiagonal(kind, src, report, degree):
    vals = _dense_values(kind, src)
    m = report.order
    idx = np.arange(m)
    top = int(vals.max(initial=0))
    for e in range(1, degree + 1):
        S = report.sums[e]
        pe = vals.astype(object) ** e if top ** e * m > 2 ** 62 \
            else vals.astype(np.int64) ** e
        for k in range(m):
            fwd = int(pe[idx, (idx + k) % m].sum())
            _note(report, e, "pandiagonal", f"broken diagonal +{k}", fwd, S)
            bwd = int(pe[idx, (k - idx) % m].sum())
            _note(report, e, "pandiagonal", f"broken antidiagonal +{k}", bwd, S)


def _check_associative(kind, src, entry, m, d, report):
    target = m ** d + 1
    if d == 2:
        vals = _dense_values(kind, src)
        flipped = vals[::-1, ::-1]
        ok = bool(((vals + flipped) == target).all())
        if not ok:
            bad = np.argwhere(vals + flipped != target)[0]
            report.failures.append(LineFailure(
                None, "associative",
                f"cell ({bad[0] + 1},{bad[1] + 1})",
                int(vals[tuple(bad)] + flipped[tuple(bad)]), target))
        return ok
    for idx in product(range(1, m + 1), repeat=d):
        mirror = tuple(m + 1 - i for i in idx)
        s = entry(idx) + entry(mirror)
        if s != target:
            report.failures.append(LineFailure(
                None, "associative", f"cell {idx}", s, target))
            return False
    return True


def _check_highdim(entry, m, d, report, degree, check_normality, perfect):
    report.kernel = "python"
    if check_normality:
        seen = np.zeros(m ** d, dtype=np.uint8)
    axis_names = {0: "rows", 1: "cols", 2: "pillars"}
    powers = range(1, degree + 1)

    # axis-parallel lines; mark presence on the first axis pass
    for axis in range(d):
        name = axis_names.get(axis, f"axis{axis}")
        for fixed in product(range(1, m + 1), repeat=d - 1):
            acc = [0] * degree
            for x in range(1, m + 1):
                idx = fixed[:axis] + (x,) + fixed[axis:]
                v = entry(idx)
                if axis == 0 and check_normality and 1 <= v <= m ** d:
                    seen[v - 1] = 1
                p = 1
                for e in range(degree):
                    p *= v
                    acc[e] += p
            for e in powers:
                _note(report, e, name, f"{name[:-1]} {fixed}", acc[e - 1],
                      report.sums[e])
    if check_normality:
        report.normal = bool(seen.all())

    # 2^(d-1) space diagonals: direction signs, first axis always +1
    for signs in product((1, -1), repeat=d - 1):
        label = "space diagonal " + "".join(
            "+" if s > 0 else "-" for s in (1,) + signs)
        acc = [0] * degree
        for x in range(1, m + 1):
            idx = (x,) + tuple(x if s > 0 else m + 1 - x for s in signs)
            v = entry(idx)
            p = 1
            for e in range(degree):
                p *= v
                acc[e] += p
        for e in powers:
            _note(report, e, "space-diagonals", label, acc[e - 1],
                  report.sums[e])

    if perfect:
        if d != 3:
            raise ValueError("slice-diagonal checks are defined for cubes")
        _check_perfect_slices(entry, m, report, degree)


def _check_perfect_slices(entry, m, report, degree):
    """Both diagonals of every orthogonal slice, all degrees."""
    def cell(orient, s, a, b):
        if orient == 0:
            return (s, a, b)
        if orient == 1:
            return (a, s, b)
        return (a, b, s)

    for orient in range(3):
        for s in range(1, m + 1):
            for flip in (False, True):
                acc = [0] * degree
                for a in range(1, m + 1):
                    b = a if not flip else m + 1 - a
                    v = entry(cell(orient, s, a, b))
                    p = 1
                    for e in range(degree):
                        p *= v
                        acc[e] += p
                label = f"slice axis{orient}={s} {'anti' if flip else 'main'}"
                for e in range(1, degree + 1):
                    _note(report, e, "perfect-slices", label, acc[e - 1],
                          report.sums[e])


# ---------------------------------------------------------------------------
# Order-25 substructure checks
# ---------------------------------------------------------------------------

def _pandiagonal_magic_5x5(block, expected):
    m = 5
    idx = np.arange(m)
    sums = [int(block[i].sum()) for i in range(m)]
    sums += [int(block[:, j].sum()) for j in range(m)]
    for k in range(m):
        sums.append(int(block[idx, (idx + k) % m].sum()))
        sums.append(int(block[idx, (k - idx) % m].sum()))
    return all(s == expected for s in sums)


def check_sub5x5_properties(values):
    """The two order-25 substructure properties.

    (i) every aligned 5x5 block is a pandiagonal magic square, all with
    the same sum; (ii) so is every mod-5 row/column selection.
    """
    vals = np.asarray(values, dtype=np.int64)
    if vals.shape != (25, 25):
        raise ValueError("these checks apply to order-25 squares")
    expected = magic_sum(25, 2, 1) // 5
    aligned = all(
        _pandiagonal_magic_5x5(vals[5 * bi:5 * bi + 5, 5 * bj:5 * bj + 5],
                               expected)
        for bi in range(5) for bj in range(5))
    spread = all(
        _pandiagonal_magic_5x5(vals[i::5, j::5], expected)
        for i in range(5) for j in range(5))
    return aligned, spread
