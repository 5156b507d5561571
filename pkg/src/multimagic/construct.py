"""Squares, cubes and hypercubes from generator matrices, plus composition.

A SquareSpec bundles everything the affine construction needs: the
generator matrix X, the shift vector t, and the numberings.  The cell at
axis indices (i_1..i_d) is obtained by un-numbering each index to a
vector over the ring, concatenating to v, and numbering X v + t; every
entry is computable on its own, so arbitrarily large squares can be
streamed without materializing anything ("virtual" squares).

For two-dimensional streaming the per-axis products block_i * vector are
precomputed once per axis index, which drops the per-cell cost from
O(size^2) ring operations to O(size) table lookups; the scan kernels
consume exactly these tables.

The star product composes two normal squares of orders m and n into one
of order m*n.  The raw block formula m^2*B[k,l] + A[i,j] shifts the
value range away from 1..(mn)^2, so the default normalizes to
m^2*(B[k,l]-1) + A[i,j], which maps normal inputs to a normal output;
the raw variant remains available.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product

import numpy as np

from .genmat import GeneratorMatrix
from .numbering import CompositeNumbering, TypeBijection
from .ring import FiniteRing, RingError, mat_vec, same_ring


DEFAULT_CELL_BUDGET = 2 ** 31


class TooLargeError(RingError):
    """Materialization would exceed the cell budget; stream instead."""


class NotNormalError(ValueError):
    pass


def cell_budget() -> int:
    env = os.environ.get("MULTIMAGIC_CELL_BUDGET")
    return int(env) if env else DEFAULT_CELL_BUDGET


@dataclass(frozen=True)
class SquareSpec:
    """Parameters defining one constructed hypercube (lazily evaluable)."""

    generator: GeneratorMatrix
    t: tuple
    axis_numbering: CompositeNumbering
    cell_numbering: CompositeNumbering

    def __post_init__(self):
        gm = self.generator
        same_ring(gm.ring, self.axis_numbering.ring, self.cell_numbering.ring)
        if len(self.t) != gm.size:
            raise RingError(f"t must have {gm.size} components")
        if self.axis_numbering.m != gm.width:
            raise RingError(f"axis numbering arity must be {gm.width}")
        if self.cell_numbering.m != gm.size:
            raise RingError(f"cell numbering arity must be {gm.size}")

    @classmethod
    def build(cls, generator: GeneratorMatrix, t=None, axis_bijection=None,
              cell_bijection=None, certify: bool = True) -> "SquareSpec":
        """Assemble a spec with the default shared-bijection numberings."""
        ring = generator.ring
        if certify:
            report = generator.certify()
            if not report.ok:
                raise RingError("generator failed certification: "
                                + report.failure.describe(ring))
        if axis_bijection is None:
            axis_bijection = TypeBijection.standard(ring)
        if cell_bijection is None:
            cell_bijection = axis_bijection
        if t is None:
            t = (0,) * generator.size
        t = tuple(ring.element(x) for x in t)
        axis = (axis_bijection if isinstance(axis_bijection, CompositeNumbering)
                else CompositeNumbering.uniform(axis_bijection, generator.width))
        cell = (cell_bijection if isinstance(cell_bijection, CompositeNumbering)
                else CompositeNumbering.uniform(cell_bijection, generator.size))
        return cls(generator, t, axis, cell)

    @property
    def ring(self) -> FiniteRing:
        return self.generator.ring

    @property
    def d(self) -> int:
        return self.generator.d

    @property
    def order(self) -> int:
        """Side length q^width."""
        return self.ring.q ** self.generator.width

    @property
    def cells(self) -> int:
        return self.order ** self.d

    def to_json(self):
        out = self.generator.to_json()
        out["t"] = list(self.t)
        out["axis_bijections"] = [b.to_json() for b in self.axis_numbering.bijections]
        out["cell_bijections"] = [b.to_json() for b in self.cell_numbering.bijections]
        for key in ("axis_bijections", "cell_bijections"):
            for b in out[key]:
                del b["ring"]  # implied by the spec's ring
        return out

    @classmethod
    def from_json(cls, obj) -> "SquareSpec":
        gm = GeneratorMatrix.from_json(obj)
        ring = gm.ring
        t = tuple(ring.element(x) for x in obj["t"])

        def numbering(key, arity):
            if key not in obj or not obj[key]:
                return CompositeNumbering.uniform(TypeBijection.standard(ring), arity)
            bijs = [TypeBijection.from_json(b, ring=ring) for b in obj[key]]
            if len(bijs) == 1:
                return CompositeNumbering.uniform(bijs[0], arity)
            if len(bijs) != arity:
                raise RingError(f"{key} must have 1 or {arity} tables")
            return CompositeNumbering(tuple(bijs))

        return cls(gm, t, numbering("axis_bijections", gm.width),
                   numbering("cell_bijections", gm.size))


class VirtualHypercube:
    """Entry-on-demand view of a constructed square/cube/hypercube."""

    def __init__(self, spec: SquareSpec):
        self.spec = spec
        self._axis_tables = None

    @property
    def order(self) -> int:
        return self.spec.order

    @property
    def d(self) -> int:
        return self.spec.d

    @property
    def cells(self) -> int:
        return self.spec.cells

    def entry(self, idx) -> int:
        """Value at 1-based axis indices; pure in (spec, idx)."""
        spec = self.spec
        if len(idx) != spec.d:
            raise RingError(f"expected {spec.d} indices")
        order = spec.order
        for i in idx:
            if not 1 <= i <= order:
                raise RingError(f"index {i} outside 1..{order}")
        v = []
        for i in idx:
            v.extend(spec.axis_numbering.unnumber(i))
        ring = spec.ring
        w = mat_vec(ring, spec.generator.rows, v)
        w = [ring.add(x, tj) for x, tj in zip(w, spec.t)]
        return spec.cell_numbering.number(w)

    # -- streaming support -------------------------------------------------

    def axis_tables(self) -> np.ndarray:
        """int32 array (d, order, size): block_i . axisvec, t folded into axis 0.

        Row i of the square then has ring coordinates
        add(table[0][i], table[1][j], ...) per cell (i, j, ...).
        """
        if self._axis_tables is not None:
            return self._axis_tables
        spec = self.spec
        ring = spec.ring
        gm = spec.generator
        order, size, width = spec.order, gm.size, gm.width
        tables = np.empty((spec.d, order, size), dtype=np.int32)
        for axis in range(spec.d):
            block = gm.block(axis)
            for v in range(order):
                vec = spec.axis_numbering.unnumber(v + 1)
                col = mat_vec(ring, block, vec)
                if axis == 0:
                    col = [ring.add(x, tj) for x, tj in zip(col, spec.t)]
                tables[axis, v, :] = col
        self._axis_tables = tables
        return tables

    def weight_table(self) -> np.ndarray:
        """int64 (size, q): contribution q^k * N'_(k)(element) to the value."""
        spec = self.spec
        q = spec.ring.q
        size = spec.generator.size
        out = np.empty((size, q), dtype=np.int64)
        for k, bij in enumerate(spec.cell_numbering.bijections):
            out[k, :] = np.asarray(bij.forward, dtype=np.int64) * q ** k
        return out

    def materialize(self, budget=None) -> np.ndarray:
        budget = cell_budget() if budget is None else budget
        if self.cells > budget:
            raise TooLargeError(
                f"{self.cells} cells exceed the budget of {budget}; "
                f"use streaming verification")
        if self.d == 2:
            return self._materialize_2d()
        spec = self.spec
        order = spec.order
        out = np.empty((order,) * spec.d, dtype=np.int64)
        for idx in product(range(1, order + 1), repeat=spec.d):
            out[tuple(i - 1 for i in idx)] = self.entry(idx)
        return out

    def _materialize_2d(self) -> np.ndarray:
        add = self.spec.ring.add_table()
        tables = self.axis_tables()
        wt = self.weight_table()
        aa, bb = tables[0], tables[1]
        order, size = aa.shape
        out = np.empty((order, order), dtype=np.int64)
        ks = np.arange(size)
        for i in range(order):
            w = add[aa[i][None, :], bb]          # (order, size) ring elements
            out[i] = wt[ks[None, :], w].sum(axis=1) + 1
        return out


def construct_square(generator: GeneratorMatrix, t=None, **kwargs) -> VirtualHypercube:
    return VirtualHypercube(SquareSpec.build(generator, t=t, **kwargs))


# ---------------------------------------------------------------------------
# Star product
# ---------------------------------------------------------------------------

def is_normal_array(values) -> bool:
    a = np.asarray(values, dtype=np.int64).ravel()
    count = np.bincount(a, minlength=a.size + 1)
    return count[0] == 0 and bool((count[1:a.size + 1] == 1).all())


def star(a, b, normalized: bool = True, check_normal: bool = True) -> np.ndarray:
    """Order-(m*n) composition of an order-m and an order-n square.

    Each cell of b is expanded into an m x m block m^2*(b[k,l]-1) + a
    (normalized form; drop the -1 for the raw variant, whose output
    values then live in m^2+1 .. m^2(n^2+1)).
    """
    A = np.asarray(a, dtype=np.int64)
    B = np.asarray(b, dtype=np.int64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("first square is not square")
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise ValueError("second square is not square")
    if check_normal:
        for name, M in (("first", A), ("second", B)):
            if not is_normal_array(M):
                raise NotNormalError(f"{name} operand is not a normal square")
    m, nb = A.shape[0], B.shape[0]
    shift = B - 1 if normalized else B
    out = np.empty((m * nb, m * nb), dtype=np.int64)
    for k in range(nb):
        for l in range(nb):
            out[k * m:(k + 1) * m, l * m:(l + 1) * m] = m * m * shift[k, l] + A
    return out


# ---------------------------------------------------------------------------
# Dense square file formats
# ---------------------------------------------------------------------------

def write_square_csv(values, path):
    a = np.asarray(values, dtype=np.int64)
    with open(path, "w") as fh:
        for row in a:
            fh.write(",".join(str(int(v)) for v in row))
            fh.write("\n")


def read_square_csv(path) -> np.ndarray:
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append([int(v) for v in line.split(",")])
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ValueError(f"{path} does not contain a square matrix")
    return np.asarray(rows, dtype=np.int64)
