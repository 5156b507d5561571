"""Built-in reference squares and generator matrices.

Squares ship as embedded literals so verification examples run offline
with zero setup.  Where a square is reproducible by the affine
construction, its fixture carries the regenerating SquareSpec; the test
suite asserts literal and regeneration agree cell for cell.

Registry keys are stable CLI-facing names; `aliases` adds historical or
alternate spellings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _tables
from .construct import SquareSpec, VirtualHypercube
from .genmat import GeneratorMatrix
from .ring import FiniteRing


@dataclass(frozen=True)
class SquareFixture:
    name: str
    ring: str                 # descriptor of the construction ring, if any
    table: tuple | None       # embedded literal, None when regenerated on demand
    spec_json: dict | None    # regenerating construction parameters
    profile: dict             # properties the fixture is expected to satisfy
    notes: str
    aliases: tuple = ()

    @property
    def order(self) -> int:
        if self.table is not None:
            return len(self.table)
        return SquareSpec.from_json(self.spec_json).order

    def values(self) -> np.ndarray:
        if self.table is not None:
            return np.asarray(self.table, dtype=np.int64)
        return VirtualHypercube(SquareSpec.from_json(self.spec_json)).materialize()

    def spec(self) -> SquareSpec | None:
        if self.spec_json is None:
            return None
        return SquareSpec.from_json(self.spec_json)


@dataclass(frozen=True)
class GeneratorFixture:
    name: str
    n: int                    # certified multimagic degree
    d: int
    rows: tuple               # integer entries, reduced when instantiated
    good_moduli: tuple        # sample moduli where certification passes
    bad_moduli: tuple         # sample moduli where certification fails
    notes: str

    def over(self, q_or_ring) -> GeneratorMatrix:
        ring = (q_or_ring if isinstance(q_or_ring, FiniteRing)
                else FiniteRing.zmod(q_or_ring))
        rows = tuple(tuple(ring.from_int(x) for x in row) for row in self.rows)
        return GeneratorMatrix(ring, self.n, self.d, rows)


# ---------------------------------------------------------------------------
# Generator matrices
# ---------------------------------------------------------------------------

GENERATORS = {}


def _add_gen(fx: GeneratorFixture):
    GENERATORS[fx.name] = fx


_add_gen(GeneratorFixture(
    name="gen-d3-n1",
    n=1, d=3,
    rows=((1, 2, 4), (1, 2, -4), (1, -2, -4)),
    good_moduli=(11, 13), bad_moduli=(2, 3, 5, 7),
    notes="3x3 magic-cube generator; certifies over prime fields q >= 11",
))

_add_gen(GeneratorFixture(
    name="gen-d3-n2",
    n=2, d=3,
    rows=((1, 0, 2, 0, 4, 0),
          (1, 1, 2, 2, 4, 4),
          (1, 2, 2, 4, -4, -8),
          (1, 3, 2, 6, -4, -12),
          (1, 4, -2, -8, -4, -16),
          (0, 1, 0, -2, 0, -4)),
    good_moduli=(11, 13), bad_moduli=(2, 3, 5, 7),
    notes="6x6 bimagic-cube generator; certifies over prime fields q >= 11",
))

_add_gen(GeneratorFixture(
    name="gen-d2-n2-wide",
    n=2, d=2,
    rows=((1, 0, 0, -1, -2, -1),
          (0, 1, 0, -1, -1, -2),
          (0, 0, 1, -2, -1, -1),
          (1, 2, 1, 1, 0, 0),
          (1, 1, 2, 0, 1, 0),
          (2, 1, 1, 0, 0, 1)),
    good_moduli=(11, 13, 19), bad_moduli=(17,),
    notes="6x6 identity/circulant blocks of width 3, certified to degree 2; "
          "det(X) vanishes mod 17, so q=17 is excluded",
))

_add_gen(GeneratorFixture(
    name="gen-d2-n2-odd",
    n=2, d=2,
    rows=((0, 1, 1, 0),
          (2, 0, 0, 1),
          (1, 1, 2, 1),
          (2, 1, 2, 2)),
    good_moduli=(3, 5, 7, 9, 11), bad_moduli=(2, 4),
    notes="4x4 bimagic generator valid over Z/q for every odd q >= 3; "
          "the route to bimagic squares of odd order",
))


# ---------------------------------------------------------------------------
# Squares
# ---------------------------------------------------------------------------

SQUARES = {}
_ALIASES = {}


def _add_square(fx: SquareFixture):
    SQUARES[fx.name] = fx
    for a in fx.aliases:
        _ALIASES[a] = fx.name


def _spec_json(ring, n, d, rows, t, axis_forward=None, axis_c=None):
    out = {"ring": ring, "n": n, "d": d,
           "rows": [list(r) for r in rows], "t": list(t)}
    if axis_forward is not None:
        out["axis_bijections"] = [{"c": axis_c, "forward": list(axis_forward)}]
        out["cell_bijections"] = [{"c": axis_c, "forward": list(axis_forward)}]
    return out


_add_square(SquareFixture(
    name="pfeffermann-8",
    ring="",
    table=_tables.PFEFFERMANN_8,
    spec_json=None,
    profile={"degree": 2, "S1": 260, "S2": 11180},
    notes="published 1891 by G. Pfeffermann; the first known bimagic square",
))

_add_square(SquareFixture(
    name="ex56-9",
    ring="gf:3",
    table=_tables.ODD_ORDER_9,
    spec_json=_spec_json("gf:3", 2, 2,
                         ((0, 1, 1, 1), (2, 0, 2, 1), (1, 1, 0, 2), (2, 1, 1, 0)),
                         (0, 0, 0, 0)),
    profile={"degree": 2, "S1": 369, "S2": 20049},
    notes="order-9 bimagic square of the odd-order family; the regenerating "
          "matrix was recovered from the table itself and differs from the "
          "odd-family matrix by replacing its second block with A+B "
          "(equivalent over Z/3); shift vector is zero",
    aliases=("odd-9",),
))

_add_square(SquareFixture(
    name="heath-9",
    ring="gf:3",
    table=None,
    spec_json=_spec_json("gf:3", 2, 2,
                         ((0, 1, 1, 0), (2, 0, 0, 1), (1, 1, 2, 1), (2, 1, 2, 2)),
                         (2, 1, 2, 0)),
    profile={"degree": 2, "S1": 369, "S2": 20049, "associative": True},
    notes="R.V. Heath's associative bimagic 9x9 (pre-1974); regenerated from "
          "the odd-family matrix with shift (2,1,2,0), the unique shift making "
          "the output associative",
))

_add_square(SquareFixture(
    name="ex55-16",
    ring="gf:2^2:x^2+x+1",
    table=_tables.ASSOCIATIVE_16,
    spec_json=_spec_json("gf:2^2:x^2+x+1", 2, 2,
                         ((1, 2, 2, 0), (1, 1, 0, 1), (1, 0, 1, 1), (0, 2, 2, 1)),
                         (0, 1, 1, 0),
                         axis_forward=(0, 2, 1, 3), axis_c=3),
    profile={"degree": 2, "S1": 2056, "S2": 351576, "associative": True},
    notes="order-16 associative bimagic square over the four-element field; "
          "element encoding 0,1,x,x+1 -> 0..3; regeneration was aligned to "
          "the table by exhaustive shift search (blocks swapped, shift "
          "(0,1,1,0))",
))

_add_square(SquareFixture(
    name="ex57-25",
    ring="gf:5",
    table=_tables.PANDIAGONAL_25,
    spec_json=_spec_json("gf:5", 2, 2,
                         ((4, 1, 2, 3), (3, 1, 4, 3), (2, 1, 4, 2), (1, 1, 2, 2)),
                         (2, 0, 4, 0)),
    profile={"degree": 2, "S1": 7825, "S2": 3263025,
             "associative": True, "pandiagonal": True, "sub5": True},
    notes="order-25 associative pandiagonal bimagic square over F_5; the "
          "table follows a most-significant-first digit convention, so the "
          "regenerating matrix here has rows and in-block columns reversed "
          "and the shift reads (2,0,4,0)",
))


def list_squares():
    return sorted(SQUARES)


def list_generators():
    return sorted(GENERATORS)


def get_square(name: str) -> SquareFixture:
    key = _ALIASES.get(name, name)
    if key not in SQUARES:
        raise KeyError(f"unknown square fixture {name!r}; "
                       f"available: {', '.join(list_squares())}")
    return SQUARES[key]


def get_generator(name: str) -> GeneratorFixture:
    if name not in GENERATORS:
        raise KeyError(f"unknown generator fixture {name!r}; "
                       f"available: {', '.join(list_generators())}")
    return GENERATORS[name]
