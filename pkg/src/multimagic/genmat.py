"""Production and certification of multimagic generator matrices.

A degree-n, dimension-d generator matrix is an invertible dn x dn ring
matrix X = (A_1 ... A_d), column blocks A_i of width n, such that for
every sign pattern (s_1..s_d) in {-1,0,1}^d, not all zero, every n x n
minor of sum_i s_i A_i is a unit.  Minors of -M are units iff minors of
M are, so certification runs over the (3^d - 1)/2 patterns whose first
nonzero sign is +1.

Certification never trusts the algebra behind a construction: every
matrix that leaves this module has had all of its minors recomputed and
checked directly.

Two construction routes are provided: an explicit one (a Vandermonde
block A paired with B = (2P; -2Q)) that works over any ring where
{3, 1, 2, ..., 2n-2} are units, and a search route that evaluates
integer candidate matrices, takes the product of all relevant minors
over Z, and reduces modulo the smallest prime not dividing it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product

from .ring import FiniteRing, RingError, matrix_det, nxn_minors


class SmallUnitGroupError(RingError):
    """The ring lacks a unit required by the explicit construction."""


class SearchBudgetExceededError(RingError):
    pass


@dataclass(frozen=True)
class MinorWitness:
    pattern: tuple      # sign pattern (s_1..s_d); () means det(X) itself
    rows: tuple         # row subset of the failing minor; () for det(X)
    value: int          # the non-unit determinant

    def describe(self, ring=None):
        val = ring.element_str(self.value) if ring else self.value
        if not self.pattern:
            return f"det(X) = {val} is not a unit"
        return (f"minor rows={list(self.rows)} of block combination "
                f"{list(self.pattern)} has non-unit determinant {val}")


@dataclass(frozen=True)
class CertificationReport:
    ok: bool
    det_unit: bool
    det_value: int
    failure: MinorWitness | None
    patterns_checked: int
    minors_checked: int


@dataclass(frozen=True)
class GeneratorMatrix:
    """An n-multimagic d-generator matrix over a finite ring.

    The matrix is square of side d*width with d column blocks of equal
    width; normally width == n, but a wider matrix may be certified to a
    lower degree n (its blocks then only need every subset of s <= n
    rows to be surjective, which is what degree-n verification uses).
    """

    ring: FiniteRing
    n: int
    d: int
    rows: tuple  # square, canonical ring elements

    def __post_init__(self):
        size = len(self.rows)
        if any(len(r) != size for r in self.rows):
            raise RingError("matrix must be square")
        if size % self.d:
            raise RingError(f"side {size} not divisible into {self.d} blocks")
        if self.n > size // self.d:
            raise RingError(f"degree {self.n} exceeds block width {size // self.d}")

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def width(self) -> int:
        return len(self.rows) // self.d

    def block(self, i: int):
        """The i-th column block, 0-based."""
        lo = i * self.width
        return [row[lo:lo + self.width] for row in self.rows]

    @property
    def blocks(self):
        return [self.block(i) for i in range(self.d)]

    def certify(self, patterns="all") -> CertificationReport:
        return verify_generator(self.ring, self.n, self.d, self.rows,
                                patterns=patterns)

    def to_json(self):
        return {"ring": self.ring.descriptor(), "n": self.n, "d": self.d,
                "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, obj):
        ring = FiniteRing.parse(obj["ring"])
        rows = canonical_rows(ring, obj["rows"])
        return cls(ring, obj["n"], obj["d"], rows)


def canonical_rows(ring, rows):
    return tuple(tuple(ring.element(x) for x in row) for row in rows)


def sign_patterns(d: int, patterns: str = "all"):
    """Sign patterns with first nonzero +1, in lexicographic order.

    "all" gives the full d-generator condition; "axes-and-space"
    restricts to the single-block and all-blocks patterns (the plain,
    non-perfect cube conditions).
    """
    out = []
    for p in product((-1, 0, 1), repeat=d):
        nz = [s for s in p if s]
        if not nz or nz[0] != 1:
            continue
        if patterns == "axes-and-space" and 1 < len(nz) < d:
            continue
        out.append(p)
    return out


def verify_generator(ring: FiniteRing, n: int, d: int, rows,
                     patterns: str = "all") -> CertificationReport:
    """Certify by direct minor computation; reports the first violation.

    With block width w = side/d equal to n this checks det(X) and, for
    every sign pattern, every n x n minor of the signed block sum.  With
    w > n (a wide matrix certified to a lower degree) each subset of
    s <= n rows must instead contain some unit s x s minor, which is the
    surjectivity the degree-n sum argument needs.

    The failure witness is the lexicographically first (pattern, row
    subset) pair that violates its condition, independent of evaluation
    order, so parallel or reordered checking would report identically.
    If every minor condition passes but det(X) is not a unit, the
    determinant is the witness.
    """
    rows = canonical_rows(ring, rows)
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise RingError("matrix must be square")
    if size % d:
        raise RingError(f"side {size} not divisible into {d} blocks")
    w = size // d
    if n > w:
        raise RingError(f"degree {n} exceeds block width {w}")

    det = matrix_det(ring, rows)
    det_unit = ring.is_unit(det)

    pats = sign_patterns(d, patterns)
    blocks = [[row[i * w:(i + 1) * w] for row in rows] for i in range(d)]
    minors_checked = 0
    failure = None
    for pat in pats:
        combo = _signed_block_sum(ring, blocks, pat, w, size)
        if n == w:
            for rowset, minor in nxn_minors(ring, combo, n):
                minors_checked += 1
                if not ring.is_unit(minor):
                    # minors arrive in (pattern, rowset) lexicographic order
                    failure = MinorWitness(pat, rowset, minor)
                    break
        else:
            failure_rows = _first_nonsurjective_subset(ring, combo, n)
            minors_checked += sum(1 for _ in combinations(range(size), n))
            if failure_rows is not None:
                failure = MinorWitness(pat, failure_rows, 0)
        if failure is not None:
            break
    if failure is None and not det_unit:
        failure = MinorWitness((), (), det)
    return CertificationReport(
        ok=failure is None,
        det_unit=det_unit,
        det_value=det,
        failure=failure,
        patterns_checked=len(pats),
        minors_checked=minors_checked,
    )


def _first_nonsurjective_subset(ring, mat, max_s):
    """First row subset (by size, then lexicographic) with no unit minor."""
    w = len(mat[0])
    for s in range(1, max_s + 1):
        for J in combinations(range(len(mat)), s):
            if not _has_unit_minor(ring, [mat[i] for i in J], s, w):
                return J
    return None


def _has_unit_minor(ring, sub_rows, s, w):
    for cols in combinations(range(w), s):
        square = [[row[c] for c in cols] for row in sub_rows]
        if ring.is_unit(matrix_det(ring, square)):
            return True
    return False


def _signed_block_sum(ring, blocks, pattern, n, dn):
    out = [[0] * n for _ in range(dn)]
    for s, blk in zip(pattern, blocks):
        if s == 0:
            continue
        for i in range(dn):
            row = out[i]
            brow = blk[i]
            for j in range(n):
                v = brow[j] if s > 0 else ring.neg(brow[j])
                row[j] = ring.add(row[j], v)
    return out


# ---------------------------------------------------------------------------
# Explicit construction (d = 2)
# ---------------------------------------------------------------------------

def vandermonde_A(ring: FiniteRing, n: int):
    """2n x n block: rows (i-1)^(j-1) for i < 2n, last row (0,...,0,1).

    Every n x n minor is certified a unit directly rather than trusting
    the Vandermonde factorization argument.
    """
    if n < 2:
        raise RingError("need n >= 2")
    _require_units(ring, range(1, 2 * n - 1))
    rows = []
    for i in range(1, 2 * n):
        base = ring.from_int(i - 1)
        rows.append(tuple(ring.pow(base, j) for j in range(n)))
    rows.append(tuple([0] * (n - 1) + [ring.one]))
    for rowset, minor in nxn_minors(ring, rows, n):
        if not ring.is_unit(minor):
            raise SmallUnitGroupError(
                f"minor rows={list(rowset)} is not a unit over {ring.descriptor()}")
    return tuple(rows)


def companion_B(ring: FiniteRing, A):
    """B = (2P; -2Q) where A = (P; Q); makes (A B) a generator matrix."""
    _require_units(ring, (2, 3))
    rows2n = len(A)
    n = rows2n // 2
    if rows2n != 2 * n or any(len(r) != n for r in A):
        raise RingError("A must be 2n x n")
    two = ring.from_int(2)
    B = []
    for i, row in enumerate(A):
        scaled = [ring.mul(two, x) for x in row]
        if i >= n:
            scaled = [ring.neg(x) for x in scaled]
        B.append(tuple(scaled))
    return tuple(B)


def explicit_generator_over(ring: FiniteRing, n: int) -> GeneratorMatrix:
    """Vandermonde-plus-companion d=2 generator over an arbitrary ring.

    Needs {3, 1, 2, ..., 2n-2} to be units; raises SmallUnitGroupError
    otherwise.  The result is always re-certified.
    """
    A = vandermonde_A(ring, n)
    B = companion_B(ring, A)
    rows = tuple(ra + rb for ra, rb in zip(A, B))
    gm = GeneratorMatrix(ring, n, 2, rows)
    report = gm.certify()
    if not report.ok:
        raise RingError(
            f"explicit construction failed certification: "
            f"{report.failure.describe(ring)}")
    return gm


def explicit_generator(n: int, q: int) -> GeneratorMatrix:
    """Certified d=2 generator over F_q, q prime >= max(2n-1, 5)."""
    from .ring import _is_prime
    if not _is_prime(q):
        raise RingError(f"{q} is not prime")
    if q < 2 * n - 1 or q in (2, 3):
        raise SmallUnitGroupError(
            f"q={q} too small for degree n={n} (need prime >= 2n-1, not 2 or 3)")
    return explicit_generator_over(FiniteRing.zmod(q), n)


def _require_units(ring, values):
    for v in values:
        if not ring.is_unit(ring.from_int(v)):
            raise SmallUnitGroupError(
                f"{v} is not a unit in {ring.descriptor()}")


# ---------------------------------------------------------------------------
# Search route: integer candidates, polynomial-evaluation style
# ---------------------------------------------------------------------------

def find_generator(n: int, d: int, strategy: str = "sequential",
                   seed: int = 0, budget: int = 10 ** 6):
    """Find (q, X) with X an n-multimagic d-generator over Z/qZ.

    Evaluates integer candidate matrices: Q = det(X) * all n x n minors
    of all signed block sums, computed over Z.  The first candidate with
    Q != 0 yields q = the smallest prime not dividing Q; X reduced mod q
    is then re-certified.  The sequential strategy walks candidates with
    entries drawn from the spiral 0, 1, -1, 2, -2, ...; the seeded random
    strategy samples entries uniformly from a small box.
    """
    dn = d * n
    if dn > 16:
        raise SearchBudgetExceededError(
            f"dn={dn} exceeds the supported minor-enumeration size (16)")
    if strategy == "sequential":
        gen = _spiral_candidates(dn * dn)
    elif strategy == "seeded-random":
        rng = random.Random(seed)
        gen = (tuple(rng.randint(-9, 9) for _ in range(dn * dn))
               for _ in iter(int, 1))
    else:
        raise RingError(f"unknown strategy {strategy!r}")

    pats = sign_patterns(d)
    for count, flat in enumerate(gen):
        if count >= budget:
            break
        rows = [list(flat[i * dn:(i + 1) * dn]) for i in range(dn)]
        Q = _integer_product_of_minors(rows, n, d, pats)
        if Q == 0:
            continue
        q = _smallest_prime_not_dividing(abs(Q))
        ring = FiniteRing.zmod(q)
        gm = GeneratorMatrix(ring, n, d, canonical_rows(ring, rows))
        report = gm.certify()
        if not report.ok:  # cannot happen if Q was computed correctly
            raise RingError("search result failed re-certification")
        return q, gm
    raise SearchBudgetExceededError(
        f"no candidate found within {budget} evaluations")


class _IntegerRing:
    """Minimal ring-protocol shim so the minor DP runs over Z."""
    one = 1

    @staticmethod
    def add(x, y):
        return x + y

    @staticmethod
    def neg(x):
        return -x

    @staticmethod
    def mul(x, y):
        return x * y


def _integer_product_of_minors(rows, n, d, pats):
    dn = d * n
    from .ring import _subset_minors
    det = dict(_subset_minors(_IntegerRing, rows, dn))[tuple(range(dn))]
    if det == 0:
        return 0
    Q = det
    blocks = [[row[i * n:(i + 1) * n] for row in rows] for i in range(d)]
    for pat in pats:
        combo = [[sum(s * blk[i][j] for s, blk in zip(pat, blocks))
                  for j in range(n)] for i in range(dn)]
        for _, minor in _subset_minors(_IntegerRing, combo, n):
            if minor == 0:
                return 0
            Q *= minor
    return Q


def _spiral_candidates(n_entries):
    """All integer tuples, levels by max |entry|: digits 0,1,-1,2,-2,..."""
    level = 0
    while True:
        level += 1
        digits = [0]
        for v in range(1, level + 1):
            digits += [v, -v]
        for flat in product(digits, repeat=n_entries):
            if max(abs(x) for x in flat) == level:
                yield flat


def _smallest_prime_not_dividing(value: int) -> int:
    from .ring import _is_prime
    p = 2
    while True:
        if _is_prime(p) and value % p:
            return p
        p += 1


def brute_force_generator(ring: FiniteRing, n: int, d: int = 2,
                          budget: int = 10 ** 6):
    """Exhaustive/bounded search for a certified generator over a fixed ring.

    Enumerates matrices over the ring in row-major canonical order and
    returns the first one that certifies, or None when the search space
    is exhausted (only practical for dn*dn small, e.g. n=1).
    """
    dn = d * n
    cells = dn * dn
    total = ring.q ** cells
    if total > budget:
        raise SearchBudgetExceededError(
            f"{total} candidates exceed budget {budget}")
    for enc in range(total):
        flat = []
        v = enc
        for _ in range(cells):
            flat.append(v % ring.q)
            v //= ring.q
        rows = tuple(tuple(flat[i * dn:(i + 1) * dn]) for i in range(dn))
        gm = GeneratorMatrix(ring, n, d, rows)
        if gm.certify().ok:
            return gm
    return None
