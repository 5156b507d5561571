"""Exact arithmetic in finite commutative rings with identity.

Two kinds of ring are supported:

* ``Z/qZ`` for any modulus q > 1 (composite q allowed, so the ring may
  have zero divisors), and
* ``GF(p^k)`` presented as ``F_p[x]/(f)`` with f a monic irreducible
  polynomial of degree k.

Elements are plain Python integers in canonical form.  For ``Z/qZ`` the
canonical form is the residue in ``[0, q)``.  For ``GF(p^k)`` an element
with coefficient vector ``(c_0, ..., c_{k-1})`` is encoded as the base-p
integer ``sum(c_i * p**i)``, also in ``[0, q)``.  This makes element
enumeration, numbering and serialization deterministic, and lets hot
loops work on small ints and lookup tables.

Matrix determinants are computed division-free (Laplace expansion with
subset memoization), which stays correct when the ring has zero
divisors.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations

import numpy as np


class RingError(ValueError):
    pass


class RingMismatchError(RingError):
    """Two objects built over different rings were combined."""


class NotIrreducibleError(RingError):
    """The modulus polynomial of an extension field factors over F_p."""


# ---------------------------------------------------------------------------
# Polynomials over F_p, little-endian coefficient tuples, for GF(p^k)
# internals and modulus validation.
# ---------------------------------------------------------------------------

def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mod(a, f, p):
    """Remainder of a modulo the monic polynomial f, coefficients mod p."""
    a = [x % p for x in a]
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i]
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _poly_trim(a[:df])


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _poly_trim([(x - y) % p for x, y in zip(a, b)])


def _poly_divmod(a, b, p):
    """Quotient and remainder for b != 0 with invertible leading coeff."""
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    if da < db:
        return (), _poly_trim(a)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * (da - db + 1)
    for i in range(da, db - 1, -1):
        c = (a[i] * inv_lead) % p
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _poly_trim(q), _poly_trim(a)


def _poly_is_irreducible(f, p):
    """Trial factorization: no monic divisor of degree 1..deg(f)//2.

    Exhaustive over F_p, intended for the small degrees used here.
    """
    k = len(f) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for enc in range(p ** d):
            cand = _decode_base(enc, p, d) + (1,)
            _, r = _poly_divmod(f, cand, p)
            if not r:
                return False
    return True


def _decode_base(value, p, k):
    digits = []
    for _ in range(k):
        digits.append(value % p)
        value //= p
    return tuple(digits)


def _encode_base(digits, p):
    v = 0
    for d in reversed(digits):
        v = v * p + d
    return v


_POLY_TERM = re.compile(r"^\s*(\d+)?\s*(?:(x)(?:\^(\d+))?)?\s*$")


def poly_from_string(text, p):
    """Parse 'x^2+x+1' style polynomials into a coefficient tuple."""
    text = text.replace("-", "+-").replace("**", "^")
    coeffs = {}
    for term in text.split("+"):
        if not term.strip():
            continue
        neg = term.strip().startswith("-")
        term = term.strip().lstrip("-")
        m = _POLY_TERM.match(term)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise RingError(f"cannot parse polynomial term {term!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        if m.group(2) is None:
            power = 0
        else:
            power = int(m.group(3)) if m.group(3) else 1
        if neg:
            coeff = -coeff
        coeffs[power] = (coeffs.get(power, 0) + coeff) % p
    deg = max(coeffs) if coeffs else 0
    return _poly_trim([coeffs.get(i, 0) for i in range(deg + 1)])


def poly_to_string(f):
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            x = "x" if i == 1 else f"x^{i}"
            terms.append(x if c == 1 else f"{c}{x}")
    return "+".join(terms)


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


# ---------------------------------------------------------------------------
# Ring descriptors
# ---------------------------------------------------------------------------

_TABLE_LIMIT = 4096  # cache full op tables up to this many elements


class FiniteRing:
    """Descriptor of Z/qZ or GF(p^k); operates on canonical int elements."""

    __slots__ = ("kind", "q", "p", "k", "modulus", "_mul_table", "_add_np")

    def __init__(self, kind, q, p=None, k=None, modulus=None):
        self.kind = kind
        self.q = q
        self.p = p
        self.k = k
        self.modulus = modulus
        self._mul_table = None
        self._add_np = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zmod(cls, q: int) -> "FiniteRing":
        if q < 2:
            raise RingError("modulus must be at least 2")
        return cls("zmod", q)

    @classmethod
    def gf(cls, p: int, k: int = 1, modulus=None) -> "FiniteRing":
        if not _is_prime(p):
            raise RingError(f"{p} is not prime")
        if k < 1:
            raise RingError("extension degree must be positive")
        if k == 1:
            # prime field; modular arithmetic is the same thing
            return cls("zmod", p)
        if modulus is None:
            modulus = _first_irreducible(p, k)
        else:
            modulus = _poly_trim(tuple(c % p for c in modulus))
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise RingError("modulus must be monic of degree k")
            if not _poly_is_irreducible(modulus, p):
                raise NotIrreducibleError(
                    f"{poly_to_string(modulus)} is reducible over F_{p}")
        return cls("gf", p ** k, p=p, k=k, modulus=modulus)

    @classmethod
    def parse(cls, text: str) -> "FiniteRing":
        """Parse 'zmod:10', 'gf:5', or 'gf:2^2:x^2+x+1'."""
        parts = text.strip().split(":")
        if parts[0] == "zmod" and len(parts) == 2:
            return cls.zmod(int(parts[1]))
        if parts[0] == "gf":
            if len(parts) not in (2, 3):
                raise RingError(f"bad ring descriptor {text!r}")
            if "^" in parts[1]:
                p_str, k_str = parts[1].split("^")
                p, k = int(p_str), int(k_str)
            else:
                p, k = int(parts[1]), 1
            modulus = None
            if len(parts) == 3:
                modulus = poly_from_string(parts[2], p)
            return cls.gf(p, k, modulus)
        raise RingError(f"bad ring descriptor {text!r}")

    def descriptor(self) -> str:
        if self.kind == "zmod":
            return f"zmod:{self.q}" if not _is_prime(self.q) else f"gf:{self.q}"
        return f"gf:{self.p}^{self.k}:{poly_to_string(self.modulus)}"

    # -- element plumbing ----------------------------------------------

    def element(self, obj) -> int:
        """Coerce an int (reduced) or a coefficient sequence to canonical form."""
        if isinstance(obj, (int, np.integer)):
            if self.kind == "zmod":
                return int(obj) % self.q
            if 0 <= obj < self.q:
                return int(obj)
            raise RingError(
                f"{obj} is not a canonical element of {self.descriptor()}")
        coeffs = [int(c) % self.p for c in obj]
        if len(coeffs) > self.k:
            coeffs = list(_poly_mod(coeffs, self.modulus, self.p))
        coeffs += [0] * (self.k - len(coeffs))
        return _encode_base(coeffs, self.p)

    def from_int(self, n: int) -> int:
        """Image of an ordinary integer under the canonical map Z -> R.

        Distinct from element(): there an int is a canonical *encoding*;
        here it is n copies of 1, e.g. from_int(2) = 0 in GF(4).
        """
        if self.kind == "zmod":
            return n % self.q
        return n % self.p

    def coeffs(self, x: int):
        """Coefficient vector of an extension element (little-endian)."""
        if self.kind == "zmod":
            raise RingError("coeffs() only applies to extension rings")
        return _decode_base(x, self.p, self.k)

    def elements(self):
        """All q elements once, in ascending canonical order."""
        return range(self.q)

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1 % self.q

    # -- arithmetic -----------------------------------------------------

    def add(self, x: int, y: int) -> int:
        if self.kind == "zmod":
            return (x + y) % self.q
        p = self.p
        s = 0
        mult = 1
        while x or y:
            s += ((x % p + y % p) % p) * mult
            x //= p
            y //= p
            mult *= p
        return s

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def neg(self, x: int) -> int:
        if self.kind == "zmod":
            return (-x) % self.q
        p = self.p
        s = 0
        mult = 1
        while x:
            s += ((-x) % p) * mult
            x //= p
            mult *= p
        return s

    def mul(self, x: int, y: int) -> int:
        if self.kind == "zmod":
            return (x * y) % self.q
        if self._mul_table is not None:
            return self._mul_table[x][y]
        if self.q <= _TABLE_LIMIT:
            self._build_mul_table()
            return self._mul_table[x][y]
        return self._mul_ext(x, y)

    def _mul_ext(self, x, y):
        prod = _poly_mul(self.coeffs(x), self.coeffs(y), self.p)
        return _encode_base(_poly_mod(prod, self.modulus, self.p) +
                            (0,) * self.k, self.p)

    def _build_mul_table(self):
        self._mul_table = [
            [self._mul_ext(x, y) for y in range(self.q)]
            for x in range(self.q)
        ]

    def scale(self, c: int, x: int) -> int:
        """c*x with c an arbitrary integer (repeated addition semantics)."""
        return self.mul(self.from_int(c), x)

    def try_inverse(self, x: int):
        """Multiplicative inverse, or None when x is not a unit."""
        if self.kind == "zmod":
            try:
                return pow(x, -1, self.q)
            except ValueError:
                return None
        if x == 0:
            return None
        # extended gcd of polynomials; f irreducible so the gcd is a constant
        p = self.p
        r0, r1 = self.modulus, _poly_trim(self.coeffs(x))
        s0, s1 = (), (1,)
        while r1:
            qt, rem = _poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(qt, s1, p), p)
        c_inv = pow(r0[0], -1, p)
        inv = _poly_mul(s0, (c_inv,), p)
        return _encode_base(_poly_mod(inv, self.modulus, p) + (0,) * self.k, p)

    def is_unit(self, x: int) -> bool:
        return self.try_inverse(x) is not None

    def units(self):
        return [x for x in self.elements() if self.is_unit(x)]

    def pow(self, x: int, e: int) -> int:
        r = self.one
        b = x
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    # -- kernel support ---------------------------------------------------

    def add_table(self) -> np.ndarray:
        """q x q int32 addition table (cached); used by the scan kernels."""
        if self._add_np is None:
            if self.kind == "zmod":
                i = np.arange(self.q, dtype=np.int64)
                self._add_np = ((i[:, None] + i[None, :]) % self.q).astype(np.int32)
            else:
                t = np.empty((self.q, self.q), dtype=np.int32)
                for x in range(self.q):
                    for y in range(self.q):
                        t[x, y] = self.add(x, y)
                self._add_np = t
        return self._add_np

    # -- misc ---------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, FiniteRing)
                and self.kind == other.kind
                and self.q == other.q
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.kind, self.q, self.modulus))

    def __repr__(self):
        return f"FiniteRing({self.descriptor()!r})"

    def element_str(self, x: int) -> str:
        if self.kind == "zmod":
            return str(x)
        return poly_to_string(self.coeffs(x))


@lru_cache(maxsize=None)
def _first_irreducible(p, k):
    for enc in range(p ** k):
        f = _decode_base(enc, p, k) + (1,)
        if _poly_is_irreducible(f, p):
            return f
    raise RingError(f"no irreducible polynomial of degree {k} over F_{p}")


def same_ring(*rings):
    """Raise RingMismatchError unless all ring descriptors agree."""
    first = rings[0]
    for r in rings[1:]:
        if r != first:
            raise RingMismatchError(
                f"{r.descriptor()} combined with {first.descriptor()}")
    return first


# ---------------------------------------------------------------------------
# Linear algebra over a ring
# ---------------------------------------------------------------------------

def mat_vec(ring, rows, vec):
    out = []
    for row in rows:
        acc = 0
        for a, v in zip(row, vec):
            acc = ring.add(acc, ring.mul(a, v))
        out.append(acc)
    return out


def matrix_det(ring: FiniteRing, rows) -> int:
    """Determinant over any commutative ring, no division.

    Laplace expansion along columns with memoization on row subsets:
    det of the rows in subset S against the first |S| columns.  O(2^m m)
    ring operations for an m x m matrix, fine for the sizes used here
    (m <= 16).
    """
    m = len(rows)
    if m == 0:
        return ring.one
    for r in rows:
        if len(r) != m:
            raise RingError("matrix is not square")
    dets = dict(_subset_minors(ring, rows, m))
    return dets[tuple(range(m))]


def nxn_minors(ring: FiniteRing, rows, size: int):
    """All size x size minors of a matrix with exactly `size` columns.

    Yields (row_tuple, det) in lexicographic row_tuple order.  Shares
    subproblems across minors: one subset-DP pass computes every minor.
    """
    for r in rows:
        if len(r) != size:
            raise RingError(f"expected {size} columns")
    full = dict(_subset_minors(ring, rows, size))
    for combo in combinations(range(len(rows)), size):
        yield combo, full[combo]


def _subset_minors(ring, rows, ncols):
    """DP over row subsets: det(rows[S] x cols[0:|S|]) for |S| <= ncols."""
    nrows = len(rows)
    level = {(): ring.one}
    for depth in range(1, ncols + 1):
        col = depth - 1
        nxt = {}
        for subset in level:
            start = subset[-1] + 1 if subset else 0
            for r in range(start, nrows):
                key = subset + (r,)
                # Laplace along column `col`: expand over which row of the
                # subset pairs with it.
                acc = 0
                for pos in range(len(key)):
                    sub = key[:pos] + key[pos + 1:]
                    term = ring.mul(rows[key[pos]][col], level[sub])
                    if (len(key) - 1 - pos) % 2:
                        term = ring.neg(term)
                    acc = ring.add(acc, term)
                nxt[key] = acc
        level = nxt
    return level.items()
