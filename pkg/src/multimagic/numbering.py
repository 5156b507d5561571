"""Bijections R -> {0..q-1} with a reflection type, and q-adic numberings.

A bijection N is *of type c* when N(a) + N(-a+c) = q-1 for every a.  The
builder pairs elements into orbits of the involution a -> -a+c: the unique
fixed point (odd q) receives the middle value (q-1)/2, and the i-th
two-element orbit, ordered by its first-encountered representative in
canonical element order, receives the pair (i-1, q-i).  Orbit labelling is
therefore deterministic.

Composite numberings map R^m bijectively onto {1..q^m} via base-q digits:
N_m(a_1..a_m) = 1 + sum_j q^(j-1) N_(j)(a_j), with a_1 least significant.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .ring import FiniteRing, RingError, mat_vec, same_ring


class NoBijectionOfTypeError(RingError):
    """No type-c bijection exists: even q with a fixed point of a -> -a+c."""


@dataclass(frozen=True)
class TypeBijection:
    """A type-c bijection with forward (element -> value) and inverse tables."""

    ring: FiniteRing
    c: int
    forward: tuple
    inverse: tuple

    @classmethod
    def from_forward(cls, ring, c, forward):
        forward = tuple(forward)
        q = ring.q
        if sorted(forward) != list(range(q)):
            raise RingError("forward table is not a bijection onto 0..q-1")
        inverse = [0] * q
        for a, v in enumerate(forward):
            inverse[v] = a
        return cls(ring, ring.element(c), forward, tuple(inverse))

    @classmethod
    def standard(cls, ring):
        """Identity table; has type q-1 (the element with all digits maximal)."""
        q = ring.q
        return cls(ring, q - 1, tuple(range(q)), tuple(range(q)))

    @classmethod
    def of_type(cls, ring, c):
        return build_type_bijection(ring, c)

    def value(self, a: int) -> int:
        return self.forward[a]

    def element(self, v: int) -> int:
        return self.inverse[v]

    def is_valid(self) -> bool:
        return verify_type(self.ring, self.forward, self.c)

    def to_json(self):
        return {"ring": self.ring.descriptor(), "c": self.c,
                "forward": list(self.forward)}

    @classmethod
    def from_json(cls, obj, ring=None):
        r = ring if ring is not None else FiniteRing.parse(obj["ring"])
        return cls.from_forward(r, obj["c"], obj["forward"])


def build_type_bijection(ring: FiniteRing, c) -> TypeBijection:
    """Deterministic type-c bijection via the orbit pairing construction.

    Raises NoBijectionOfTypeError exactly when q is even and the
    involution a -> -a+c has a fixed point (then 2N(a) = q-1 has no
    integer solution, so no type-c bijection exists at all).
    """
    c = ring.element(c)
    q = ring.q
    phi = [ring.add(ring.neg(a), c) for a in ring.elements()]
    fixed = [a for a in ring.elements() if phi[a] == a]
    if fixed and q % 2 == 0:
        raise NoBijectionOfTypeError(
            f"type {ring.element_str(c)} admits the fixed point "
            f"{ring.element_str(fixed[0])} and q={q} is even")
    forward = [None] * q
    if fixed:
        forward[fixed[0]] = (q - 1) // 2
    i = 0
    for a in ring.elements():
        if forward[a] is None:
            forward[a] = i
            forward[phi[a]] = q - 1 - i
            i += 1
    return TypeBijection.from_forward(ring, c, forward)


def verify_type(ring: FiniteRing, forward, c) -> bool:
    """True iff `forward` is a bijection onto 0..q-1 of type c."""
    forward = list(forward)
    q = ring.q
    if len(forward) != q or sorted(forward) != list(range(q)):
        return False
    c = ring.element(c)
    return all(forward[a] + forward[ring.add(ring.neg(a), c)] == q - 1
               for a in ring.elements())


@dataclass(frozen=True)
class CompositeNumbering:
    """Bijection R^m -> {1..q^m} from m per-coordinate type bijections."""

    bijections: tuple

    def __post_init__(self):
        same_ring(*(b.ring for b in self.bijections))

    @classmethod
    def uniform(cls, bijection: TypeBijection, m: int):
        return cls((bijection,) * m)

    @property
    def ring(self) -> FiniteRing:
        return self.bijections[0].ring

    @property
    def m(self) -> int:
        return len(self.bijections)

    @property
    def c(self) -> tuple:
        """The type vector (c_1, ..., c_m)."""
        return tuple(b.c for b in self.bijections)

    @property
    def span(self) -> int:
        return self.ring.q ** self.m

    def number(self, a) -> int:
        if len(a) != self.m:
            raise RingError(f"expected {self.m} coordinates, got {len(a)}")
        q = self.ring.q
        v = 0
        for bij, coord in zip(reversed(self.bijections), reversed(a)):
            v = v * q + bij.forward[coord]
        return 1 + v

    def unnumber(self, v: int):
        if not 1 <= v <= self.span:
            raise RingError(f"value {v} outside 1..{self.span}")
        q = self.ring.q
        v -= 1
        out = []
        for bij in self.bijections:
            out.append(bij.inverse[v % q])
            v //= q
        return tuple(out)


def reflection_identity_check(nm: CompositeNumbering, limit: int = 10 ** 6,
                              samples: int = 20000, seed: int = 0) -> bool:
    """Check N_m(-a) = q^m + 1 - N_m(a+c) for all a (sampled past `limit`)."""
    ring = nm.ring
    c = nm.c
    span = nm.span

    def holds(a):
        neg = tuple(ring.neg(x) for x in a)
        shifted = tuple(ring.add(x, cj) for x, cj in zip(a, c))
        return nm.number(neg) == span + 1 - nm.number(shifted)

    if span <= limit:
        return all(holds(a) for a in product(ring.elements(), repeat=nm.m))
    rng = random.Random(seed)
    q = ring.q
    return all(holds(tuple(rng.randrange(q) for _ in range(nm.m)))
               for _ in range(samples))


# ---------------------------------------------------------------------------
# Brute-force power-sum census over affine images; the closed form it must
# equal is census_closed_form.  This pair is the main test oracle for the
# construction: line sums of generated squares reduce to exactly these sums.
# ---------------------------------------------------------------------------

def census_sum(ring: FiniteRing, matrix, offset, bijections, exponents) -> int:
    """Sum over all a in R^n of prod_j N_(j)(L(a)_j)^e_j, L(a) = M a + v."""
    s = len(matrix)
    if not (len(offset) == len(bijections) == len(exponents) == s):
        raise RingError("matrix rows, offset, bijections, exponents must align")
    n = len(matrix[0]) if s else 0
    total = 0
    for a in product(ring.elements(), repeat=n):
        img = mat_vec(ring, matrix, a)
        term = 1
        for j in range(s):
            y = ring.add(img[j], offset[j])
            term *= bijections[j].forward[y] ** exponents[j]
        total += term
    return total


def census_closed_form(q: int, n: int, exponents) -> int:
    """q^(n-s) * prod_j (0^e_j + 1^e_j + ... + (q-1)^e_j)."""
    s = len(exponents)
    if s > n:
        raise RingError("need s <= n")
    out = q ** (n - s)
    for e in exponents:
        out *= sum(i ** e for i in range(q))
    return out


def affine_is_surjective(ring: FiniteRing, matrix, offset) -> bool:
    """Image enumeration; intended for small q^n only."""
    s = len(matrix)
    n = len(matrix[0]) if s else 0
    seen = set()
    for a in product(ring.elements(), repeat=n):
        img = mat_vec(ring, matrix, a)
        seen.add(tuple(ring.add(x, o) for x, o in zip(img, offset)))
    return len(seen) == ring.q ** s
