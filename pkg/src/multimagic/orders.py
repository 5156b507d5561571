"""Impossibility tests for multimagic orders via p-adic valuations.

A normal degree-n multimagic square of order m forces
m(m^2-1)(m^2-2)...(m^2-n)/(n+1)! to be an integer (sum a degree-n
integer-valued polynomial over all cells: it is m times the magic sum
of the composed square).  Whether that quantity is integral is decided
here purely by summing p-adic valuations, never by materializing the
binomial coefficient, so it works unchanged for orders like 13^7.

The valuation telescope behind degree_bound: when p^e exactly divides m
and n = p^(e+1)-1, each factor (m^2-i)/i contributes valuation zero and
m/(n+1) contributes e-(e+1) = -1, so the quantity is not an integer and
degree n is impossible.  Hence any achievable degree at order m is at
most min over p | m of p^(v_p(m)+1) - 2.  This is a necessary bound
only; nothing here claims a degree close to it is achievable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ring import _is_prime


def vp(p: int, numer: int, denom: int = 1) -> int:
    """Exact p-adic valuation of the rational numer/denom."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if numer == 0 or denom == 0:
        raise ZeroDivisionError("valuation of zero is undefined")

    def _v(n):
        n = abs(n)
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        return e

    return _v(numer) - _v(denom)


def factorize(m: int):
    """Prime factorization by trial division; (prime, exponent) pairs."""
    out = []
    n = m
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def degree_bound(m: int) -> int:
    """Upper bound on any achievable multimagic degree at order m.

    Necessary condition only: min over primes p | m of p^(v_p(m)+1) - 2.
    """
    if m < 2:
        raise ValueError("order must be at least 2")
    return min(p ** (e + 1) - 2 for p, e in factorize(m))


def _primes(limit):
    p = 2
    while p <= limit:
        if _is_prime(p):
            yield p
        p += 1 if p == 2 else 2


def vp_factorial(p: int, n: int) -> int:
    """Legendre: valuation of n! is sum of floor(n/p^i)."""
    e = 0
    q = p
    while q <= n:
        e += n // q
        q *= p
    return e


def feasibility_valuation(m: int, n: int, p: int) -> int:
    """v_p of m(m^2-1)...(m^2-n)/(n+1)!.

    The running product (m^2-1)...(m^2-n) is the factorial quotient
    (m^2-1)!/(m^2-n-1)!, so its valuation is a difference of two
    Legendre sums; no loop over the n factors is ever taken.
    """
    msq = m * m
    return (vp(p, m)
            + vp_factorial(p, msq - 1) - vp_factorial(p, msq - n - 1)
            - vp_factorial(p, n + 1))


def binomial_feasible(m: int, n: int) -> bool:
    """True iff m(m^2-1)...(m^2-n)/(n+1)! is an integer.

    Equivalent to m | C(m^2, n+1).  Only primes up to n+1 can appear in
    the denominator, so only those valuations are summed, stopping at
    the first violation.
    """
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    if n >= m * m:
        return True  # the product contains the factor m^2 - m^2 = 0
    return all(feasibility_valuation(m, n, p) >= 0
               for p in _primes(n + 1))


@dataclass(frozen=True)
class SweepCounterexample:
    m: int
    n: int
    bound: int


def consistency_sweep(limit: int, max_degree: int = 20):
    """Cross-validate degree_bound against binomial_feasible.

    For every order m <= limit and degree n <= max_degree with
    n > degree_bound(m), some degree n' <= n must already fail the
    integrality test (the telescope shows n' = p^(e+1)-1 fails).
    Returns the list of violations; an empty list means the two
    impossibility routes agree.
    """
    bad = []
    for m in range(2, limit + 1):
        bound = degree_bound(m)
        first_fail = None
        for n in range(1, max_degree + 1):
            if not binomial_feasible(m, n):
                first_fail = n
                break
        for n in range(bound + 1, max_degree + 1):
            if first_fail is None or first_fail > n:
                bad.append(SweepCounterexample(m, n, bound))
    return bad
