"""Legendre symbols, orders and inertia degrees for the theorem's hypotheses."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Optional

from .errors import BudgetExceeded, InvariantViolation

FIND_PRIMES_MAX = 10**7


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(bound**0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _require_odd_prime(p: int, name: str = "p") -> None:
    if p == 2 or not is_prime(p):
        raise ValueError(f"{name}={p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    _require_odd_prime(p)
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def multiplicative_order(a: int, n: int) -> int:
    a %= n
    if a == 0:
        raise ValueError(f"{a} is not a unit mod {n}")
    x, m = a, 1
    while x != 1:
        x = x * a % n
        m += 1
        if m > n:
            raise ValueError(f"{a} is not a unit mod {n}")
    return m


def _check_unramified(p: int, ell: int) -> None:
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    _require_odd_prime(ell, "ell")
    if p == ell:
        raise ValueError(f"p = ell = {ell} is ramified")


def inertia_degree_real(p: int, ell: int) -> int:
    """Smallest m >= 1 with p^m = +-1 mod ell.

    This is the residue degree of p in the real subfield of the ell-th
    cyclotomic field.
    """
    _check_unramified(p, ell)
    x, m = p % ell, 1
    while x not in (1, ell - 1):
        x = x * p % ell
        m += 1
    return m


def corollary_m(p: int, ell: int) -> int:
    """Smallest m >= 1 with p^(2m) = 1 mod ell."""
    _check_unramified(p, ell)
    sq = p * p % ell
    x, m = sq, 1
    while x != 1:
        x = x * sq % ell
        m += 1
    return m


@dataclass(frozen=True)
class ApplicabilityReport:
    k: int
    p: int
    n: Optional[int]
    ell: int
    ell_prime: bool
    p_ne_ell: bool
    legendre_2_p: int
    m: Optional[int]
    m_gt_1: bool
    n_odd: Optional[bool]
    m_divides_n: Optional[bool]
    applicable: bool
    route: str

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def theorem_conditions(k: int, p: int, n: int) -> ApplicabilityReport:
    if k < 2:
        raise ValueError("k must be at least 2")
    if n < 1:
        raise ValueError("n must be positive")
    _require_odd_prime(p)
    ell = 2 * k + 1
    ell_prime = is_prime(ell)
    p_ne_ell = p != ell
    m = inertia_degree_real(p, ell) if ell_prime and p_ne_ell else None
    leg = legendre(2, p)
    m_gt_1 = m is not None and m > 1
    n_odd = n % 2 == 1
    m_div = m is not None and n % m == 0
    applicable = ell_prime and p_ne_ell and leg == -1 and m_gt_1 and n_odd and not m_div
    return ApplicabilityReport(
        k=k, p=p, n=n, ell=ell, ell_prime=ell_prime, p_ne_ell=p_ne_ell,
        legendre_2_p=leg, m=m, m_gt_1=m_gt_1, n_odd=n_odd, m_divides_n=m_div,
        applicable=applicable, route="theorem",
    )


def corollary_conditions(k: int, p: int) -> ApplicabilityReport:
    """Check the corollary's congruence conditions; n is left open.

    When applicable, the report is cross-checked against
    :func:`theorem_conditions` for odd n with m not dividing n.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    _require_odd_prime(p)
    ell = 2 * k + 1
    ell_prime = is_prime(ell)
    p_ne_ell = p != ell
    mod16 = p * p % 16 != 1
    mod_ell = p * p % ell != 1
    m = corollary_m(p, ell) if ell_prime and p_ne_ell else None
    applicable = ell_prime and p_ne_ell and mod16 and mod_ell
    report = ApplicabilityReport(
        k=k, p=p, n=None, ell=ell, ell_prime=ell_prime, p_ne_ell=p_ne_ell,
        legendre_2_p=legendre(2, p), m=m, m_gt_1=m is not None and m > 1,
        n_odd=None, m_divides_n=None, applicable=applicable, route="corollary",
    )
    if applicable:
        for n in range(1, 4 * m + 2, 2):
            if n % m and not theorem_conditions(k, p, n).applicable:
                raise InvariantViolation(f"corollary holds but theorem fails for k={k} p={p} n={n}")
    return report


def find_primes(k: int, bound: int) -> list[int]:
    """Primes p <= bound satisfying the corollary's conditions for this k."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if bound > FIND_PRIMES_MAX:
        raise BudgetExceeded(f"bound {bound} exceeds {FIND_PRIMES_MAX}")
    ell = 2 * k + 1
    if not is_prime(ell):
        return []
    return [p for p in primes_up_to(bound)
            if p != 2 and p != ell and p * p % 16 != 1 and p * p % ell != 1]
