"""Dense univariate polynomials over a finite field.

Polynomials are lists of field elements, lowest degree first, with no
trailing zeros; ``[]`` is zero. Element arithmetic is delegated to a field
object ``F`` exposing ``zero``, ``one``, ``add``, ``sub``, ``mul``, ``inv``,
``order`` and ``element_at(index)``.
"""

from __future__ import annotations

import random


class PrimeField:
    """F_p on plain ints; the adapter used before any FieldSpec exists."""

    def __init__(self, p: int):
        self.p = p
        self.order = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def element_at(self, index: int):
        return index % self.p


def trim(f, F):
    f = list(f)
    while f and f[-1] == F.zero:
        f.pop()
    return f


def add(f, g, F):
    n = max(len(f), len(g))
    out = [F.add(f[i] if i < len(f) else F.zero, g[i] if i < len(g) else F.zero) for i in range(n)]
    return trim(out, F)


def sub(f, g, F):
    n = max(len(f), len(g))
    out = [F.sub(f[i] if i < len(f) else F.zero, g[i] if i < len(g) else F.zero) for i in range(n)]
    return trim(out, F)


def mul(f, g, F):
    if not f or not g:
        return []
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == F.zero:
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out, F)


def divmod_(f, g, F):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    lead_inv = F.inv(g[-1])
    dg = len(g) - 1
    quot = [F.zero] * max(len(f) - dg, 0)
    for i in range(len(f) - 1, dg - 1, -1):
        c = F.mul(f[i], lead_inv)
        if c == F.zero:
            continue
        quot[i - dg] = c
        for j, b in enumerate(g):
            f[i - dg + j] = F.sub(f[i - dg + j], F.mul(c, b))
    return trim(quot, F), trim(f[:dg], F)


def mod(f, g, F):
    return divmod_(f, g, F)[1]


def monic(f, F):
    if not f:
        return []
    inv = F.inv(f[-1])
    return [F.mul(c, inv) for c in f]


def gcd(f, g, F):
    f, g = trim(f, F), trim(g, F)
    while g:
        f, g = g, mod(f, g, F)
    return monic(f, F)


def powmod(f, e, m, F):
    result = [F.one]
    base = mod(f, m, F)
    while e:
        if e & 1:
            result = mod(mul(result, base, F), m, F)
        e >>= 1
        if e:
            base = mod(mul(base, base, F), m, F)
    return mod(result, m, F)


def is_irreducible(f, F, prime_divisors_of_degree) -> bool:
    """Rabin's test for a monic polynomial of degree n >= 1."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [F.zero, F.one]

    def frob_iter(times):
        h = x
        for _ in range(times):
            h = powmod(h, F.order, f, F)
        return h

    if sub(frob_iter(n), x, F):
        return False
    for r in prime_divisors_of_degree:
        h = sub(frob_iter(n // r), x, F)
        if len(gcd(f, h, F)) != 1:
            return False
    return True


def distinct_degree(f, F):
    """Distinct-degree factorization of a monic squarefree f: [(d, product of degree-d factors)]."""
    out = []
    x = [F.zero, F.one]
    h = x
    d = 0
    rest = f
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, F.order, rest, F)
        g = gcd(rest, sub(h, x, F), F)
        if len(g) > 1:
            out.append((d, g))
            rest = divmod_(rest, g, F)[0]
            h = mod(h, rest, F)
    if len(rest) > 1:
        out.append((len(rest) - 1, monic(rest, F)))
    return out


def equal_degree(f, d, F, rng: random.Random):
    """Split a monic product of degree-d irreducibles (odd field order)."""
    n = len(f) - 1
    if n == d:
        return [f]
    e = (F.order**d - 1) // 2
    while True:
        a = trim([F.element_at(rng.randrange(F.order)) for _ in range(n)], F)
        if len(a) < 2:
            continue
        b = sub(powmod(a, e, f, F), [F.one], F)
        g = gcd(f, b, F)
        if 1 < len(g) < len(f):
            h = divmod_(f, g, F)[0]
            return equal_degree(g, d, F, rng) + equal_degree(monic(h, F), d, F, rng)


def factor_squarefree(f, F, seed: int = 0):
    """Irreducible factors of a monic squarefree polynomial, as (degree, factor) pairs."""
    rng = random.Random(seed)
    out = []
    for d, g in distinct_degree(monic(f, F), F):
        for h in equal_degree(g, d, F, rng):
            out.append((d, h))
    return out
