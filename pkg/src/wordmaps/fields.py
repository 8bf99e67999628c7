"""Finite fields F_q, q = p^n odd, in a polynomial basis over F_p.

Elements are enumerated by the integer ``sum(c_i * p**i)`` of their
little-endian coefficient vector; that index order is used for bitmaps,
deterministic scans and serialization.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import upoly
from .errors import BudgetExceeded
from .numtheory import is_prime, prime_factors

DEFAULT_FIELD_LIMIT = 2**40
TABLE_LIMIT = 4096


@dataclass(frozen=True)
class FieldSpec:
    p: int
    n: int
    modulus: tuple[int, ...]  # monic, little-endian, length n + 1

    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def order(self) -> int:
        return self.q

    @property
    def zero(self) -> "FqElement":
        return FqElement(self, (0,) * self.n)

    @property
    def one(self) -> "FqElement":
        return self(1)

    def __call__(self, value) -> "FqElement":
        """Embed an int (reduced mod p) or a coefficient sequence."""
        if isinstance(value, FqElement):
            if value.field != self:
                raise ValueError("element of a different field")
            return value
        if isinstance(value, int):
            return FqElement(self, (value % self.p,) + (0,) * (self.n - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.n:
            raise ValueError(f"{len(coeffs)} coefficients for a degree-{self.n} field")
        return FqElement(self, tuple(coeffs) + (0,) * (self.n - len(coeffs)))

    def element_at(self, index: int) -> "FqElement":
        coeffs = []
        for _ in range(self.n):
            index, r = divmod(index, self.p)
            coeffs.append(r)
        return FqElement(self, tuple(coeffs))

    def elements(self) -> Iterator["FqElement"]:
        for i in range(self.q):
            yield self.element_at(i)

    # field-object protocol used by upoly
    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def describe(self) -> dict:
        return {"p": self.p, "n": self.n, "q": self.q, "modulus": list(self.modulus)}

    def tables(self) -> "FieldTables":
        return _tables(self)


@dataclass(frozen=True, eq=True)
class FqElement:
    field: FieldSpec = field(repr=False)
    coeffs: tuple[int, ...]

    @property
    def index(self) -> int:
        p = self.field.p
        return sum(c * p**i for i, c in enumerate(self.coeffs))

    def _other(self, other):
        if isinstance(other, FqElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FqElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElement(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        f = self.field
        p, n = f.p, f.n
        if n == 1:
            return FqElement(f, (self.coeffs[0] * other.coeffs[0] % p,))
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        mod_ = f.modulus
        for i in range(2 * n - 2, n - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(n):
                    prod[i - n + j] -= c * mod_[j]
        return FqElement(f, tuple(c % p for c in prod[:n]))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in F_q")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._other(other) * self.inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FqElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __lt__(self, other):
        return self.index < other.index

    def __repr__(self):
        if self.field.n == 1:
            return f"F{self.field.p}({self.coeffs[0]})"
        return f"F{self.field.q}{list(self.coeffs)}"


def prime_field(p: int) -> FieldSpec:
    return FieldSpec(p, 1, (0, 1))


@functools.lru_cache(maxsize=None)
def make_field(p: int, n: int = 1, limit: int = DEFAULT_FIELD_LIMIT) -> FieldSpec:
    """F_{p^n} with the lex-first monic irreducible modulus (low degree compared first)."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p={p} is not an odd prime")
    if n < 1:
        raise ValueError("n must be positive")
    if p**n > limit:
        raise BudgetExceeded(f"q = {p}^{n} exceeds the field size limit {limit}")
    if n == 1:
        return prime_field(p)
    Fp = upoly.PrimeField(p)
    divisors = prime_factors(n)
    # c0 = 0 is divisible by x, so start at c0 = 1
    for low in itertools.product(range(1, p), *[range(p)] * (n - 1)):
        f = list(low) + [1]
        if upoly.is_irreducible(f, Fp, divisors):
            return FieldSpec(p, n, tuple(f))
    raise AssertionError("no irreducible polynomial found")


def is_square(a: FqElement, field: FieldSpec | None = None) -> bool:
    """Euler's criterion in F_q."""
    if field is not None:
        a = field(a)
    if a.is_zero():
        return True
    return a ** ((a.field.q - 1) // 2) == a.field.one


@functools.lru_cache(maxsize=None)
def _non_square(field: FieldSpec) -> FqElement:
    for z in field.elements():
        if not is_square(z):
            return z
    raise AssertionError("no non-square")


def sqrt(a: FqElement) -> FqElement | None:
    """A square root of ``a`` (Tonelli-Shanks), or None if ``a`` is a non-square."""
    f = a.field
    if a.is_zero():
        return a
    if not is_square(a):
        return None
    q = f.q
    s, odd = 0, q - 1
    while odd % 2 == 0:
        s, odd = s + 1, odd // 2
    z = _non_square(f)
    m, c, t, r = s, z**odd, a**odd, a ** ((odd + 1) // 2)
    while t != f.one:
        i, t2 = 0, t
        while t2 != f.one:
            t2, i = t2 * t2, i + 1
        b = c ** (2 ** (m - i - 1))
        m, c, t, r = i, b * b, t * b * b, r * b
    return r


def primitive_element(field: FieldSpec) -> FqElement:
    """First element in index order generating the multiplicative group."""
    q = field.q
    cofactors = [(q - 1) // r for r in prime_factors(q - 1)]
    for g in itertools.islice(field.elements(), 1, None):
        if all(g**e != field.one for e in cofactors):
            return g
    raise AssertionError("no primitive element")


@dataclass(frozen=True)
class FieldTables:
    """Index-based arithmetic tables for the vectorized kernels."""

    q: int
    p: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray


@functools.lru_cache(maxsize=8)
def _tables(field: FieldSpec) -> FieldTables:
    q, p, n = field.q, field.p, field.n
    if q > TABLE_LIMIT:
        raise BudgetExceeded(f"q = {q} too large for table arithmetic (limit {TABLE_LIMIT})")
    dtype = np.int32
    idx = np.arange(q, dtype=np.int64)
    if n == 1:
        add = (idx[:, None] + idx[None, :]) % p
        mul = (idx[:, None] * idx[None, :]) % p
    else:
        digits = np.stack([(idx // p**i) % p for i in range(n)], axis=1)
        add = np.zeros((q, q), dtype=np.int64)
        for i in range(n):
            add += ((digits[:, i][:, None] + digits[:, i][None, :]) % p) * p**i
        g = primitive_element(field)
        exp = np.zeros(q - 1, dtype=np.int64)
        x = field.one
        for e in range(q - 1):
            exp[e] = x.index
            x = x * g
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        mul = exp[(log[:, None] + log[None, :]) % (q - 1)]
        mul[0, :] = 0
        mul[:, 0] = 0
    neg = np.argmin(add, axis=1)  # add[a, neg[a]] == 0 is the unique zero in row a
    inv = np.zeros(q, dtype=np.int64)
    nz_rows, nz_cols = np.nonzero(mul == 1)
    inv[nz_rows] = nz_cols
    return FieldTables(q, p, add.astype(dtype), mul.astype(dtype), neg.astype(dtype), inv.astype(dtype))
