"""Exact arithmetic in Z[zeta], zeta a primitive ell-th root of unity, ell = 2k + 1 prime.

Elements of Z[zeta] are vectors of ell - 1 integers, i.e. residues modulo
Phi_ell(x) = 1 + x + ... + x^(ell-1). The real elements
eta_i = zeta^i + zeta^-i live in the same representation.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from typing import Mapping

from . import upoly
from .errors import InvariantViolation
from .fields import FieldSpec, FqElement, make_field, prime_field
from .numtheory import is_prime
from .trace import Monomial, TracePolynomial, dickson, format_monomial, substitute_traces, trace_polynomial
from .words import theorem_word


def check_ell(k: int) -> int:
    ell = 2 * k + 1
    if k < 1 or not is_prime(ell):
        raise ValueError(f"2k+1 = {ell} is not prime")
    return ell


@dataclass(frozen=True)
class CycInt:
    ell: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.ell - 1:
            raise ValueError(f"expected {self.ell - 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_int(cls, ell: int, c: int) -> "CycInt":
        return cls(ell, (c,) + (0,) * (ell - 2))

    @classmethod
    def zeta_power(cls, ell: int, j: int) -> "CycInt":
        """zeta^j, using zeta^(ell-1) = -(1 + zeta + ... + zeta^(ell-2))."""
        j %= ell
        if j == ell - 1:
            return cls(ell, (-1,) * (ell - 1))
        v = [0] * (ell - 1)
        v[j] = 1
        return cls(ell, tuple(v))

    def _other(self, other):
        if isinstance(other, CycInt):
            if other.ell != self.ell:
                raise ValueError("mixing different cyclotomic rings")
            return other
        if isinstance(other, int):
            return CycInt.from_int(self.ell, other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return CycInt(self.ell, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.ell, tuple(-a for a in self.coeffs))

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
        ell = self.ell
        if other.is_rational():
            c = other.coeffs[0]
            return CycInt(ell, tuple(a * c for a in self.coeffs))
        if self.is_rational():
            return other * self
        # product mod x^ell - 1, then fold the x^(ell-1) coefficient back
        full = [0] * ell
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        full[(i + j) % ell] += a * b
        top = full[ell - 1]
        return CycInt(ell, tuple(x - top for x in full[:ell - 1]))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = CycInt.from_int(self.ell, 1)
        for _ in range(e):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> int:
        if not self.is_rational():
            raise InvariantViolation(f"{self} is not a rational integer")
        return self.coeffs[0]

    def __str__(self):
        parts = []
        for j, c in enumerate(self.coeffs):
            if c:
                parts.append(str(c) if j == 0 else f"{c}*z^{j}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def eta(k: int, i: int) -> CycInt:
    """zeta^i + zeta^-i by the recurrence eta_(j+1) = eta_1 eta_j - eta_(j-1)."""
    ell = check_ell(k)
    if not 0 <= i <= k:
        raise ValueError(f"need 0 <= i <= k, got i={i}")
    prev = CycInt.from_int(ell, 2)
    if i == 0:
        return prev
    e1 = CycInt.zeta_power(ell, 1) + CycInt.zeta_power(ell, -1)
    cur = e1
    for _ in range(i - 1):
        prev, cur = cur, e1 * cur - prev
    return cur


def min_poly_eta(k: int) -> tuple[int, ...]:
    """Coefficients (lowest first) of prod_(i=1..k) (x - eta_i); monic of degree k."""
    ell = check_ell(k)
    poly = [CycInt.from_int(ell, 1)]
    for i in range(1, k + 1):
        root = eta(k, i)
        shifted = [CycInt.from_int(ell, 0)] + poly
        poly = [shifted[j] - (root * poly[j] if j < len(poly) else 0) for j in range(len(shifted))]
    return tuple(c.rational() for c in poly)


class PolyOverCyc:
    """Polynomial in s, t, u with CycInt coefficients; zero terms dropped."""

    __slots__ = ("ell", "_terms")

    def __init__(self, ell: int, terms: Mapping[Monomial, CycInt] | None = None):
        self.ell = ell
        clean = {}
        for mono, c in (terms or {}).items():
            if c.ell != ell:
                raise ValueError("coefficient from another cyclotomic ring")
            if not c.is_zero():
                clean[tuple(mono)] = c
        self._terms = clean

    @classmethod
    def embed(cls, ell: int, p: TracePolynomial) -> "PolyOverCyc":
        return cls(ell, {m: CycInt.from_int(ell, c) for m, c in p.items()})

    @classmethod
    def constant(cls, c: CycInt) -> "PolyOverCyc":
        return cls(c.ell, {(0, 0, 0): c})

    @property
    def terms(self) -> dict[Monomial, CycInt]:
        return dict(self._terms)

    def _other(self, other):
        if isinstance(other, PolyOverCyc):
            return other
        if isinstance(other, TracePolynomial):
            return PolyOverCyc.embed(self.ell, other)
        if isinstance(other, CycInt):
            return PolyOverCyc.constant(other)
        if isinstance(other, int):
            return PolyOverCyc.constant(CycInt.from_int(self.ell, other))
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out[m] + c if m in out else c
        return PolyOverCyc(self.ell, out)

    __radd__ = __add__

    def __neg__(self):
        return PolyOverCyc(self.ell, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for (a1, b1, c1), x in self._terms.items():
            for (a2, b2, c2), y in other._terms.items():
                m = (a1 + a2, b1 + b2, c1 + c2)
                prod = x * y
                out[m] = out[m] + prod if m in out else prod
        return PolyOverCyc(self.ell, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self.ell == other.ell and self._terms == other._terms

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self._terms.values())

    def to_trace_polynomial(self) -> TracePolynomial:
        return TracePolynomial({m: c.rational() for m, c in self._terms.items()})

    def degree_in(self, index: int) -> int:
        return max((m[index] for m in self._terms), default=0)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, reverse=True):
            body = format_monomial(mono)
            coeff = f"({self._terms[mono]})"
            parts.append(f"{coeff}*{body}" if body else coeff)
        return " + ".join(parts)


def tau_c_displayed() -> TracePolynomial:
    """The quartic s^4 - s^3 t u + s^2 t^2 + s^2 u^2 - 4 s^2 + 2, entered literally."""
    return TracePolynomial({
        (4, 0, 0): 1, (3, 1, 1): -1, (2, 2, 0): 1, (2, 0, 2): 1, (2, 0, 0): -4, (0, 0, 0): 2,
    })


def prefactorization_sides(k: int, tw: TracePolynomial) -> tuple[PolyOverCyc, PolyOverCyc]:
    """(alternating Dickson sum, product of (tw + eta_i)) for the k-th identity."""
    ell = check_ell(k)
    lhs = TracePolynomial.constant((-1) ** k)
    for i in range(1, k + 1):
        lhs = lhs + (-1) ** (k - i) * substitute_traces(dickson(i), tw, 2, tw)
    rhs = PolyOverCyc.constant(CycInt.from_int(ell, 1))
    embedded = PolyOverCyc.embed(ell, tw)
    for i in range(1, k + 1):
        rhs = rhs * (embedded + eta(k, i))
    return PolyOverCyc.embed(ell, lhs), rhs


def verify_prefactorization(k: int, tw: TracePolynomial) -> bool:
    lhs, rhs = prefactorization_sides(k, tw)
    return lhs == rhs


@functools.lru_cache(maxsize=None)
def lemma2_product(k: int) -> PolyOverCyc:
    """Expand (s^2 - 2) prod_(i=1..k) (quartic + eta_i) over Z[zeta]."""
    ell = check_ell(k)
    quartic = PolyOverCyc.embed(ell, tau_c_displayed())
    out = PolyOverCyc.embed(ell, TracePolynomial({(2, 0, 0): 1, (0, 0, 0): -2}))
    for i in range(1, k + 1):
        out = out * (quartic + eta(k, i))
    if not out.is_rational():
        raise InvariantViolation(f"lemma2_product({k}) has irrational coefficients")
    return out


def verify_lemma2(k: int) -> bool:
    ell = check_ell(k)
    return lemma2_product(k) == PolyOverCyc.embed(ell, trace_polynomial(theorem_word(k)))


def _lift(field: FieldSpec, f: list) -> list[FqElement]:
    return [field(c) for c in f]


def factor_degrees(k: int, p: int) -> list[int]:
    """Degrees of the irreducible factors of min_poly_eta(k) mod p, ascending.

    Uses distinct-degree factorization only, so p = 2 is allowed.
    """
    ell = check_ell(k)
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if p == ell:
        raise ValueError(f"p = ell = {ell} is ramified")
    Fp = upoly.PrimeField(p)
    f = [c % p for c in min_poly_eta(k)]
    out = []
    for d, g in upoly.distinct_degree(f, Fp):
        out.extend([d] * ((len(g) - 1) // d))
    if sum(out) != k:
        raise InvariantViolation(f"min_poly_eta({k}) is not squarefree mod {p}")
    return sorted(out)


def embed_eta(k: int, p: int, seed: int = 0) -> tuple[int, FqElement]:
    """Residue degree m of p in Z[eta] and a root theta of min_poly_eta(k) in F_(p^m).

    The factor of min_poly_eta(k) mod p is the smallest irreducible one
    (coefficients compared lowest degree first); theta is its smallest root
    in the element enumeration of ``make_field(p, m)``.
    """
    ell = check_ell(k)
    if p == ell:
        raise ValueError(f"p = ell = {ell} is ramified")
    degrees = factor_degrees(k, p)
    if len(set(degrees)) != 1:
        raise InvariantViolation(f"unequal factor degrees {degrees} for p={p}")
    m = degrees[0]
    Fp = prime_field(p) if p != 2 else None
    if Fp is None:
        raise ValueError("characteristic 2 is not supported")
    f = [Fp(c) for c in min_poly_eta(k)]
    factors = upoly.factor_squarefree(f, Fp, seed)
    if sorted(d for d, _ in factors) != degrees:
        raise InvariantViolation(f"factorization of min_poly_eta({k}) mod {p} is inconsistent")
    chosen = min((h for _, h in factors), key=lambda h: [c.coeffs[0] for c in h])
    Fq = make_field(p, m)
    roots = find_roots([Fq(c.coeffs[0]) for c in chosen], Fq, seed)
    if len(roots) != m:
        raise InvariantViolation(f"expected {m} roots in F_{p}^{m}, found {len(roots)}")
    return m, min(roots)


def find_roots(f: list[FqElement], field: FieldSpec, seed: int = 0) -> list[FqElement]:
    """Distinct roots in ``field`` of a polynomial over ``field``."""
    f = upoly.monic(upoly.trim(f, field), field)
    x = [field.zero, field.one]
    split = upoly.gcd(f, upoly.sub(upoly.powmod(x, field.q, f, field), x, field), field)
    if len(split) <= 1:
        return []
    linear = upoly.equal_degree(split, 1, field, random.Random(seed))
    return sorted(-g[0] for g in linear)


def eta_residues(k: int, p: int) -> tuple[int, list[FqElement]]:
    """Images of eta_1..eta_k in F_(p^m) under eta_1 -> theta from :func:`embed_eta`."""
    m, theta = embed_eta(k, p)
    return m, [dickson(i)(theta, theta, theta) for i in range(1, k + 1)]
