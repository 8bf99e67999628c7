"""Trace polynomials of words in F2.

For x, y in SL2 over any commutative ring, trace(w(x, y)) is a fixed integer
polynomial in s = tr x, t = tr y, u = tr xy. ``trace_polynomial`` computes it
by rewriting with

    tr(AB) = tr(BA),  tr(A^-1) = tr(A),  tr(A^2 B) = tr(A) tr(AB) - tr(B)

and the product rule tr(UV) = tr(U) tr(V) - tr(UV^-1) derived from them.
"""

from __future__ import annotations

import functools
from typing import Iterator, Mapping, Union

from .words import Letter, Word, canonical_trace_key, cyclic_reduce, invert, multiply

Monomial = tuple[int, int, int]
VARIABLES = ("s", "t", "u")


class TracePolynomial:
    """Sparse polynomial in s, t, u with integer coefficients.

    Terms are kept in a dict keyed by exponent triples; zero coefficients are
    never stored. Iteration and printing use lex order with s > t > u,
    highest term first.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            if len(mono) != 3 or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono!r}")
            c = int(c)
            if c:
                clean[tuple(mono)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def constant(cls, c: int) -> "TracePolynomial":
        return cls({(0, 0, 0): c})

    @classmethod
    def variable(cls, index: int) -> "TracePolynomial":
        mono = [0, 0, 0]
        mono[index] = 1
        return cls({tuple(mono): 1})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, int]]:
        for mono in sorted(self._terms, reverse=True):
            yield mono, self._terms[mono]

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=0)

    def degree_in(self, index: int) -> int:
        return max((m[index] for m in self._terms), default=0)

    def coefficient(self, mono: Monomial) -> int:
        return self._terms.get(tuple(mono), 0)

    @staticmethod
    def _coerce(other) -> "TracePolynomial":
        if isinstance(other, TracePolynomial):
            return other
        if isinstance(other, int):
            return TracePolynomial.constant(other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return TracePolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return TracePolynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, int] = {}
        for (a1, b1, c1), x in self._terms.items():
            for (a2, b2, c2), y in other._terms.items():
                m = (a1 + a2, b1 + b2, c1 + c2)
                out[m] = out.get(m, 0) + x * y
        return TracePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = TracePolynomial.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, s, t, u):
        return evaluate(self, s, t, u)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"TracePolynomial({format_polynomial(self)!r})"


S = TracePolynomial.variable(0)
T = TracePolynomial.variable(1)
U = TracePolynomial.variable(2)
ONE = TracePolynomial.constant(1)
TWO = TracePolynomial.constant(2)


def format_monomial(mono: Monomial) -> str:
    parts = []
    for name, e in zip(VARIABLES, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(p: TracePolynomial) -> str:
    """Canonical text, e.g. ``s^4 - s^3*t*u + s^2*t^2 + s^2*u^2 - 4*s^2 + 2``."""
    out = []
    for mono, c in p.items():
        body = format_monomial(mono)
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if not out:
            out.append(text if c > 0 else f"-{text}")
        else:
            out.append(f"+ {text}" if c > 0 else f"- {text}")
    return " ".join(out) if out else "0"


# -- reduction ---------------------------------------------------------------

def reduction_measure(w: Word) -> tuple[int, int, int]:
    """(block count, reduced length, negative blocks) of the canonical form.

    Every child produced by :func:`reduction_step` is strictly smaller in
    this lex order than its parent.
    """
    key = canonical_trace_key(w)
    return (len(key), sum(abs(e) for _, e in key), sum(1 for _, e in key if e < 0))


def reduction_step(w: Word):
    """One rewriting step for tr(w).

    Returns a TracePolynomial for base cases, else a list of
    ``(coefficient, children)`` pairs meaning
    ``tr(w) = sum(coefficient * prod(tr(child) for child in children))``.
    """
    c = canonical_trace_key(w)
    if not c:
        return TWO
    if len(c) == 1:
        g, e = c[0].gen, abs(c[0].exp)
        var = TracePolynomial.variable(g - 1)
        if e == 1:
            return var
        # tr(A^e) = tr(A) tr(A^(e-1)) - tr(A^(e-2))
        return [(var, (Word.gen(g, e - 1),)), (-ONE, (Word.gen(g, e - 2),))]
    if len(c) == 2:
        (g1, a), (g2, b) = c
        if abs(a) == 1 and abs(b) == 1:
            if a == b:
                return U
            # tr(x1 x2^-1) = tr(x1) tr(x2) - tr(x1 x2)
            return [(ONE, (Word.gen(1), Word.gen(2))), (-ONE, (Word.of([(1, 1), (2, 1)]),))]
        if abs(a) < abs(b):
            (g1, a), (g2, b) = (g2, b), (g1, a)
        sign = 1 if a > 0 else -1
        var = TracePolynomial.variable(g1 - 1)
        rest = ((g2, b),)
        return [
            (var, (Word.of(((g1, a - sign),) + rest),)),
            (-ONE, (Word.of(((g1, a - 2 * sign),) + rest),)),
        ]
    # w = g^a P g^b Q with P a single block: tr(w) = tr(g^a P) tr(g^b Q) - tr(g^(a-b) P Q^-1)
    n = len(c)
    start = next((i for i in range(n) if c[i].exp == c[(i + 2) % n].exp), 0)
    r = c[start:] + c[:start]
    head = Word(r[:2])
    tail = Word(r[2:])
    q_inv = invert(Word(r[3:]))
    third = multiply(Word.of([(r[0].gen, r[0].exp - r[2].exp), tuple(r[1])]), q_inv)
    return [(ONE, (head, tail)), (-ONE, (third,))]


@functools.lru_cache(maxsize=None)
def _trace_of_key(key: tuple[Letter, ...]) -> TracePolynomial:
    step = reduction_step(Word(key))
    if isinstance(step, TracePolynomial):
        return step
    total = TracePolynomial()
    for coeff, children in step:
        term = coeff
        for child in children:
            term = term * _trace_of_key(canonical_trace_key(child))
        total = total + term
    return total


def trace_polynomial(w: Word) -> TracePolynomial:
    """The integer polynomial tau(w) with tr w(x, y) = tau(w)(tr x, tr y, tr xy)."""
    return _trace_of_key(canonical_trace_key(w))


def clear_cache() -> None:
    _trace_of_key.cache_clear()


def dickson(i: int, var: int = 0) -> TracePolynomial:
    """tr(A^i) as a polynomial in tr(A): D0 = 2, D1 = s, D(i+1) = s D(i) - D(i-1)."""
    if i < 0:
        raise ValueError("i must be non-negative")
    x = TracePolynomial.variable(var)
    prev, cur = TWO, x
    if i == 0:
        return prev
    for _ in range(i - 1):
        prev, cur = cur, x * cur - prev
    return cur


Scalar = Union[TracePolynomial, int]


def substitute_traces(tv: TracePolynomial, a: Scalar, b: Scalar, c: Scalar) -> TracePolynomial:
    """tv evaluated at s := a, t := b, u := c."""
    result = evaluate(tv, TracePolynomial._coerce(a), TracePolynomial._coerce(b), TracePolynomial._coerce(c))
    return TracePolynomial._coerce(result)


def evaluate(p: TracePolynomial, s0, t0, u0):
    """Exact nested-Horner evaluation in any ring whose elements mix with ints."""
    by_s: dict[int, dict[int, dict[int, int]]] = {}
    for (i, j, l), c in p._terms.items():
        by_s.setdefault(i, {}).setdefault(j, {})[l] = c

    def horner(coeffs: dict, x, inner):
        top = max(coeffs)
        acc = inner(coeffs[top])
        for d in range(top - 1, -1, -1):
            acc = acc * x
            if d in coeffs:
                acc = acc + inner(coeffs[d])
        return acc

    if not by_s:
        return s0 * 0
    return horner(
        by_s,
        s0,
        lambda tj: horner(tj, t0, lambda ul: horner(ul, u0, lambda c: c + s0 * 0)),
    )
