"""Brute-force ground truth on actual matrices in SL2(q).

Nothing here uses trace polynomials except :func:`random_matrix_oracle`,
whose job is to compare the two.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .errors import BudgetExceeded
from .fields import FieldSpec, FieldTables, FqElement, is_square, sqrt
from .kernel import AttainedSet, check_budget
from .trace import evaluate, trace_polynomial
from .words import Word

SL2_LIMIT = 10**7
PAIR_BUDGET = 10**8
PSL_PAIR_BUDGET = 10**6


@dataclass(frozen=True)
class Mat2:
    a: FqElement
    b: FqElement
    c: FqElement
    d: FqElement

    @classmethod
    def identity(cls, field: FieldSpec) -> "Mat2":
        return cls(field.one, field.zero, field.zero, field.one)

    @property
    def field(self) -> FieldSpec:
        return self.a.field

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    __mul__ = __matmul__

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "Mat2":
        """Adjugate; equals the inverse when det = 1."""
        return Mat2(self.d, -self.b, -self.c, self.a)

    def __pow__(self, e: int) -> "Mat2":
        base = self.inverse() if e < 0 else self
        e = abs(e)
        result = Mat2.identity(self.field)
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def det(self) -> FqElement:
        return self.a * self.d - self.b * self.c

    def trace(self) -> FqElement:
        return self.a + self.d

    def indices(self) -> tuple[int, int, int, int]:
        return (self.a.index, self.b.index, self.c.index, self.d.index)

    def to_list(self) -> list:
        return [[list(self.a.coeffs), list(self.b.coeffs)], [list(self.c.coeffs), list(self.d.coeffs)]]


def sl2_order(q: int) -> int:
    return q * (q * q - 1)


def enumerate_sl2(field: FieldSpec, limit: int = SL2_LIMIT) -> Iterator[Mat2]:
    """Every determinant-1 matrix over F_q exactly once, in a fixed order."""
    if sl2_order(field.q) > limit:
        raise BudgetExceeded(f"|SL2({field.q})| exceeds {limit}")
    elems = list(field.elements())
    zero, one = field.zero, field.one
    for a in elems:
        for b in elems:
            if a.is_zero():
                if b.is_zero():
                    continue
                c = -b.inverse()
                for d in elems:
                    yield Mat2(zero, b, c, d)
            else:
                a_inv = a.inverse()
                for c in elems:
                    yield Mat2(a, b, c, (one + b * c) * a_inv)


def word_value(w: Word, x: Mat2, y: Mat2) -> Mat2:
    gens = {1: x, 2: y}
    out = Mat2.identity(x.field)
    for g, e in w.letters:
        out = out @ (gens[g] ** e)
    return out


# -- vectorized matrices: int arrays of shape (..., 4) holding element indices

def sl2_array(field: FieldSpec, limit: int = SL2_LIMIT) -> np.ndarray:
    """SL2(q) as an (N, 4) index array, in the order of :func:`enumerate_sl2`."""
    if sl2_order(field.q) > limit:
        raise BudgetExceeded(f"|SL2({field.q})| exceeds {limit}")
    tab = field.tables()
    q = field.q
    e = np.arange(q, dtype=np.int32)
    rows = []
    for a in range(q):
        for b in range(q):
            if a == 0:
                if b == 0:
                    continue
                c = tab.neg[tab.inv[b]]
                rows.append(np.stack([np.zeros(q, np.int32), np.full(q, b, np.int32),
                                      np.full(q, c, np.int32), e], axis=1))
            else:
                d = tab.mul[tab.add[1, tab.mul[b, e]], tab.inv[a]]
                rows.append(np.stack([np.full(q, a, np.int32), np.full(q, b, np.int32), e, d], axis=1))
    return np.concatenate(rows).astype(np.int32)


def _mat_mul(A: np.ndarray, B: np.ndarray, tab: FieldTables) -> np.ndarray:
    add, mul = tab.add, tab.mul
    a0, a1, a2, a3 = A[:, 0], A[:, 1], A[:, 2], A[:, 3]
    b0, b1, b2, b3 = B[:, 0], B[:, 1], B[:, 2], B[:, 3]
    return np.stack([
        add[mul[a0, b0], mul[a1, b2]],
        add[mul[a0, b1], mul[a1, b3]],
        add[mul[a2, b0], mul[a3, b2]],
        add[mul[a2, b1], mul[a3, b3]],
    ], axis=1)


def _mat_inv(A: np.ndarray, tab: FieldTables) -> np.ndarray:
    return np.stack([A[:, 3], tab.neg[A[:, 1]], tab.neg[A[:, 2]], A[:, 0]], axis=1)


def _mat_pow(A: np.ndarray, e: int, tab: FieldTables) -> np.ndarray:
    base = _mat_inv(A, tab) if e < 0 else A
    e = abs(e)
    result = None
    while e:
        if e & 1:
            result = base if result is None else _mat_mul(result, base, tab)
        e >>= 1
        if e:
            base = _mat_mul(base, base, tab)
    return result


def word_values_array(w: Word, X: np.ndarray, Y: np.ndarray, tab: FieldTables) -> np.ndarray:
    """w(X[i], Y[i]) for every row i."""
    gens = {1: X, 2: Y}
    powers: dict = {}
    out = None
    for g, e in w.letters:
        if (g, e) not in powers:
            powers[(g, e)] = _mat_pow(gens[g], e, tab)
        m = powers[(g, e)]
        out = m if out is None else _mat_mul(out, m, tab)
    if out is None:
        out = np.tile(np.array([1, 0, 0, 1], dtype=np.int32), (len(X), 1))
    return out


def _pair_blocks(S: np.ndarray, chunk_rows: int = 1 << 18):
    n = len(S)
    step = max(1, chunk_rows // n)
    for i in range(0, n, step):
        X = np.repeat(S[i:i + step], n, axis=0)
        Y = np.tile(S, (len(S[i:i + step]), 1))
        yield X, Y


def brute_trace_image(w: Word, field: FieldSpec, budget: int = PAIR_BUDGET) -> AttainedSet:
    """Traces of w(x, y) over all ordered pairs in SL2(q)^2."""
    pairs = sl2_order(field.q) ** 2
    check_budget(pairs, budget, "pairs")
    tab = field.tables()
    S = sl2_array(field)
    bitmap = np.zeros(field.q, dtype=bool)
    for X, Y in _pair_blocks(S):
        W = word_values_array(w, X, Y, tab)
        bitmap[tab.add[W[:, 0], W[:, 3]]] = True
    return AttainedSet(field, bitmap, pairs)


@dataclass(frozen=True)
class PSLImage:
    field: FieldSpec
    image_size: int
    group_order: int
    missed: tuple[Mat2, ...]

    @property
    def proper(self) -> bool:
        return self.image_size < self.group_order

    def to_dict(self) -> dict:
        return {
            "field": self.field.describe(),
            "image_size": self.image_size,
            "group_order": self.group_order,
            "proper": self.proper,
            "missed": [{"matrix": m.to_list(), "trace": list(m.trace().coeffs)} for m in self.missed],
        }


def _psl_codes(M: np.ndarray, tab: FieldTables) -> np.ndarray:
    q = np.int64(tab.q)
    M = M.astype(np.int64)
    N = tab.neg[M].astype(np.int64)

    def code(A):
        return ((A[:, 0] * q + A[:, 1]) * q + A[:, 2]) * q + A[:, 3]

    return np.minimum(code(M), code(N))


def _decode(code: int, field: FieldSpec) -> Mat2:
    q = field.q
    d = code % q
    c = code // q % q
    b = code // q**2 % q
    a = code // q**3
    return Mat2(*(field.element_at(int(v)) for v in (a, b, c, d)))


def brute_psl2_image(w: Word, field: FieldSpec, budget: int = PSL_PAIR_BUDGET) -> PSLImage:
    """Image of the word map on PSL2(q); each coset {M, -M} is keyed by its lex-smaller member."""
    pairs = sl2_order(field.q) ** 2
    check_budget(pairs, budget, "pairs")
    tab = field.tables()
    S = sl2_array(field)
    seen = []
    for X, Y in _pair_blocks(S):
        seen.append(np.unique(_psl_codes(word_values_array(w, X, Y, tab), tab)))
    image = np.unique(np.concatenate(seen))
    group = np.unique(_psl_codes(S, tab))
    missed = np.setdiff1d(group, image)
    return PSLImage(field, len(image), len(group), tuple(_decode(int(c), field) for c in missed))


def realize_triple(s, t, u, field: FieldSpec) -> Optional[tuple[Mat2, Mat2]]:
    """x, y in SL2(q) with tr x = s, tr y = t, tr xy = u, or None if the scan fails.

    x is the companion matrix [[0, 1], [-1, s]] and y = [[t - d, b], [c, d]];
    det y = 1 and tr xy = u leave a quadratic in b for each d. Every
    non-scalar x is conjugate to its companion matrix, so the scan misses only
    triples that need x = +-I; those are handled separately.
    """
    s, t, u = field(s), field(t), field(u)
    if field.p == 2:
        raise ValueError("realize_triple needs odd q")
    x = Mat2(field.zero, field.one, -field.one, s)
    for d in field.elements():
        a = t - d
        lin = u - s * d
        disc = lin * lin + 4 * (a * d - 1)
        if not is_square(disc):
            continue
        b = (sqrt(disc) - lin) / 2
        c = u + b - s * d
        y = Mat2(a, b, c, d)
        if y.det() != field.one or (x @ y).trace() != u:
            raise AssertionError("realization algebra is inconsistent")
        return x, y
    for eps in (field.one, -field.one):
        if s == 2 * eps and u == eps * t:
            return Mat2(eps, field.zero, field.zero, eps), Mat2(field.zero, field.one, -field.one, t)
    return None


def _random_sl2_mod_p(rng: random.Random, p: int):
    while True:
        a, b, c, d = (rng.randrange(p) for _ in range(4))
        det = (a * d - b * c) % p
        if det:
            inv = pow(det, -1, p)
            return (a * inv % p, b * inv % p, c, d)


def _mul_mod(A, B, p):
    a, b, c, d = A
    e, f, g, h = B
    return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)


def _pow_mod(A, e, p):
    if e < 0:
        a, b, c, d = A
        A, e = (d, -b % p, -c % p, a), -e
    result = (1, 0, 0, 1)
    while e:
        if e & 1:
            result = _mul_mod(result, A, p)
        e >>= 1
        if e:
            A = _mul_mod(A, A, p)
    return result


def random_matrix_oracle(w: Word, trials: int, p: int, seed: int = 0) -> int:
    """Count random (x, y) in SL2(p)^2 where tr w(x, y) differs from tau(w)(tr x, tr y, tr xy)."""
    rng = random.Random(seed)
    tau = trace_polynomial(w)
    mismatches = 0
    for _ in range(trials):
        x = _random_sl2_mod_p(rng, p)
        y = _random_sl2_mod_p(rng, p)
        val = (1, 0, 0, 1)
        for g, e in w.letters:
            val = _mul_mod(val, _pow_mod(x if g == 1 else y, e, p), p)
        xy = _mul_mod(x, y, p)
        predicted = evaluate(tau, x[0] + x[3], y[0] + y[3], xy[0] + xy[3]) % p
        if (val[0] + val[3]) % p != predicted:
            mismatches += 1
    return mismatches
