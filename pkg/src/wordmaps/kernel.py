"""Exhaustive evaluation of a trace polynomial over F_q^3.

The s coordinate runs in the outer loop; for each s the polynomial collapses
to sum_j t^j * g_j(u), and the q x q grid of (t, u) values is evaluated with
table gathers. Attained values are tracked in a dense boolean bitmap over
the field's index enumeration.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded
from .fields import FieldSpec, FieldTables, FqElement
from .trace import TracePolynomial

DEFAULT_BUDGET = 2**32


@dataclass(frozen=True, eq=False)
class AttainedSet:
    field: FieldSpec
    bitmap: np.ndarray  # bool, indexed by element index
    evaluations: int = 0

    def __contains__(self, a) -> bool:
        return bool(self.bitmap[self.field(a).index])

    def __eq__(self, other):
        if not isinstance(other, AttainedSet):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.bitmap, other.bitmap)

    def __len__(self):
        return int(self.bitmap.sum())

    def attained(self) -> list[FqElement]:
        return [self.field.element_at(int(i)) for i in np.flatnonzero(self.bitmap)]

    def missing(self) -> list[FqElement]:
        return [self.field.element_at(int(i)) for i in np.flatnonzero(~self.bitmap)]

    def is_full(self) -> bool:
        return bool(self.bitmap.all())

    @classmethod
    def from_indices(cls, field: FieldSpec, indices, evaluations: int = 0) -> "AttainedSet":
        bitmap = np.zeros(field.q, dtype=bool)
        bitmap[np.asarray(indices, dtype=np.int64)] = True
        return cls(field, bitmap, evaluations)


def check_budget(evaluations: int, budget: int, what: str = "evaluations") -> None:
    if evaluations > budget:
        raise BudgetExceeded(f"{evaluations} {what} exceeds budget {budget}")


def _reduced_coefficients(tau: TracePolynomial, p: int) -> dict[tuple[int, int], dict[int, int]]:
    """Group coefficients (mod p) as {(j, l): {i: c}} for terms c s^i t^j u^l."""
    grouped: dict[tuple[int, int], dict[int, int]] = {}
    for (i, j, l), c in tau.items():
        c %= p
        if c:
            grouped.setdefault((j, l), {})[i] = c
    return grouped


def _scan(grouped, tab: FieldTables, s_values) -> np.ndarray:
    q = tab.q
    addf = tab.add.ravel().astype(np.intp)
    mulf = tab.mul.ravel().astype(np.intp)
    bitmap = np.zeros(q, dtype=bool)
    elems = np.arange(q, dtype=np.intp)
    top_i = max((max(d) for d in grouped.values()), default=0)
    top_j = max((j for j, _ in grouped), default=0)
    top_l = max((l for _, l in grouped), default=0)
    u_pow = [np.ones(q, dtype=np.intp)]
    for _ in range(top_l):
        u_pow.append(mulf.take(u_pow[-1] * q + elems))
    t_col = (elems * q)[:, None]
    for s in s_values:
        s_pow = [1]
        for _ in range(top_i):
            s_pow.append(int(mulf[s_pow[-1] * q + s]))
        # g_j(u) = sum_l (sum_i c s^i) u^l
        g = {}
        for (j, l), by_i in grouped.items():
            coeff = 0
            for i, c in by_i.items():
                coeff = int(addf[coeff * q + int(mulf[c * q + s_pow[i]])])
            if coeff:
                term = mulf.take(coeff * q + u_pow[l])
                g[j] = addf.take(g[j] * q + term) if j in g else term
        # Horner in t over the (t, u) grid
        grid = np.zeros((q, q), dtype=np.intp)
        for j in range(top_j, -1, -1):
            if j < top_j:
                grid = mulf.take(t_col + grid)
            if j in g:
                grid = addf.take(grid * q + g[j][None, :])
        bitmap[grid.ravel()] = True
    return bitmap


def evaluate_image(tau: TracePolynomial, field: FieldSpec, budget: int = DEFAULT_BUDGET,
                   threads: int = 1) -> AttainedSet:
    """The exact set {tau(s, t, u) : s, t, u in F_q}.

    ``threads`` splits the s range into interleaved shares; the merged
    bitmap does not depend on the split.
    """
    q = field.q
    check_budget(q**3, budget)
    tab = field.tables()
    grouped = _reduced_coefficients(tau, field.p)
    threads = max(1, min(threads, q))
    if threads == 1:
        bitmap = _scan(grouped, tab, range(q))
    else:
        shares = [range(w, q, threads) for w in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda r: _scan(grouped, tab, r), shares))
        bitmap = np.logical_or.reduce(parts)
    return AttainedSet(field, bitmap, q**3)
