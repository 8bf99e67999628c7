"""Naive search for short words whose trace image over F_q misses values."""

from __future__ import annotations

from typing import Iterator, Sequence

from .fields import FieldSpec
from .kernel import DEFAULT_BUDGET, check_budget, evaluate_image
from .trace import format_polynomial, trace_polynomial
from .words import Word, canonical_trace_key, format_word, is_proper_power

MAX_SEARCH_LENGTH = 16
_LETTERS = ((1, 1), (1, -1), (2, 1), (2, -1))


def reduced_words(length: int) -> Iterator[Word]:
    """All reduced words of exactly ``length`` letters, in a fixed order."""
    def extend(prefix):
        if len(prefix) == length:
            yield Word.of(prefix)
            return
        for g, e in _LETTERS:
            if prefix and prefix[-1] == (g, -e):
                continue
            yield from extend(prefix + [(g, e)])

    yield from extend([])


def word_count(max_length: int) -> int:
    return sum(4 * 3 ** (n - 1) for n in range(1, max_length + 1))


def field_label(field: FieldSpec) -> str:
    return f"{field.p}^{field.n}"


def flag_word(w: Word, fields: Sequence[FieldSpec], budget: int = DEFAULT_BUDGET) -> dict | None:
    """Search entry for ``w`` if its trace image misses a value over some field."""
    tau = trace_polynomial(w)
    missing = {}
    for f in fields:
        image = evaluate_image(tau, f, budget=budget)
        if not image.is_full():
            missing[field_label(f)] = [list(a.coeffs) for a in image.missing()]
    if not missing:
        return None
    return {
        "word": format_word(w),
        "length": len(w),
        "proper_power": is_proper_power(w),
        "trace_polynomial": format_polynomial(tau),
        "missing": missing,
    }


def word_search(max_length: int, fields: Sequence[FieldSpec], budget: int = DEFAULT_BUDGET) -> dict:
    """Enumerate reduced words up to ``max_length``, one per conjugacy/inversion class."""
    if max_length > MAX_SEARCH_LENGTH:
        raise ValueError(f"max_length must be at most {MAX_SEARCH_LENGTH}")
    check_budget(word_count(max_length) * sum(f.q**3 for f in fields), budget)
    seen = set()
    flagged = []
    enumerated = 0
    for length in range(1, max_length + 1):
        for w in reduced_words(length):
            enumerated += 1
            key = canonical_trace_key(w)
            if key in seen:
                continue
            seen.add(key)
            entry = flag_word(w, fields, budget)
            if entry is not None:
                flagged.append(entry)
    return {
        "max_length": max_length,
        "fields": [f.describe() for f in fields],
        "words_enumerated": enumerated,
        "classes": len(seen),
        "flagged": flagged,
    }
