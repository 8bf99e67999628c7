"""Non-surjectivity certificates from exhaustive trace evaluation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .fields import FieldSpec, FqElement
from .kernel import DEFAULT_BUDGET, evaluate_image
from .trace import format_polynomial, trace_polynomial
from .words import Word, format_word

METHOD = "exhaustive-trace-evaluation"

INVOLUTION_NOTE = (
    "q is odd and trace 0 is not a value of tau(w) on F_q^3, so no w(x, y) in SL2(q) has "
    "trace 0; the trace-0 elements of SL2(q) exist (e.g. [[0,1],[-1,0]]) and map to "
    "involutions of PSL2(q), none of which is a value of the word map"
)


def dumps(doc: dict) -> str:
    """The one serialization used for every structured document."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


@dataclass(frozen=True)
class Certificate:
    word: str
    k: Optional[int]
    field: FieldSpec
    target: FqElement
    missing: bool
    full_missing_set: tuple[FqElement, ...]
    evaluations: int
    trace_polynomial: str
    method: str = METHOD
    deduction: Optional[str] = None
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.missing != (self.target in self.full_missing_set):
            raise ValueError("missing flag disagrees with the missing set")
        if self.method == METHOD and self.evaluations != self.field.q**3:
            raise ValueError("exhaustive certificate must record q^3 evaluations")

    def to_dict(self) -> dict:
        doc = {
            "library_version": __version__,
            "word": self.word,
            "k": self.k,
            "field": self.field.describe(),
            "target": list(self.target.coeffs),
            "missing": self.missing,
            "full_missing_set": [list(a.coeffs) for a in self.full_missing_set],
            "evaluations": self.evaluations,
            "method": self.method,
            "trace_polynomial": self.trace_polynomial,
            "deduction": self.deduction,
        }
        doc.update(self.extra)
        return doc

    def to_json(self) -> str:
        return dumps(self.to_dict())


def certify_missing_trace(w: Word, field: FieldSpec, target=0, k: Optional[int] = None,
                          budget: int = DEFAULT_BUDGET, threads: int = 1) -> Certificate:
    """Decide by exhaustion whether ``target`` is outside tau(w)(F_q^3)."""
    target = field(target)
    tau = trace_polynomial(w)
    image = evaluate_image(tau, field, budget=budget, threads=threads)
    missing_set = tuple(image.missing())
    missing = target in missing_set
    deduction = INVOLUTION_NOTE if (missing and target.is_zero() and field.p % 2) else None
    return Certificate(
        word=format_word(w),
        k=k,
        field=field,
        target=target,
        missing=missing,
        full_missing_set=missing_set,
        evaluations=image.evaluations,
        trace_polynomial=format_polynomial(tau),
        deduction=deduction,
    )
