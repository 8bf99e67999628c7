"""Words in the free group of rank 2.

Words are stored run-length encoded: a tuple of ``Letter(gen, exp)`` with
``gen`` in ``{1, 2}`` and ``exp != 0``; adjacent letters never share a
generator. The empty tuple is the identity.

Text form::

    expr := term+            (juxtaposition, optionally separated by '*')
    term := atom ['^' signed-int]
    atom := 'x1' | 'x2' | '1' | '(' expr ')' | '[' expr ',' expr ']'

with the commutator convention ``[a,b] = a^-1 b^-1 a b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import ParseError

GENERATORS = (1, 2)


class Letter(NamedTuple):
    gen: int
    exp: int


def _reduce(letters: Iterable[tuple[int, int]]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for gen, exp in letters:
        if gen not in GENERATORS:
            raise ValueError(f"unknown generator x{gen}")
        if exp == 0:
            continue
        if stack and stack[-1].gen == gen:
            merged = stack.pop().exp + exp
            if merged:
                stack.append(Letter(gen, merged))
        else:
            stack.append(Letter(gen, exp))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; construct with ``Word.of(...)`` to reduce input."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        prev = None
        for gen, exp in self.letters:
            if gen not in GENERATORS or exp == 0 or gen == prev:
                raise ValueError(f"not a reduced run-length word: {self.letters!r}")
            prev = gen

    @classmethod
    def of(cls, letters: Iterable[tuple[int, int]] = ()) -> "Word":
        return cls(_reduce(letters))

    @classmethod
    def gen(cls, g: int, exp: int = 1) -> "Word":
        return cls.of([(g, exp)])

    def __len__(self) -> int:
        """Reduced length: the number of letters x1^{+-1}, x2^{+-1}."""
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __pow__(self, e: int) -> "Word":
        return power(self, e)

    def __invert__(self) -> "Word":
        return invert(self)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    @property
    def occurrences(self) -> int:
        """Number of run-length blocks."""
        return len(self.letters)


IDENTITY = Word()
X1 = Word.gen(1)
X2 = Word.gen(2)


def multiply(a: Word, b: Word) -> Word:
    return Word(_reduce(a.letters + b.letters))


def invert(a: Word) -> Word:
    return Word(tuple(Letter(g, -e) for g, e in reversed(a.letters)))


def power(a: Word, e: int) -> Word:
    if e < 0:
        a, e = invert(a), -e
    result = IDENTITY
    base = a
    while e:
        if e & 1:
            result = multiply(result, base)
        e >>= 1
        if e:
            base = multiply(base, base)
    return result


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a^-1 b^-1 a b."""
    return multiply(invert(a), multiply(invert(b), multiply(a, b)))


def substitute(v: Word, v1: Word, v2: Word) -> Word:
    """Replace x1 by ``v1`` and x2 by ``v2`` in ``v``."""
    images = {1: v1, 2: v2}
    out = IDENTITY
    for g, e in v.letters:
        out = multiply(out, power(images[g], e))
    return out


def theorem_word(k: int) -> Word:
    """x1^2 [x1^-2, x2^-1]^k."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    c = commutator(Word.gen(1, -2), Word.gen(2, -1))
    return multiply(Word.gen(1, 2), power(c, k))


def cyclic_reduce(a: Word) -> Word:
    letters = list(a.letters)
    while len(letters) >= 2 and letters[0].gen == letters[-1].gen:
        gen = letters[0].gen
        merged = letters[0].exp + letters[-1].exp
        letters = letters[1:-1]
        if merged:
            letters.insert(0, Letter(gen, merged))
    return Word(tuple(letters))


def _rotations(letters: tuple[Letter, ...]):
    for i in range(len(letters)):
        yield letters[i:] + letters[:i]


def canonical_trace_key(a: Word) -> tuple[Letter, ...]:
    """Key shared by all words related by conjugation and inversion."""
    c = cyclic_reduce(a).letters
    if not c:
        return ()
    inv = invert(Word(c)).letters
    return min(min(_rotations(c)), min(_rotations(inv)))


def is_proper_power(a: Word) -> bool:
    """True when ``a`` is a conjugate of r^e for some word r and |e| >= 2."""
    c = cyclic_reduce(a).letters
    if not c:
        return False
    if len(c) == 1:
        return abs(c[0].exp) >= 2
    flat = [(g, 1 if e > 0 else -1) for g, e in c for _ in range(abs(e))]
    n = len(flat)
    for d in range(1, n // 2 + 1):
        if n % d == 0 and flat == flat[:d] * (n // d):
            return True
    return False


def format_word(a: Word) -> str:
    if not a.letters:
        return "1"
    return " ".join(f"x{g}" if e == 1 else f"x{g}^{e}" for g, e in a.letters)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\n*":
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> Word:
        w = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return w

    def expr(self) -> Word:
        w = self.term()
        while self.peek() and self.peek() in "x1([":
            w = multiply(w, self.term())
        return w

    def term(self) -> Word:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            start = self.pos
            e = self.signed_int()
            if e == 0:
                self.pos = start
                self.error("zero exponent")
            base = power(base, e)
        return base

    def signed_int(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            self.error("expected integer exponent")
        return int(self.text[start:self.pos])

    def atom(self) -> Word:
        ch = self.peek()
        if ch == "x":
            nxt = self.text[self.pos + 1:self.pos + 2]
            if nxt not in ("1", "2"):
                self.error("expected x1 or x2")
            self.pos += 2
            if self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.error("expected x1 or x2")
            return Word.gen(int(nxt))
        if ch == "1":
            self.pos += 1
            return IDENTITY
        if ch == "(":
            self.pos += 1
            w = self.expr()
            self.expect(")")
            return w
        if ch == "[":
            self.pos += 1
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            return commutator(a, b)
        self.error("expected x1, x2, '(' or '['" if ch else "unexpected end of input")


def parse(text: str) -> Word:
    return _Parser(text).parse()
