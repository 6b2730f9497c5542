"""Compact DC-word notation.

A word like ``21321y1'2'3'1'2'y'`` lists mapping-class generators left to
right.  Digits ``i`` are the Dehn twists about the chain curves alpha_i, ``b``
is the twist about beta, ``y`` is the crosscap slide, and a postfix
apostrophe marks an inverse.  Evaluation applies the rightmost letter first.

Grammar::

    expr := term+
    term := atom | atom "'" | "(" expr ")" "^" int
    atom := digit | "y" | "b" | "id"
    int  := "-"? digit+

Whitespace is insignificant between tokens.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Union

__all__ = [
    "Kind",
    "GenLetter",
    "GeneratorWord",
    "Letter",
    "Seq",
    "Power",
    "WordExpr",
    "NotationError",
    "parse",
    "expand",
    "to_text",
    "word",
]


class NotationError(ValueError):
    """Raised for malformed or inadmissible notation.

    ``offset`` is the byte offset of the offending character, or ``None``
    when the problem is not tied to one position.
    """

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        where = "" if offset is None else f" at offset {offset}"
        super().__init__(f"{message}{where}")


class Kind(Enum):
    TWIST = "twist"
    BETA = "beta"
    SLIDE = "slide"


@dataclass(frozen=True)
class GenLetter:
    kind: Kind
    index: int = 0  # twist index, 0 for b and y
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.kind is Kind.TWIST and self.index < 1:
            raise ValueError("twist index must be positive")
        if self.kind is not Kind.TWIST and self.index != 0:
            raise ValueError("only twists carry an index")

    @property
    def base(self) -> str:
        if self.kind is Kind.TWIST:
            return str(self.index)
        return "b" if self.kind is Kind.BETA else "y"

    def inverse(self) -> "GenLetter":
        return GenLetter(self.kind, self.index, -self.sign)

    def admissible(self, genus: int) -> bool:
        if self.kind is Kind.TWIST:
            return 1 <= self.index <= genus - 1
        if self.kind is Kind.BETA:
            return genus >= 4
        return True

    def __str__(self) -> str:
        return self.base + ("'" if self.sign < 0 else "")


@dataclass(frozen=True)
class GeneratorWord:
    genus: int
    letters: tuple[GenLetter, ...] = ()

    def __post_init__(self):
        if self.genus < 2:
            raise NotationError(f"genus must be at least 2, got {self.genus}")
        for letter in self.letters:
            if not letter.admissible(self.genus):
                raise NotationError(f"letter {letter} is not admissible at genus {self.genus}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "GeneratorWord") -> "GeneratorWord":
        if other.genus != self.genus:
            raise ValueError("cannot concatenate words of different genus")
        return GeneratorWord(self.genus, self.letters + other.letters)

    def __str__(self) -> str:
        return to_text(self)


# --- expression tree -------------------------------------------------------


@dataclass(frozen=True)
class Letter:
    letter: GenLetter


@dataclass(frozen=True)
class Seq:
    items: tuple["WordExpr", ...] = ()


@dataclass(frozen=True)
class Power:
    body: Seq
    exponent: int


WordExpr = Union[Letter, Seq, Power]


class _Parser:
    def __init__(self, text: str, genus: int):
        self.text = text
        self.genus = genus
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self, closing: bool) -> Seq:
        items: list[WordExpr] = []
        start = self.pos
        while True:
            ch = self.peek()
            if ch == "":
                if closing:
                    raise NotationError("unclosed parenthesis", self.pos)
                break
            if ch == ")":
                if not closing:
                    raise NotationError("unexpected ')'", self.pos)
                break
            items.append(self.term())
        if not items:
            raise NotationError("empty expression", start)
        return Seq(tuple(items))

    def term(self) -> WordExpr:
        ch = self.peek()
        at = self.pos
        if ch == "(":
            self.pos += 1
            body = self.expr(closing=True)
            self.pos += 1  # ')'
            if self.peek() != "^":
                raise NotationError("expected '^' after group", self.pos)
            self.pos += 1
            return Power(body, self.integer())
        if self.text.startswith("id", self.pos):
            self.pos += 2
            if self.peek() == "'":
                self.pos += 1  # id' is still the identity
            return Seq(())
        if ch.isdigit():
            idx = int(ch)
            if idx == 0:
                raise NotationError("twist index 0 does not exist", at)
            letter = GenLetter(Kind.TWIST, idx)
        elif ch == "y":
            letter = GenLetter(Kind.SLIDE)
        elif ch == "b":
            letter = GenLetter(Kind.BETA)
        else:
            raise NotationError(f"unknown symbol {ch!r}", at)
        self.pos += 1
        if self.pos < len(self.text) and self.text[self.pos] == "'":
            self.pos += 1
            letter = letter.inverse()
        if not letter.admissible(self.genus):
            raise NotationError(f"letter {letter} is not admissible at genus {self.genus}", at)
        return Letter(letter)

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise NotationError("expected an integer exponent", start)
        return int(self.text[start:self.pos])


def parse(text: str, genus: int) -> WordExpr:
    """Parse ``text`` into an expression tree, checking admissibility at ``genus``."""
    if genus < 2:
        raise NotationError(f"genus must be at least 2, got {genus}")
    try:
        text.encode("ascii")
    except UnicodeEncodeError as exc:
        raise NotationError("non-ASCII input", exc.start) from None
    p = _Parser(text, genus)
    if p.peek() == "":
        raise NotationError("empty input", 0)
    return p.expr(closing=False)


def _expand(e: WordExpr) -> list[GenLetter]:
    if isinstance(e, Letter):
        return [e.letter]
    if isinstance(e, Seq):
        out: list[GenLetter] = []
        for item in e.items:
            out.extend(_expand(item))
        return out
    body = _expand(e.body)
    if e.exponent < 0:
        body = [x.inverse() for x in reversed(body)]
    return body * abs(e.exponent)


def expand(expr: WordExpr, genus: int) -> GeneratorWord:
    return GeneratorWord(genus, tuple(_expand(expr)))


def word(text: str, genus: int) -> GeneratorWord:
    """Shorthand for ``expand(parse(text, genus), genus)``."""
    return expand(parse(text, genus), genus)


def _expr_text(e: WordExpr) -> str:
    if isinstance(e, Letter):
        return str(e.letter)
    if isinstance(e, Power):
        return f"({_expr_text(e.body)})^{e.exponent}"
    if not e.items:
        return "id"
    parts = [_expr_text(x) for x in e.items]
    # a space after a power keeps its exponent from absorbing a following digit
    out = ""
    for i, part in enumerate(parts):
        if i and isinstance(e.items[i - 1], Power):
            out += " "
        out += part
    return out


def to_text(obj: Union[WordExpr, GeneratorWord, Iterable[GenLetter]]) -> str:
    """Render a word or expression back into the notation (``id`` when empty)."""
    if isinstance(obj, GeneratorWord):
        text = "".join(str(x) for x in obj.letters)
    elif isinstance(obj, (Letter, Seq, Power)):
        text = _expr_text(obj)
    else:
        text = "".join(str(x) for x in obj)
    return text or "id"
