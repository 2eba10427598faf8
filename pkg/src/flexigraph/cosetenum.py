"""Finitely presented groups: a small text grammar and Todd-Coxeter enumeration.

Presentation text::

    gens: a, b, z;
    rels: a^4, b^2, (a*b)^2, z^2, (a*b*z)^2;

Words are ``term ("*" term)*`` where a term is ``ident`` or ``(word)``,
optionally followed by ``^`` and a signed integer. ``1`` denotes the empty
word (allowed inside words, not as a whole relator).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from . import _backend
from .errors import ParseError
from .words import FreeWord, free_reduce

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<punct>[:;,*^()\-]))")


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(p: int) -> tuple[int, int]:
        line = max(i for i, s in enumerate(line_starts) if s <= p)
        return line + 1, p - line_starts[line] + 1

    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            p = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            ln, col = where(p)
            raise ParseError(f"unexpected character {text[p]!r}", ln, col)
        kind = m.lastgroup
        start = m.start(kind)
        ln, col = where(start)
        toks.append(_Tok(kind, m.group(kind), ln, col))
        pos = m.end()
    ln, col = where(len(text))
    toks.append(_Tok("eof", "", ln, col))
    return toks


class _Parser:
    def __init__(self, text: str, names: Sequence[str] | None = None):
        self.toks = _tokenize(text)
        self.i = 0
        self.names = list(names) if names is not None else None

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, msg: str) -> ParseError:
        return ParseError(msg, self.tok.line, self.tok.col)

    def expect(self, text: str) -> _Tok:
        if self.tok.text != text or self.tok.kind == "eof":
            raise self.fail(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> str:
        if self.tok.kind != "ident":
            raise self.fail(f"expected identifier, found {self.tok.text or 'end of input'!r}")
        t = self.tok
        self.i += 1
        return t.text

    def signed_int(self) -> int:
        sign = 1
        if self.tok.text == "-":
            sign = -1
            self.i += 1
        if self.tok.kind != "int":
            raise self.fail("expected integer exponent")
        v = int(self.tok.text)
        self.i += 1
        return sign * v

    def word(self) -> list[int]:
        out = self.term()
        while self.tok.text == "*":
            self.i += 1
            out += self.term()
        return out

    def term(self) -> list[int]:
        if self.tok.text == "(":
            self.i += 1
            base = self.word()
            self.expect(")")
        elif self.tok.kind == "int" and self.tok.text == "1":
            self.i += 1
            base = []
        else:
            t = self.tok
            name = self.ident()
            if name not in self.names:
                raise ParseError(f"unknown identifier {name!r}", t.line, t.col)
            base = [self.names.index(name) + 1]
        e = 1
        if self.tok.text == "^":
            self.i += 1
            e = self.signed_int()
        if e < 0:
            base = [-g for g in reversed(base)]
        return base * abs(e)


@dataclass
class Presentation:
    generators: list[str]
    relators: list[FreeWord] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def to_text(self) -> str:
        rels = ", ".join(r.to_text(self.generators) for r in self.relators)
        return f"gens: {', '.join(self.generators)};\nrels: {rels};\n"

    def word(self, text: str) -> FreeWord:
        return parse_word_text(text, self.generators)


def parse_presentation(text: str) -> Presentation:
    p = _Parser(text)
    p.expect("gens")
    p.expect(":")
    gens = [p.ident()]
    while p.tok.text == ",":
        p.i += 1
        gens.append(p.ident())
    p.expect(";")
    if len(set(gens)) != len(gens):
        raise ParseError("duplicate generator", 1, 1)
    p.names = gens
    p.expect("rels")
    p.expect(":")
    if p.tok.text == ";" or p.tok.kind == "eof":
        raise p.fail("relator list is empty")
    rels = []
    while True:
        t = p.tok
        raw = p.word()
        w = FreeWord(free_reduce(raw), len(gens))
        if w.is_identity():
            raise ParseError("relator reduces to the empty word", t.line, t.col)
        rels.append(w)
        if p.tok.text != ",":
            break
        p.i += 1
    if p.tok.text == ";":  # final terminator is optional
        p.i += 1
    if p.tok.kind != "eof":
        raise p.fail("trailing input")
    return Presentation(gens, rels)


def parse_word_text(text: str, names: Sequence[str]) -> FreeWord:
    p = _Parser(text, names)
    raw = p.word()
    if p.tok.kind != "eof":
        raise p.fail("trailing input")
    return FreeWord(free_reduce(raw), len(names))


def parse_word_list(text: str, names: Sequence[str]) -> list[FreeWord]:
    """Comma-separated words; an empty string gives the empty list."""
    if not text.strip():
        return []
    p = _Parser(text, names)
    out = [FreeWord(free_reduce(p.word()), len(names))]
    while p.tok.text == ",":
        p.i += 1
        out.append(FreeWord(free_reduce(p.word()), len(names)))
    if p.tok.kind != "eof":
        raise p.fail("trailing input")
    return out


def _columns(w: FreeWord) -> list[int]:
    # x_i -> column 2(i-1), x_i^-1 -> column 2(i-1)+1
    return [2 * (g - 1) if g > 0 else 2 * (-g - 1) + 1 for g in w.letters]


@dataclass
class CosetTable:
    """Result of an enumeration. ``rows[c][col]`` follows the column
    convention of :func:`_columns`; coset 0 is the subgroup itself."""

    rows: list[list[int]]
    complete: bool
    ngens: int

    @property
    def index(self) -> int | None:
        return len(self.rows) if self.complete else None

    @property
    def status(self) -> str:
        return "complete" if self.complete else "overflow"

    def permutations(self) -> list[list[int]]:
        """Right action of each generator on cosets 0..index-1."""
        return [[row[2 * g] for row in self.rows] for g in range(self.ngens)]

    def trace(self, coset: int, w: FreeWord) -> int:
        for col in _columns(w):
            coset = self.rows[coset][col]
        return coset


def todd_coxeter(p: Presentation, subgroup: Sequence[FreeWord] = (),
                 max_cosets: int = 1_000_000) -> CosetTable:
    """Enumerate the cosets of ``subgroup`` in the group presented by ``p``.

    HLT relator scanning; when the table fills, a lookahead pass without new
    definitions is run and dead cosets are compacted away. If that frees no
    room the result is an overflow table (``complete`` False, no index).
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    rels = [_columns(r) for r in p.relators]
    subs = [_columns(w) for w in subgroup if not w.is_identity()]
    complete, rows = _backend.kernels.enumerate_cosets(p.rank, rels, subs, max_cosets)
    return CosetTable([list(r) for r in rows] if complete else [], complete, p.rank)


G_PRESENTATION = "gens: a, b, z;\nrels: a^4, b^2, (a*b)^2, z^2, (a*b*z)^2;\n"


def p_presentation_text(ell: int) -> str:
    """Relators normally generating F_3^(2 ell) gamma_ell(F_3), for ell in {2, 3}."""
    n = 2 * ell
    gens = ["x1", "x2", "x3"]
    rels = [f"x{i}^{n}" for i in (1, 2, 3)]
    pairs = [(j, i) for i in (1, 2, 3) for j in (1, 2, 3) if i < j]
    rels += [f"(x{i}*x{j})^{n}" for j, i in pairs]
    if ell == 2:
        rels += [f"x{j}^-1*x{i}^-1*x{j}*x{i}" for j, i in pairs]
    elif ell == 3:
        comm = {(j, i): f"(x{j}^-1*x{i}^-1*x{j}*x{i})" for j, i in pairs}
        rels += [f"{comm[j, i]}^{n}" for j, i in pairs]
        rels += [f"{comm[j, i]}^-1*x{k}^-1*{comm[j, i]}*x{k}" for j, i in pairs for k in (1, 2, 3)]
    else:
        raise ValueError("only ell in {2, 3} is supported")
    return f"gens: {', '.join(gens)};\nrels: {', '.join(rels)};\n"
