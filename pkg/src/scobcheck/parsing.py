"""Text syntax for words, presentations and automorphism maps.

Grammar::

    presentation := '<' genlist '|' relist '>'
    genlist      := name (',' name)*
    relist       := relation (',' relation)* | ''
    relation     := word | word '=' word          # w1 = w2 is stored as w1 w2^-1
    word         := term+ | '1'
    term         := name ('^' int)?

``*`` between terms is optional. When the alphabet is known, an identifier
that is not itself a generator but spells out single-letter generators is
split into them, so ``uvu`` reads as ``u v u`` in ``< u, v | ... >``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import PresentationSyntaxError, UnknownGenerator
from .presentations import Presentation
from .words import Word

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<name>[^\W\d]\w*)
  | (?P<int>[+-]?\d+)
  | (?P<op>\^|\*|,|\||<|>|=|\(|\)|:|->|;)
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise PresentationSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, alphabet: Iterable[str] | None = None):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0
        self.alphabet = list(alphabet) if alphabet is not None else None

    @property
    def tok(self) -> _Tok:
        return self.toks[self.k]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.tok
        return PresentationSyntaxError(msg, self.text, tok.pos)

    def expect(self, value: str) -> _Tok:
        tok = self.tok
        if tok.value != value or tok.kind == "eof":
            found = tok.value or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}")
        self.k += 1
        return tok

    def at(self, value: str) -> bool:
        return self.tok.kind == "op" and self.tok.value == value

    def presentation(self, name: str = "") -> Presentation:
        self.expect("<")
        gens = []
        if self.tok.kind == "name":
            gens.append(self.name())
            while self.at(","):
                self.k += 1
                gens.append(self.name())
        seen = set()
        for g in gens:
            if g in seen:
                raise self.error(f"duplicate generator {g!r}")
            seen.add(g)
        self.alphabet = gens
        self.expect("|")
        rels = []
        if not self.at(">"):
            rels.append(self.relation())
            while self.at(","):
                self.k += 1
                rels.append(self.relation())
        self.expect(">")
        if self.tok.kind != "eof":
            raise self.error(f"trailing input {self.tok.value!r}")
        return Presentation(tuple(gens), tuple(rels), name=name)

    def name(self) -> str:
        tok = self.tok
        if tok.kind != "name":
            raise self.error(f"expected a generator name, found {tok.value or 'end of input'!r}")
        self.k += 1
        return tok.value

    def relation(self) -> Word:
        lhs = self.word()
        if self.at("="):
            self.k += 1
            rhs = self.word()
            return lhs * rhs.inverse()
        return lhs

    def word(self) -> Word:
        tok = self.tok
        if tok.kind == "int" and tok.value == "1":
            self.k += 1
            return Word()
        letters: list = []
        if not self._term_start():
            raise self.error(f"expected a word, found {tok.value or 'end of input'!r}")
        while self._term_start():
            letters.extend(self.term().letters)
            if self.at("*"):
                self.k += 1
                if not self._term_start():
                    raise self.error("expected a term after '*'")
        return Word(letters)

    def _term_start(self) -> bool:
        return self.tok.kind == "name" or self.at("(")

    def term(self) -> Word:
        if self.at("("):
            self.k += 1
            inner = self.word()
            self.expect(")")
            base = inner
        else:
            tok = self.tok
            self.k += 1
            base = self._resolve(tok)
        if self.at("^"):
            self.k += 1
            tok = self.tok
            if tok.kind != "int":
                raise self.error("expected an integer exponent after '^'")
            self.k += 1
            return base ** int(tok.value)
        return base

    def _resolve(self, tok: _Tok) -> Word:
        name = tok.value
        if self.alphabet is None or name in self.alphabet:
            return Word.gen(name)
        if all(ch in self.alphabet for ch in name):
            return Word([(ch, 1) for ch in name])
        raise UnknownGenerator(
            f"unknown generator {name!r} at column {tok.pos + 1}; alphabet is {self.alphabet}")


def parse_presentation(text: str, name: str = "") -> Presentation:
    return _Parser(text).presentation(name)


def parse_word(text: str, generators: Iterable[str] | None = None) -> Word:
    p = _Parser(text, generators)
    w = p.word()
    if p.tok.kind != "eof":
        raise p.error(f"trailing input {p.tok.value!r}")
    return w


def parse_relation(text: str, generators: Iterable[str] | None = None) -> Word:
    p = _Parser(text, generators)
    w = p.relation()
    if p.tok.kind != "eof":
        raise p.error(f"trailing input {p.tok.value!r}")
    return w


def parse_map(items: Iterable[str], generators: Iterable[str] | None = None) -> dict[str, Word]:
    """Parse ``["u=v u", "v=u"]`` or ``["u -> v u"]`` into a generator map."""
    out = {}
    for item in items:
        m = re.fullmatch(r"\s*([^\W\d]\w*)\s*(?:=|->|:)\s*(.+?)\s*", item)
        if not m:
            raise PresentationSyntaxError(f"cannot read map entry {item!r}", item, 0)
        out[m.group(1)] = parse_word(m.group(2), generators)
    return out
