"""Free-group words over named generators.

A word is a tuple of ``(name, sign)`` letters with ``sign`` in ``{1, -1}``.
Words are freely reduced when constructed, so two equal elements of the
free group are always equal as Python values.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .errors import MissingImage

Letter = tuple[str, int]

NAME_RE = re.compile(r"[^\W\d]\w*")


def check_name(name: str) -> str:
    if not isinstance(name, str) or not NAME_RE.fullmatch(name):
        raise ValueError(f"invalid generator name: {name!r}")
    return name


def free_reduce(raw: Iterable[Letter]) -> tuple[Letter, ...]:
    """Cancel adjacent ``g g^-1`` pairs with a single stack pass."""
    out: list[Letter] = []
    for name, sign in raw:
        if sign not in (1, -1):
            raise ValueError(f"letter exponent must be +1 or -1, got {sign}")
        if out and out[-1][0] == name and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((name, sign))
    return tuple(out)


class Word:
    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        self.letters = free_reduce(letters)
        self._hash = None

    @classmethod
    def gen(cls, name: str, power: int = 1) -> Word:
        sign = 1 if power >= 0 else -1
        return cls([(name, sign)] * abs(power))

    @classmethod
    def from_syllables(cls, syllables: Iterable[tuple[str, int]]) -> Word:
        """Build from ``(name, power)`` pairs, e.g. ``[("t", 3), ("a", -3)]``."""
        letters: list[Letter] = []
        for name, power in syllables:
            sign = 1 if power >= 0 else -1
            letters.extend([(name, sign)] * abs(power))
        return cls(letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        if isinstance(other, Word):
            return self.letters == other.letters
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def inverse(self) -> Word:
        return Word((g, -s) for g, s in reversed(self.letters))

    __invert__ = inverse

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n))

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def exponent_sum(self, name: str) -> int:
        return sum(s for g, s in self.letters if g == name)

    def occurrences(self, name: str) -> int:
        return sum(1 for g, _ in self.letters if g == name)

    def syllables(self) -> list[tuple[str, int]]:
        out: list[list] = []
        for g, s in self.letters:
            if out and out[-1][0] == g:
                out[-1][1] += s
            else:
                out.append([g, s])
        return [(g, p) for g, p in out]

    def cyclic_reduce(self) -> Word:
        """Strip matching inverse letters from both ends."""
        letters = self.letters
        i, j = 0, len(letters) - 1
        while i < j and letters[i][0] == letters[j][0] and letters[i][1] == -letters[j][1]:
            i += 1
            j -= 1
        return Word(letters[i:j + 1])

    def rotations(self) -> list[Word]:
        n = len(self.letters)
        return [Word(self.letters[k:] + self.letters[:k]) for k in range(max(n, 1))]

    def cyclic_key(self) -> tuple:
        """Key identifying the word up to cyclic permutation and inversion.

        Only meaningful for cyclically reduced words.
        """
        if not self.letters:
            return ()
        candidates = [r.letters for r in self.rotations()]
        candidates += [r.letters for r in self.inverse().rotations()]
        return min(candidates, key=_letters_sort_key)

    def substitute(self, images: Mapping[str, Word]) -> Word:
        return substitute(self, images)

    def __str__(self) -> str:
        return render_word(self)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def _letters_sort_key(letters):
    return [(g, -s) for g, s in letters]


def substitute(w: Word, images: Mapping[str, Word]) -> Word:
    """Replace each generator of ``w`` by its image and freely reduce."""
    out: list[Letter] = []
    for g, s in w.letters:
        try:
            img = images[g]
        except KeyError:
            raise MissingImage(f"no image for generator {g!r}") from None
        out.extend(img.letters if s == 1 else img.inverse().letters)
    return Word(out)


def render_word(w: Word, sep: str = " ") -> str:
    if not w.letters:
        return "1"
    parts = []
    for g, p in w.syllables():
        parts.append(g if p == 1 else f"{g}^{p}")
    return sep.join(parts)


def commutator(a: Word, b: Word) -> Word:
    return a * b * a.inverse() * b.inverse()


def conjugate(w: Word, by: Word) -> Word:
    """``by * w * by^-1``."""
    return by * w * by.inverse()
