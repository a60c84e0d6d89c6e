"""Finitely presented groups and Tietze simplification."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .errors import UnknownGenerator
from .matrix import Matrix
from .words import Word, check_name, render_word, substitute


@dataclass(frozen=True, eq=False)
class Presentation:
    """Generators plus relators, each relator read as ``= 1``.

    Relators are stored freely and cyclically reduced. Equality is literal:
    the same generator set and the same relator multiset. The ``name`` is a
    label only and does not take part in comparisons.
    """

    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        gens = tuple(check_name(g) for g in self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError(f"duplicate generator in {gens}")
        allowed = set(gens)
        rels = []
        for r in self.relators:
            r = r if isinstance(r, Word) else Word(r)
            stray = r.generators() - allowed
            if stray:
                raise UnknownGenerator(f"relator {r} uses {sorted(stray)} outside {list(gens)}")
            rels.append(r.cyclic_reduce())
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Presentation):
            return NotImplemented
        return (set(self.generators) == set(other.generators)
                and Counter(self.relators) == Counter(other.relators))

    def __hash__(self) -> int:
        return hash((frozenset(self.generators), frozenset(Counter(self.relators).items())))

    def __str__(self) -> str:
        return render_presentation(self)

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    @property
    def n_relators(self) -> int:
        return len(self.relators)

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def check_word(self, w: Word) -> Word:
        stray = w.generators() - set(self.generators)
        if stray:
            raise UnknownGenerator(f"word {w} uses {sorted(stray)} outside {list(self.generators)}")
        return w

    def renamed(self, name: str) -> Presentation:
        return Presentation(self.generators, self.relators, name=name)


def render_presentation(p: Presentation) -> str:
    rels = ", ".join(render_word(r) for r in p.relators)
    gens = ", ".join(p.generators)
    return f"< {gens} | {rels} >" if rels else f"< {gens} | >"


def add_relators(p: Presentation, extra: Iterable[Word], name: str | None = None) -> Presentation:
    extra = [p.check_word(w) for w in extra]
    return Presentation(p.generators, p.relators + tuple(extra),
                        name=p.name if name is None else name)


def relator_matrix(p: Presentation) -> Matrix:
    """Exponent sums: one row per relator, one column per generator."""
    return Matrix([[r.exponent_sum(g) for g in p.generators] for r in p.relators],
                  cols=len(p.generators))


@dataclass
class Simplification:
    presentation: Presentation
    # every original generator -> word in the surviving generators
    elimination: dict[str, Word]
    steps: int
    exhausted: bool

    def transport(self, w: Word) -> Word:
        return substitute(w, self.elimination)


def simplify(p: Presentation, budget: int = 10_000) -> Presentation:
    return simplify_with_map(p, budget).presentation


def simplify_with_map(p: Presentation, budget: int = 10_000) -> Simplification:
    """Deterministic Tietze reduction.

    Each step either drops trivial and duplicate relators (duplicates are
    detected up to cyclic permutation and inversion) or eliminates one
    generator. The generator eliminated is one that occurs exactly once in
    the shortest relator having such a generator. Ties go to the earlier
    generator, then the earlier relator. Counts never increase.
    """
    if budget < 0:
        raise ValueError("budget must be >= 0")
    gens = list(p.generators)
    rels = list(p.relators)
    elim: dict[str, Word] = {g: Word.gen(g) for g in gens}
    steps = 0

    while True:
        cleaned = _drop_redundant(rels)
        if cleaned != rels:
            if steps >= budget:
                break
            rels = cleaned
            steps += 1

        choice = _pick_elimination(gens, rels)
        if choice is None:
            break
        if steps >= budget:
            break
        g, ri = choice
        definition = _solve_for(rels[ri], g)
        images = {h: Word.gen(h) for h in gens}
        images[g] = definition
        rels = [substitute(r, images).cyclic_reduce() for k, r in enumerate(rels) if k != ri]
        gens.remove(g)
        elim = {old: substitute(w, images) for old, w in elim.items()}
        steps += 1

    exhausted = steps >= budget and (_drop_redundant(rels) != rels
                                     or _pick_elimination(gens, rels) is not None)
    out = Presentation(tuple(gens), tuple(rels), name=p.name)
    return Simplification(out, elim, steps, exhausted)


def _drop_redundant(rels: list[Word]) -> list[Word]:
    seen = set()
    out = []
    for r in rels:
        r = r.cyclic_reduce()
        if not r:
            continue
        key = r.cyclic_key()
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return out


def _pick_elimination(gens: list[str], rels: list[Word]):
    best = None
    for gi, g in enumerate(gens):
        for ri, r in enumerate(rels):
            if r.occurrences(g) == 1:
                key = (len(r), gi, ri)
                if best is None or key < best[0]:
                    best = (key, g, ri)
    if best is None:
        return None
    return best[1], best[2]


def _solve_for(r: Word, g: str) -> Word:
    """Given a relator ``u g^e v`` with ``g`` occurring once, return ``g`` in terms of the rest."""
    idx = next(k for k, (h, _) in enumerate(r.letters) if h == g)
    sign = r.letters[idx][1]
    u = Word(r.letters[:idx])
    v = Word(r.letters[idx + 1:])
    if sign == 1:
        return u.inverse() * v.inverse()
    return v * u


def free_group(names: Iterable[str], name: str = "") -> Presentation:
    return Presentation(tuple(names), (), name=name)


def cyclic_group(n: int, gen: str = "a") -> Presentation:
    return Presentation((gen,), (Word.gen(gen, n),), name=f"Z{n}")


def relation(lhs: Word, rhs: Word) -> Word:
    """The relator ``lhs * rhs^-1`` for the relation ``lhs = rhs``."""
    return lhs * rhs.inverse()


def presentation_from_relations(gens: Iterable[str], relations: Iterable, name: str = "") -> Presentation:
    rels = []
    for item in relations:
        if isinstance(item, tuple):
            rels.append(relation(*item))
        else:
            rels.append(item)
    return Presentation(tuple(gens), tuple(rels), name=name)

