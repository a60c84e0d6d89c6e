"""Presentations built from geometric descriptions.

Link diagrams are given as signed Gauss codes. Each component is a cyclic
sequence of ``(crossing_id, "o" | "u", sign)`` passes, with ``sign`` the
usual right-hand-rule crossing sign. Arcs run from one under-pass to the
next; arc generators are numbered ``x1, x2, ...`` over all components.

Wirtinger convention: passing under an over-arc with generator ``k`` at a
crossing of sign ``e``, the outgoing arc is ``k^-e * incoming * k^e``. With
that convention, the product of ``k^e`` over the under-passes of a component
commutes with the component's first arc generator, and is its blackboard
longitude.
"""

from __future__ import annotations

import json
import warnings
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .cosets import CosetTable, EnumerationLimits, enumerate_cosets, group_order
from .errors import (AutomorphismUnverified, InvalidParameter, MalformedDiagram, MissingFraming,
                     NotAnAutomorphism, UnknownGenerator)
from .matrix import Matrix
from .presentations import Presentation, add_relators
from .words import Word, substitute

ROLES = ("surgery", "dotted", "attaching")


# -- diagrams -------------------------------------------------------------------


@dataclass(frozen=True)
class Pass:
    crossing: int | str
    over: bool
    sign: int


@dataclass(frozen=True)
class Component:
    code: tuple[Pass, ...]
    role: str = "surgery"
    framing: int | None = None


@dataclass(frozen=True)
class FramedLinkDiagram:
    components: tuple[Component, ...]
    comment: str = field(default="", compare=False)

    def __post_init__(self):
        validate_diagram(self)

    @classmethod
    def from_json(cls, data: Mapping) -> FramedLinkDiagram:
        if not isinstance(data, Mapping) or not isinstance(data.get("components"), list):
            raise MalformedDiagram("diagram JSON needs a 'components' list")
        comps = []
        for k, c in enumerate(data["components"]):
            code = []
            for item in c.get("code", []):
                if len(item) != 3 or item[1] not in ("o", "u") or item[2] not in (1, -1):
                    raise MalformedDiagram(f"component {k}: bad code entry {item!r}")
                code.append(Pass(item[0], item[1] == "o", int(item[2])))
            role = c.get("role", "surgery")
            comps.append(Component(tuple(code), role, c.get("framing")))
        return cls(tuple(comps), comment=data.get("comment", ""))

    @classmethod
    def load(cls, path) -> FramedLinkDiagram:
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))

    def to_json(self) -> dict:
        comps = []
        for c in self.components:
            entry = {"code": [[p.crossing, "o" if p.over else "u", p.sign] for p in c.code],
                     "role": c.role}
            if c.framing is not None:
                entry["framing"] = c.framing
            comps.append(entry)
        out = {"components": comps}
        if self.comment:
            out = {"comment": self.comment, **out}
        return out

    def with_framings(self, framings: Iterable[int], role: str = "surgery") -> FramedLinkDiagram:
        comps = tuple(Component(c.code, role, f) for c, f in zip(self.components, framings, strict=True))
        return FramedLinkDiagram(comps, self.comment)

    def crossing_signs(self) -> dict:
        return {p.crossing: p.sign for c in self.components for p in c.code}

    def writhe(self, i: int) -> int:
        """Sum of signs of the crossings of component ``i`` with itself."""
        own = Counter(p.crossing for p in self.components[i].code)
        signs = self.crossing_signs()
        return sum(signs[x] for x, n in own.items() if n == 2)

    def linking_matrix(self) -> Matrix:
        """Framings on the diagonal, linking numbers off it."""
        n = len(self.components)
        owner: dict = {}
        for i, c in enumerate(self.components):
            for p in c.code:
                owner.setdefault(p.crossing, []).append((i, p))
        m = [[0] * n for _ in range(n)]
        for i, c in enumerate(self.components):
            if c.framing is None:
                raise MissingFraming(f"component {i} has no framing")
            m[i][i] = c.framing
        for passes in owner.values():
            (i, p), (j, _) = passes
            if i != j:
                # count each inter-component crossing from the under side only
                under = i if not p.over else j
                over = j if under == i else i
                m[under][over] += p.sign
        # counting from either component's under-passes must give the same number
        for i in range(n):
            for j in range(i + 1, n):
                lk = m[i][j]
                if m[j][i] != lk:
                    raise MalformedDiagram(
                        f"components {i} and {j} give inconsistent linking numbers {lk} and {m[j][i]}")
        return Matrix(m)


def validate_diagram(d: FramedLinkDiagram) -> None:
    seen: dict = {}
    for i, c in enumerate(d.components):
        if c.role not in ROLES:
            raise MalformedDiagram(f"component {i}: unknown role {c.role!r}")
        if c.role == "dotted" and c.framing is not None:
            raise MalformedDiagram(f"component {i}: dotted circles carry no framing")
        if c.framing is not None and not isinstance(c.framing, int):
            raise MalformedDiagram(f"component {i}: framing must be an integer")
        for p in c.code:
            if p.sign not in (1, -1):
                raise MalformedDiagram(f"crossing {p.crossing}: sign must be +1 or -1")
            seen.setdefault(p.crossing, []).append(p)
    for x, passes in seen.items():
        if len(passes) != 2:
            raise MalformedDiagram(f"crossing {x} appears {len(passes)} times, expected 2")
        if {p.over for p in passes} != {True, False}:
            raise MalformedDiagram(f"crossing {x} must be passed once over and once under")
        if passes[0].sign != passes[1].sign:
            raise MalformedDiagram(f"crossing {x} has inconsistent signs")


def braid_closure(word: Iterable[int], strands: int) -> FramedLinkDiagram:
    """Closed braid with strands oriented upward.

    ``k`` stands for the generator in which the strand at position ``k``
    crosses over the one at ``k + 1`` (a positive crossing); ``-k`` is its
    inverse. Crossings are numbered ``1, 2, ...`` in braid order.
    """
    if strands < 1:
        raise InvalidParameter("a braid needs at least one strand")
    # events[s]: passes of the strand that starts at bottom position s
    pos_of = list(range(strands))             # strand id at each position
    events: list[list[Pass]] = [[] for _ in range(strands)]
    for cid, letter in enumerate(word, start=1):
        k = abs(letter) - 1
        if not 0 <= k < strands - 1:
            raise InvalidParameter(f"braid letter {letter} out of range for {strands} strands")
        left, right = pos_of[k], pos_of[k + 1]
        sign = 1 if letter > 0 else -1
        events[left].append(Pass(cid, sign > 0, sign))
        events[right].append(Pass(cid, sign < 0, sign))
        pos_of[k], pos_of[k + 1] = right, left
    end_pos = {s: pos_of.index(s) for s in range(strands)}
    comps = []
    done = set()
    for s in range(strands):
        if s in done:
            continue
        code = []
        cur = s
        while cur not in done:
            done.add(cur)
            code.extend(events[cur])
            cur = end_pos[cur]   # strand leaving at the top re-enters at the same bottom position
        comps.append(Component(tuple(code), "surgery", None))
    return FramedLinkDiagram(tuple(comps))


# -- Wirtinger and surgery -------------------------------------------------------


@dataclass
class _Arcs:
    names: list[list[str]]                 # per component, arc generator names
    over_arc: dict                         # crossing -> generator of the over-arc
    unders: list[list[tuple[Pass, str, str]]]  # per component: (pass, incoming, outgoing)


def _arcs(d: FramedLinkDiagram) -> _Arcs:
    names: list[list[str]] = []
    counter = 0
    for c in d.components:
        m = sum(1 for p in c.code if not p.over)
        k = max(m, 1)
        names.append([f"x{counter + r + 1}" for r in range(k)])
        counter += k
    over_arc = {}
    unders = []
    for ci, c in enumerate(d.components):
        arcs = names[ci]
        m = len(arcs)
        seen_u = 0
        comp_unders = []
        for p in c.code:
            if p.over:
                over_arc[p.crossing] = arcs[seen_u % m]
            else:
                comp_unders.append((p, arcs[seen_u % m], arcs[(seen_u + 1) % m]))
                seen_u += 1
        unders.append(comp_unders)
    return _Arcs(names, over_arc, unders)


def wirtinger(d: FramedLinkDiagram, name: str = "") -> Presentation:
    """Link group: one generator per arc, one conjugation relator per crossing."""
    arcs = _arcs(d)
    gens = [g for comp in arcs.names for g in comp]
    rels = []
    for comp in arcs.unders:
        for p, incoming, outgoing in comp:
            k = Word.gen(arcs.over_arc[p.crossing], p.sign)
            rels.append(k.inverse() * Word.gen(incoming) * k * Word.gen(outgoing).inverse())
    return Presentation(tuple(gens), tuple(rels), name=name)


def meridians(d: FramedLinkDiagram) -> list[str]:
    return [comp[0] for comp in _arcs(d).names]


def longitude(d: FramedLinkDiagram, i: int) -> Word:
    """Seifert-framed longitude of component ``i``, based on its first arc."""
    arcs = _arcs(d)
    w = Word()
    for p, _, _ in arcs.unders[i]:
        w = w * Word.gen(arcs.over_arc[p.crossing], p.sign)
    return w * Word.gen(arcs.names[i][0], -d.writhe(i))


def surgery_group(d: FramedLinkDiagram, name: str = "") -> Presentation:
    """Fundamental group of the 3-manifold given by integral surgery on ``d``."""
    for i, c in enumerate(d.components):
        if c.role != "surgery":
            raise MissingFraming(f"component {i} has role {c.role!r}, not surgery")
        if c.framing is None:
            raise MissingFraming(f"component {i} has no framing")
    base = wirtinger(d)
    mers = meridians(d)
    extra = [Word.gen(mers[i], c.framing) * longitude(d, i) for i, c in enumerate(d.components)]
    return add_relators(base, extra, name=name)


# -- Kirby diagrams given algebraically ----------------------------------------------


@dataclass(frozen=True)
class KirbyAlgebraicData:
    dotted_names: tuple[str, ...]
    attaching_words: tuple[Word, ...] = ()
    comment: str = field(default="", compare=False)

    @property
    def dotted_count(self) -> int:
        return len(self.dotted_names)

    @classmethod
    def from_json(cls, data: Mapping) -> KirbyAlgebraicData:
        from .parsing import parse_relation
        names = tuple(data["dotted"])
        words = tuple(parse_relation(w, names) for w in data.get("attaching", []))
        return cls(names, words, data.get("comment", ""))


def kirby_pi1(k: KirbyAlgebraicData, name: str = "") -> Presentation:
    allowed = set(k.dotted_names)
    for w in k.attaching_words:
        stray = w.generators() - allowed
        if stray:
            raise UnknownGenerator(f"attaching word {w} uses {sorted(stray)}, not dotted circles")
    return Presentation(k.dotted_names, k.attaching_words, name=name)


# -- bundles over the circle and the Klein bottle ----------------------------------------


def fresh_name(taken: Iterable[str], stem: str = "s") -> str:
    taken = set(taken)
    if stem not in taken:
        return stem
    k = 1
    while f"{stem}{k}" in taken:
        k += 1
    return f"{stem}{k}"


def conjugation_relators(stable: str, fiber: Presentation, aut: Mapping[str, Word]) -> list[Word]:
    s = Word.gen(stable)
    return [s * Word.gen(g) * s.inverse() * aut[g].inverse() for g in fiber.generators]


def mapping_torus(fiber: Presentation, aut: Mapping[str, Word], stable: str | None = None,
                  limits: EnumerationLimits | None = None, name: str = "") -> Presentation:
    """``fiber x| Z``: adds a stable letter ``s`` with ``s g s^-1 = aut(g)``."""
    _check_aut(fiber, aut, limits)
    s = stable or fresh_name(fiber.generators, "s")
    if s in fiber.generators:
        raise ValueError(f"stable letter {s!r} clashes with a fiber generator")
    rels = fiber.relators + tuple(conjugation_relators(s, fiber, aut))
    return Presentation(fiber.generators + (s,), rels, name=name)


def klein_bundle(fiber: Presentation, aut_t: Mapping[str, Word], aut_x: Mapping[str, Word],
                 t: str = "t", x: str = "x", limits: EnumerationLimits | None = None,
                 name: str = "") -> Presentation:
    """Fiber bundle over the Klein bottle ``<t, x | t x t^-1 = x^-1>``."""
    _check_aut(fiber, aut_t, limits)
    _check_aut(fiber, aut_x, limits)
    if t in fiber.generators or x in fiber.generators:
        raise ValueError("base generator names clash with fiber generators")
    rels = (fiber.relators
            + tuple(conjugation_relators(t, fiber, aut_t))
            + tuple(conjugation_relators(x, fiber, aut_x))
            + (Word([(t, 1), (x, 1), (t, -1), (x, 1)]),))
    return Presentation(fiber.generators + (t, x), rels, name=name)


def _check_aut(fiber: Presentation, aut: Mapping[str, Word], limits: EnumerationLimits | None) -> None:
    gens = set(fiber.generators)
    missing = gens - set(aut)
    if missing:
        raise UnknownGenerator(f"automorphism has no image for {sorted(missing)}")
    extra = set(aut) - gens
    if extra:
        raise UnknownGenerator(f"automorphism maps non-fiber generators {sorted(extra)}")
    for g, w in aut.items():
        stray = w.generators() - gens
        if stray:
            raise UnknownGenerator(f"image of {g} uses {sorted(stray)} outside the fiber")

    if not fiber.relators:
        if not is_free_basis([aut[g] for g in fiber.generators], fiber.generators):
            warnings.warn(AutomorphismUnverified(
                "could not confirm the images form a free basis; treating the map as an automorphism"),
                stacklevel=3)
        return

    limits = limits or EnumerationLimits(max_cosets=100_000)
    table = enumerate_cosets(fiber, (), limits)
    if not isinstance(table, CosetTable):
        warnings.warn(AutomorphismUnverified(
            f"fiber did not enumerate ({table.reason}); relator preservation unchecked"), stacklevel=3)
        return
    # regular representation: a word is trivial iff it fixes the base coset
    for r in fiber.relators:
        img = substitute(r, aut)
        if table.trace(0, img) != 0:
            raise NotAnAutomorphism(f"image of relator {r} is {img}, which is nontrivial in the fiber")
    reached = _reachable(table, [aut[g] for g in fiber.generators])
    if reached != table.n_cosets:
        raise NotAnAutomorphism(
            f"images generate a subgroup of order {reached}, not the whole fiber of order {table.n_cosets}")


def _reachable(table: CosetTable, words: list[Word]) -> int:
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for c in frontier:
            for w in words:
                for d in (table.trace(c, w), _trace_inverse(table, c, w)):
                    if d not in seen:
                        seen.add(d)
                        nxt.append(d)
        frontier = nxt
    return len(seen)


def _trace_inverse(table: CosetTable, c: int, w: Word) -> int:
    return table.trace(c, w.inverse())


def is_free_basis(words: list[Word], generators: Iterable[str]) -> bool:
    """Length-reducing Nielsen moves; True once the tuple becomes the generators up to sign.

    A False answer only means the reduction did not finish the job.
    """
    gens = list(generators)
    ws = list(words)
    if len(ws) != len(gens):
        return False
    changed = True
    while changed:
        changed = False
        for i in range(len(ws)):
            for j in range(len(ws)):
                if i == j or not ws[j]:
                    continue
                for cand in (ws[i] * ws[j], ws[i] * ws[j].inverse(),
                             ws[j] * ws[i], ws[j].inverse() * ws[i]):
                    if len(cand) < len(ws[i]):
                        ws[i] = cand
                        changed = True
                        break
    letters = []
    for w in ws:
        if len(w) != 1:
            return False
        letters.append(w[0][0])
    return sorted(letters) == sorted(gens)


# -- twist spins -----------------------------------------------------------------


def twist_spun_trefoil(n: int) -> Presentation:
    """``G_n = < t, a | t^n = a^n, a t a = t a t >``."""
    if not isinstance(n, int) or n < 1:
        raise InvalidParameter(f"twist number must be a positive integer, got {n!r}")
    t, a = Word.gen("t"), Word.gen("a")
    rels = (t ** n * (a ** n).inverse(), a * t * a * (t * a * t).inverse())
    return Presentation(("t", "a"), rels, name=f"G{n}")


def strong_action_admissible(m: int) -> bool:
    """Whether the period-``m`` strong action exists for the order-three monodromy fibration."""
    if not isinstance(m, int) or m < 1:
        raise InvalidParameter(f"m must be a positive integer, got {m!r}")
    return m % 3 != 0


def hatx_quotient_order(n: int, m: int, limits: EnumerationLimits | None = None) -> int | None:
    """Order of ``G_n / <<t^m>>``, or ``None`` if enumeration hit its limits."""
    if not isinstance(m, int) or m < 1:
        raise InvalidParameter(f"m must be a positive integer, got {m!r}")
    g = twist_spun_trefoil(n)
    return group_order(add_relators(g, [Word.gen("t", m)]), limits)
