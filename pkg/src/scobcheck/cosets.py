"""Todd-Coxeter coset enumeration.

Two strategies are provided and serve as oracles for each other:

* ``"hlt"`` -- Haselgrove-Leech-Trotter: scan-and-fill every relator at each
  coset in turn, with a lookahead pass (scan without defining, then compact)
  when the coset limit is reached.
* ``"felsch"`` -- define the first undefined table entry, then chase all
  consequences through the cyclic conjugates of the relators.

Cosets are numbered from 0 internally; coset 0 is the subgroup coset.
Exported forms (CSV, permutations) are 1-based.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field

from .errors import IncompleteTable, UnknownGenerator
from .presentations import Presentation
from .words import Word

UNDEF = -1
STRATEGIES = ("hlt", "felsch")


def _default_max_cosets() -> int:
    return int(os.environ.get("SCOBCHECK_MAX_COSETS", 1_000_000))


@dataclass(frozen=True)
class EnumerationLimits:
    max_cosets: int = field(default_factory=_default_max_cosets)
    max_definitions: int | None = None
    strategy: str = "hlt"

    def __post_init__(self):
        if self.max_cosets < 1:
            raise ValueError("max_cosets must be >= 1")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; expected one of {STRATEGIES}")

    def with_strategy(self, strategy: str) -> EnumerationLimits:
        return EnumerationLimits(self.max_cosets, self.max_definitions, strategy)


@dataclass(frozen=True)
class CosetTable:
    generators: tuple[str, ...]
    # action[c][2*i] = c . g_i, action[c][2*i+1] = c . g_i^-1  (0-based cosets)
    action: tuple[tuple[int, ...], ...]
    subgroup: tuple[Word, ...]
    strategy: str
    cosets_defined_peak: int
    definitions: int
    complete: bool = True

    @property
    def n_cosets(self) -> int:
        return len(self.action)

    def column(self, name: str, sign: int = 1) -> int:
        i = self.generators.index(name)
        return 2 * i if sign == 1 else 2 * i + 1

    def trace(self, coset: int, w: Word) -> int:
        c = coset
        for g, s in w:
            c = self.action[c][self.column(g, s)]
        return c

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = ["coset"]
        for g in self.generators:
            header += [g, f"{g}^-1"]
        writer.writerow(header)
        for c, row in enumerate(self.action):
            writer.writerow([c + 1] + [d + 1 for d in row])
        return buf.getvalue()


@dataclass(frozen=True)
class Incomplete:
    """Enumeration stopped at a limit. This is a normal outcome for infinite groups."""

    reason: str
    cosets_defined_peak: int
    definitions: int
    live_cosets: int
    strategy: str

    complete = False


class _LimitHit(Exception):
    pass


class _Enumerator:
    def __init__(self, p: Presentation, subgroup, limits: EnumerationLimits):
        self.gens = p.generators
        self.index = {g: i for i, g in enumerate(self.gens)}
        self.ncols = 2 * len(self.gens)
        self.relators = [self._encode(r) for r in p.relators if len(r)]
        self.subgroup = [self._encode(w) for w in subgroup]
        self.limits = limits
        self.table: list[list[int]] = [[UNDEF] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.peak = 1
        self.definitions = 0
        self.deductions: list[tuple[int, int]] = []
        self.track_deductions = limits.strategy == "felsch"
        if self.track_deductions:
            self._build_conjugates()

    def _encode(self, w: Word) -> list[int]:
        out = []
        for g, s in w:
            if g not in self.index:
                raise UnknownGenerator(f"generator {g!r} not in {list(self.gens)}")
            out.append(2 * self.index[g] + (0 if s == 1 else 1))
        return out

    def _build_conjugates(self):
        by_first: list[list[list[int]]] = [[] for _ in range(self.ncols)]
        seen = set()
        for r in self.relators:
            inv = [x ^ 1 for x in reversed(r)]
            for word in (r, inv):
                for k in range(len(word)):
                    rot = tuple(word[k:] + word[:k])
                    if rot not in seen:
                        seen.add(rot)
                        by_first[rot[0]].append(list(rot))
        self.conjugates = by_first

    # -- table primitives -------------------------------------------------

    def rep(self, c: int) -> int:
        p = self.parent
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def define(self, c: int, x: int) -> None:
        if self.live >= self.limits.max_cosets:
            raise _LimitHit("max_cosets")
        if self.limits.max_definitions is not None and self.definitions >= self.limits.max_definitions:
            raise _LimitHit("max_definitions")
        d = len(self.table)
        self.table.append([UNDEF] * self.ncols)
        self.parent.append(d)
        self.table[c][x] = d
        self.table[d][x ^ 1] = c
        self.live += 1
        self.definitions += 1
        if self.live > self.peak:
            self.peak = self.live
        if self.track_deductions:
            self.deductions.append((c, x))

    def scan_and_fill(self, c: int, w: list[int]) -> None:
        table = self.table
        n = len(w)
        f, i = c, 0
        b, j = c, n - 1
        while True:
            while i <= j:
                nxt = table[f][w[i]]
                if nxt == UNDEF:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != c:
                    self.coincidence(f, c)
                return
            while j >= i:
                nxt = table[b][w[j] ^ 1]
                if nxt == UNDEF:
                    break
                b = nxt
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                if self.track_deductions:
                    self.deductions.append((f, w[i]))
                return
            self.define(f, w[i])

    def scan(self, c: int, w: list[int]) -> None:
        table = self.table
        n = len(w)
        f, i = c, 0
        b, j = c, n - 1
        while i <= j:
            nxt = table[f][w[i]]
            if nxt == UNDEF:
                break
            f = nxt
            i += 1
        if i > j:
            if f != c:
                self.coincidence(f, c)
            return
        while j >= i:
            nxt = table[b][w[j] ^ 1]
            if nxt == UNDEF:
                break
            b = nxt
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif i == j:
            table[f][w[i]] = b
            table[b][w[i] ^ 1] = f
            if self.track_deductions:
                self.deductions.append((f, w[i]))

    def _merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        self.live -= 1
        queue.append(b)

    def coincidence(self, a: int, b: int) -> None:
        table = self.table
        queue: list[int] = []
        self._merge(a, b, queue)
        k = 0
        while k < len(queue):
            e = queue[k]
            k += 1
            row = table[e]
            for x in range(self.ncols):
                f = row[x]
                if f == UNDEF:
                    continue
                xi = x ^ 1
                table[f][xi] = UNDEF
                e1 = self.rep(e)
                f1 = self.rep(f)
                t = table[e1][x]
                if t != UNDEF:
                    self._merge(f1, t, queue)
                else:
                    t = table[f1][xi]
                    if t != UNDEF:
                        self._merge(e1, t, queue)
                    else:
                        table[e1][x] = f1
                        table[f1][xi] = e1
                        if self.track_deductions:
                            self.deductions.append((e1, x))

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def process_deductions(self) -> None:
        conj = self.conjugates
        while self.deductions:
            c, x = self.deductions.pop()
            if not self.alive(c):
                continue
            for w in conj[x]:
                self.scan(c, w)
                if not self.alive(c):
                    break
            if self.alive(c):
                d = self.table[c][x]
                if d != UNDEF:
                    d = self.rep(d)
                    for w in conj[x ^ 1]:
                        self.scan(d, w)
                        if not self.alive(d):
                            break

    def compact(self) -> dict[int, int]:
        """Renumber live cosets 0..n-1 preserving order; return old -> new."""
        remap = {}
        for c in range(len(self.table)):
            if self.parent[c] == c:
                remap[c] = len(remap)
        if len(remap) == len(self.table):
            return remap
        new_table = []
        for c in remap:
            new_table.append([UNDEF if d == UNDEF else remap[self.rep(d)] for d in self.table[c]])
        self.table = new_table
        self.parent = list(range(len(new_table)))
        self.deductions = [(remap[c], x) for c, x in self.deductions if c in remap]
        return remap

    # -- strategies -------------------------------------------------------

    def lookahead(self) -> None:
        for c in range(len(self.table)):
            if not self.alive(c):
                continue
            for r in self.relators:
                self.scan(c, r)
                if not self.alive(c):
                    break

    def run_hlt(self) -> str | None:
        for w in self.subgroup:
            try:
                self.scan_and_fill(0, w)
            except _LimitHit as exc:
                return str(exc)
        alpha = 0
        while True:
            try:
                while alpha < len(self.table):
                    if self.alive(alpha):
                        for r in self.relators:
                            if not self.alive(alpha):
                                break
                            self.scan_and_fill(alpha, r)
                        if self.alive(alpha):
                            row = self.table[alpha]
                            for x in range(self.ncols):
                                if row[x] == UNDEF:
                                    self.define(alpha, x)
                    alpha += 1
                if self._all_defined():
                    return None
                alpha = 0
            except _LimitHit as exc:
                if str(exc) != "max_cosets":
                    return str(exc)
                before = self.live
                self.lookahead()
                remap = self.compact()
                if self.live >= before or self.live >= self.limits.max_cosets:
                    return "max_cosets"
                alpha = _next_live_index(remap, alpha)

    def run_felsch(self) -> str | None:
        try:
            for w in self.subgroup:
                self.scan_and_fill(0, w)
                self.process_deductions()
            while True:
                alpha = 0
                while alpha < len(self.table):
                    x = 0
                    while x < self.ncols and self.alive(alpha):
                        if self.table[alpha][x] == UNDEF:
                            self.define(alpha, x)
                            self.process_deductions()
                        x += 1
                    alpha += 1
                    if len(self.table) > 2 * self.live + 1024:
                        remap = self.compact()
                        alpha = _next_live_index(remap, alpha)
                if self._all_defined() and self._relators_close():
                    return None
                # a consequence slipped through; sweep every relator once more
                for c in range(len(self.table)):
                    if self.alive(c):
                        for r in self.relators:
                            self.scan_and_fill(c, r)
                            self.process_deductions()
                            if not self.alive(c):
                                break
        except _LimitHit as exc:
            return str(exc)

    def _all_defined(self) -> bool:
        return all(UNDEF not in self.table[c] for c in range(len(self.table)) if self.alive(c))

    def _relators_close(self) -> bool:
        for c in range(len(self.table)):
            if not self.alive(c):
                continue
            for r in self.relators:
                d = c
                for x in r:
                    d = self.rep(self.table[d][x])
                if d != c:
                    return False
        return True


def _next_live_index(remap: dict[int, int], alpha: int) -> int:
    for old, new in remap.items():
        if old >= alpha:
            return new
    return len(remap)


def enumerate_cosets(p: Presentation, subgroup=(), limits: EnumerationLimits | None = None):
    """Enumerate the cosets of ``<subgroup>`` in the group presented by ``p``.

    Returns a :class:`CosetTable` whose size is the index, or an
    :class:`Incomplete` value if a limit was hit. The returned table has
    already passed :func:`verify_table`.
    """
    limits = limits or EnumerationLimits()
    subgroup = tuple(subgroup)
    for w in subgroup:
        p.check_word(w)
    e = _Enumerator(p, subgroup, limits)
    reason = e.run_felsch() if limits.strategy == "felsch" else e.run_hlt()
    if reason is not None:
        return Incomplete(reason, e.peak, e.definitions, e.live, limits.strategy)
    e.compact()
    table = CosetTable(
        generators=p.generators,
        action=tuple(tuple(row) for row in e.table),
        subgroup=subgroup,
        strategy=limits.strategy,
        cosets_defined_peak=e.peak,
        definitions=e.definitions,
    )
    problems = verify_table(table, p)
    if problems:
        raise AssertionError(f"enumeration produced an invalid table: {problems[0]}")
    return table


def verify_table(table: CosetTable, p: Presentation) -> list[str]:
    """Independent check of a finished table. Returns a list of problems (empty = valid)."""
    problems = []
    n = table.n_cosets
    gens = table.generators
    for i, g in enumerate(gens):
        fwd = [row[2 * i] for row in table.action]
        bwd = [row[2 * i + 1] for row in table.action]
        if sorted(fwd) != list(range(n)):
            problems.append(f"{g} does not act as a permutation")
            continue
        for c in range(n):
            if bwd[fwd[c]] != c:
                problems.append(f"{g}^-1 column is not inverse to {g} at coset {c + 1}")
                break
    if problems:
        return problems
    perms = {g: [row[2 * i] for row in table.action] for i, g in enumerate(gens)}
    invs = {g: [row[2 * i + 1] for row in table.action] for i, g in enumerate(gens)}
    for r in p.relators:
        for c in range(n):
            d = c
            for g, s in r:
                d = perms[g][d] if s == 1 else invs[g][d]
            if d != c:
                problems.append(f"relator {r} does not close at coset {c + 1}")
                break
    for w in table.subgroup:
        d = 0
        for g, s in w:
            d = perms[g][d] if s == 1 else invs[g][d]
        if d != 0:
            problems.append(f"subgroup word {w} does not fix coset 1")
    return problems


def group_order(p: Presentation, limits: EnumerationLimits | None = None) -> int | None:
    """Order of the group, or ``None`` when enumeration hit its limits."""
    result = enumerate_cosets(p, (), limits)
    return result.n_cosets if isinstance(result, CosetTable) else None


def index(p: Presentation, subgroup, limits: EnumerationLimits | None = None) -> int | None:
    result = enumerate_cosets(p, subgroup, limits)
    return result.n_cosets if isinstance(result, CosetTable) else None


def permutation_rep(table) -> dict[str, tuple[int, ...]]:
    """Generator -> permutation of ``1..n`` in one-line notation (entry k is the image of k+1)."""
    if not isinstance(table, CosetTable):
        raise IncompleteTable("permutation representation needs a complete coset table")
    return {g: tuple(row[2 * i] + 1 for row in table.action)
            for i, g in enumerate(table.generators)}
