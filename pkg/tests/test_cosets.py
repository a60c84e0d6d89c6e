from __future__ import annotations

import time

import pytest

from scobcheck.builders import FramedLinkDiagram, surgery_group, twist_spun_trefoil
from scobcheck.cosets import (CosetTable, EnumerationLimits, Incomplete, enumerate_cosets, group_order,
                              index, permutation_rep, verify_table)
from scobcheck.errors import IncompleteTable
from scobcheck.models import FiniteTable, closure_order, element_order
from scobcheck.parsing import parse_presentation, parse_word
from scobcheck.presentations import add_relators
from scobcheck.words import Word

from conftest import FIXTURES

P = parse_presentation
Q8 = P("< u, v | u v u v^-1, v u v u^-1 >")
G = P("< t, a | t^3 = a^3, a t a = t a t >")


def perm_order(perm):
    n, k, cur = len(perm), 1, list(perm)
    ident = list(range(1, n + 1))
    while cur != ident:
        cur = [perm[c - 1] for c in cur]
        k += 1
    return k


def test_q8_table():
    t = enumerate_cosets(Q8)
    assert isinstance(t, CosetTable) and t.complete
    assert t.n_cosets == 8
    assert verify_table(t, Q8) == []


def test_g_mod_t3():
    assert group_order(add_relators(G, [Word.gen("t", 3)])) == 24


def test_subgroup_index():
    p = P("< a | a^3 >")
    assert index(p, [parse_word("a")]) == 1
    assert index(Q8, [parse_word("u")]) == 2
    t = enumerate_cosets(Q8, [parse_word("u")])
    assert t.trace(0, parse_word("u")) == 0


def test_g2_mod_t2_order_six():
    assert group_order(add_relators(twist_spun_trefoil(2), [Word.gen("t", 2)])) == 6


def test_infinite_group_is_incomplete_not_error():
    res = enumerate_cosets(G, (), EnumerationLimits(max_cosets=2000))
    assert isinstance(res, Incomplete) and not res.complete
    assert res.reason == "max_cosets"
    assert res.cosets_defined_peak <= 2000
    assert group_order(G, EnumerationLimits(max_cosets=2000)) is None


@pytest.mark.slow
def test_g_unknown_at_default_limits():
    assert EnumerationLimits().max_cosets == 1_000_000
    assert group_order(G, EnumerationLimits(max_cosets=1_000_000)) is None


def test_definition_limit():
    res = enumerate_cosets(G, (), EnumerationLimits(max_cosets=10**6, max_definitions=50))
    assert isinstance(res, Incomplete)


def test_limits_validation(monkeypatch):
    with pytest.raises(ValueError):
        EnumerationLimits(max_cosets=0)
    with pytest.raises(ValueError):
        EnumerationLimits(strategy="magic")
    monkeypatch.setenv("SCOBCHECK_MAX_COSETS", "1234")
    assert EnumerationLimits().max_cosets == 1234


def test_permutation_reps():
    perms = permutation_rep(enumerate_cosets(Q8))
    assert sorted(perms) == ["u", "v"]
    assert all(len(p) == 8 and perm_order(p) == 4 for p in perms.values())
    z3 = permutation_rep(enumerate_cosets(P("< a | a^3 >")))
    assert z3["a"] in ((2, 3, 1), (3, 1, 2))
    assert permutation_rep(enumerate_cosets(P("< a | a >"))) == {"a": (1,)}
    with pytest.raises(IncompleteTable):
        permutation_rep(enumerate_cosets(G, (), EnumerationLimits(max_cosets=100)))


def test_csv_export():
    csv = enumerate_cosets(P("< a | a^3 >")).to_csv().splitlines()
    assert csv[0] == "coset,a,a^-1"
    assert len(csv) == 4
    rows = [list(map(int, r.split(","))) for r in csv[1:]]
    assert [r[0] for r in rows] == [1, 2, 3]
    for c, fwd, back in rows:
        assert rows[fwd - 1][2] == c and rows[back - 1][1] == c


def test_verify_table_detects_corruption():
    t = enumerate_cosets(Q8)
    action = [list(r) for r in t.action]
    action[0][0], action[1][0] = action[1][0], action[0][0]
    broken = CosetTable(t.generators, tuple(tuple(r) for r in action), t.subgroup, t.strategy,
                        t.cosets_defined_peak, t.definitions)
    assert verify_table(broken, Q8)


COMPLETING = [
    Q8,
    add_relators(G, [Word.gen("t", 3)]),
    add_relators(G, [Word.gen("t", 4)]),
    add_relators(G, [Word.gen("t", 2)]),
    add_relators(G, [Word.gen("t")]),
    add_relators(twist_spun_trefoil(4), [Word.gen("t", 4)]),
    add_relators(twist_spun_trefoil(3), [Word.gen("t", 6)]),
    P("< a, b | a^2, b^3, (a b)^5 >"),
    P("< a, b | a^2, b^3, (a b)^4 >"),
    P("< a, b | a^8, b^2 a^4, a b a b^-1 >"),
    P("< x, y | x^2 = y^3, y^3 = (x y)^5, x^4 >"),
    surgery_group(FramedLinkDiagram.load(FIXTURES / "hopf_circles.json")),
    surgery_group(FramedLinkDiagram.load(FIXTURES / "trefoil_left.json")),
    P("< a, b, c | a^2, b^2, c^2, (a b)^3, (b c)^3, (a c)^2 >"),
]


@pytest.mark.parametrize("p", COMPLETING, ids=lambda p: str(p)[:40])
def test_strategy_invariance(p):
    hlt = enumerate_cosets(p, (), EnumerationLimits(strategy="hlt"))
    felsch = enumerate_cosets(p, (), EnumerationLimits(strategy="felsch"))
    assert hlt.n_cosets == felsch.n_cosets
    assert verify_table(hlt, p) == [] and verify_table(felsch, p) == []


def test_known_orders():
    assert [group_order(p) for p in COMPLETING] == [8, 24, 4, 2, 1, 96, 48, 60, 24, 16, 120, 8, 120, 24]


@pytest.mark.parametrize("p", COMPLETING[:8] + COMPLETING[11:], ids=lambda p: str(p)[:40])
def test_regular_representation_is_faithful(p):
    t = enumerate_cosets(p)
    perms = permutation_rep(t)
    ft = FiniteTable.from_presentation(p)
    assert ft.order == t.n_cosets
    # the permutation group generated by the images has order n
    from scobcheck.models import GroupModel

    class Perms(GroupModel):
        identity = tuple(range(1, t.n_cosets + 1))

        def mul(self, x, y):  # apply x then y, matching the right action on cosets
            return tuple(y[c - 1] for c in x)

        def inv(self, x):
            out = [0] * len(x)
            for i, c in enumerate(x, start=1):
                out[c - 1] = i
            return tuple(out)

    assert closure_order(Perms(), perms.values(), bound=1000) == t.n_cosets


def test_deterministic_output():
    p = COMPLETING[7]
    assert enumerate_cosets(p).to_csv() == enumerate_cosets(p).to_csv()


def test_each_acceptance_enumeration_is_fast():
    for p in COMPLETING[:7]:
        t0 = time.perf_counter()
        group_order(p)
        assert time.perf_counter() - t0 < 1.0


def test_q8_elements_have_order_dividing_four():
    ft = FiniteTable.from_presentation(Q8)
    assert sorted(element_order(ft, e) for e in ft.elements()) == [1, 2, 4, 4, 4, 4, 4, 4]
