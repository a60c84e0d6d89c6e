from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from scobcheck.abelian import abelian_invariants
from scobcheck.builders import FramedLinkDiagram, KirbyAlgebraicData, kirby_pi1, twist_spun_trefoil, wirtinger
from scobcheck.cosets import group_order
from scobcheck.errors import UnknownGenerator
from scobcheck.matrix import Matrix
from scobcheck.parsing import parse_presentation, parse_word
from scobcheck.presentations import (Presentation, add_relators, cyclic_group, free_group,
                                     presentation_from_relations, relator_matrix, simplify,
                                     simplify_with_map)
from scobcheck.words import Word

from conftest import FIXTURES, words

P = parse_presentation
G = P("< t, a | t^3 = a^3, a t a = t a t >")
Q8 = P("< u, v | u v u = v, v u v = u >")
KIRBY = P("< x, y, t | x^-1 y t^-1 x^-1 t, x^-1 y x y, t x t^-1 y^-1 >")


def test_relators_are_cyclically_reduced():
    p = Presentation(("a", "b"), (parse_word("b a b^-1"),))
    assert p.relators == (Word.gen("a"),)


def test_unknown_generator_rejected():
    with pytest.raises(UnknownGenerator):
        Presentation(("a",), (parse_word("a b"),))
    with pytest.raises(UnknownGenerator):
        add_relators(G, [parse_word("z")])


def test_bad_generator_names():
    with pytest.raises(ValueError):
        Presentation(("1a",), ())
    with pytest.raises(ValueError):
        Presentation(("a", "a"), ())


def test_add_relators():
    assert group_order(add_relators(Q8, [parse_word("u")])) == 2
    assert group_order(add_relators(G, [Word.gen("t", 3)])) == 24
    assert add_relators(G, []) == G
    # the original is untouched
    assert G.n_relators == 2


def test_equality_is_literal_multiset():
    a = P("< a, b | a^2, b^3 >")
    assert a == P("< a, b | b^3, a^2 >")
    assert a != P("< a, b | a^2, b^3, a^2 >")
    assert a != P("< a, b | a^2, b^-3 >")


def test_relator_matrix():
    assert relator_matrix(G) == Matrix([[3, -3], [-1, 1]])
    assert relator_matrix(free_group(["a", "b"])).shape == (0, 2)
    assert relator_matrix(Q8) == Matrix([[2, 0], [0, 2]])


def test_simplify_kirby_relations_to_two_generators():
    s = simplify(KIRBY)
    assert (s.n_generators, s.n_relators) == (2, 2)
    assert abelian_invariants(s).as_dict() == {"free_rank": 1, "torsion": []}


def test_simplify_kills_length_one_relator():
    assert simplify(P("< a, b | b >")) == P("< a | >")


def test_simplify_trefoil_wirtinger_to_braid_shape():
    d = FramedLinkDiagram.load(FIXTURES / "trefoil_right.json")
    w = wirtinger(d)
    assert (w.n_generators, w.n_relators) == (3, 3)
    s = simplify(w)
    assert s.n_generators == 2 and s.n_relators == 1
    assert len(s.relators[0]) == 6


def test_simplify_is_deterministic_and_monotone():
    for p in (KIRBY, G, Q8, twist_spun_trefoil(5)):
        s1, s2 = simplify(p), simplify(p)
        assert s1 == s2
        assert s1.n_generators <= p.n_generators
        assert s1.n_relators <= p.n_relators


def test_simplify_budget_zero():
    res = simplify_with_map(KIRBY, budget=0)
    assert res.presentation == KIRBY
    assert res.exhausted


def test_elimination_map_transports_quotients():
    res = simplify_with_map(KIRBY)
    extra = res.transport(Word.gen("t", 3))
    assert group_order(add_relators(res.presentation, [extra])) == 24
    assert group_order(add_relators(KIRBY, [Word.gen("t", 3)])) == 24


FIXTURE_QUOTIENTS = [
    (Q8, [], 8),
    (G, [Word.gen("t", 3)], 24),
    (KIRBY, [Word.gen("t", 3)], 24),
    (twist_spun_trefoil(2), [Word.gen("t", 2)], 6),
    (twist_spun_trefoil(4), [Word.gen("t", 4)], 96),
    (P("< a, b, c | a b = c, b c = a, c a = b >"), [], None),
]


@pytest.mark.parametrize("p,extra,order", FIXTURE_QUOTIENTS)
def test_simplify_preserves_invariants_and_orders(p, extra, order):
    res = simplify_with_map(p)
    assert abelian_invariants(res.presentation) == abelian_invariants(p)
    if order is not None:
        moved = [res.transport(w) for w in extra]
        assert group_order(add_relators(res.presentation, moved)) == order


def test_adding_relators_divides_order():
    chain = [P("< a, b | a^4, b^2, b a b^-1 a >")]
    chain.append(add_relators(chain[-1], [parse_word("a^2")]))
    chain.append(add_relators(chain[-1], [parse_word("a")]))
    chain.append(add_relators(chain[-1], [parse_word("b")]))
    orders = [group_order(p) for p in chain]
    assert orders == [8, 4, 2, 1]
    assert all(x % y == 0 for x, y in zip(orders, orders[1:]))


@given(st.lists(words(max_size=8), max_size=4))
def test_relator_matrix_shape(rels):
    p = Presentation(("a", "b", "c"), tuple(rels))
    assert relator_matrix(p).shape == (len(p.relators), 3)


@given(st.lists(words(max_size=8), max_size=4))
def test_simplify_preserves_abelianization(rels):
    p = Presentation(("a", "b", "c"), tuple(rels))
    assert abelian_invariants(simplify(p)) == abelian_invariants(p)


def test_helpers():
    assert group_order(cyclic_group(7)) == 7
    p = presentation_from_relations(["a"], [(Word.gen("a", 3), Word())])
    assert p == cyclic_group(3)
    k = kirby_pi1(KirbyAlgebraicData(("x", "y", "t"), KIRBY.relators))
    assert k == KIRBY
