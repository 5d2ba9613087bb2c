"""Spans, brute-force amalgam search, constructive amalgamation, and the
one-sided route through essentialization."""

import math

import pytest

from blcalc.amalgam import (
    Span,
    UnsupportedShapeError,
    amalgamate_constructive,
    apply_completion,
    find_amalgam_bruteforce,
    is_essential_span,
    make_span,
    one_sided_amalgam,
    spans_commute,
    universe_chains,
)
from blcalc.core import chain, enumerate_elements, fin_luk
from blcalc.dsl import parse_chain, parse_class_expr, pretty_chain
from blcalc.maps import apply_map, enumerate_embeddings, verify_embedding

ALL_WAJSBERG = parse_class_expr("[U]")


def w_span(g, a, b):
    return make_span(parse_chain(f"W{g}"), parse_chain(f"W{a}"), parse_chain(f"W{b}"))


def test_essential_span_examples():
    w1 = parse_chain("W1")
    g = parse_chain("W1+W1")
    into_first, into_last = sorted(
        enumerate_embeddings(w1, g), key=lambda m: m.index_map
    )
    ident = enumerate_embeddings(w1, w1)[0]
    assert is_essential_span(Span(w1, into_first, ident))
    assert not is_essential_span(Span(w1, ident, into_first))
    triv = chain(())
    s = make_span(triv, parse_chain("W1"), parse_chain("Z"))
    assert not is_essential_span(s)
    s = make_span(w1, parse_chain("W2"), g, right_index=1)
    assert is_essential_span(s)


def test_bruteforce_search_finds_lcm_chain():
    am = find_amalgam_bruteforce(w_span(1, 2, 3), ALL_WAJSBERG, max_index=1, max_k=7)
    assert pretty_chain(am.target) == "W6"
    assert spans_commute(w_span(1, 2, 3), am)


def test_bruteforce_identity_span():
    a = parse_chain("W2+Z")
    ident = enumerate_embeddings(a, a)[0]
    s = Span(a, ident, ident)
    am = find_amalgam_bruteforce(s, parse_class_expr("[W2 Z]"), max_index=2, max_k=2)
    assert am.target == a


def test_bruteforce_none_within_bounds():
    s = make_span(chain(()), parse_chain("W1"), parse_chain("Z"))
    universe = parse_class_expr("[W1]|[Z]")
    # the universe is tiny and kind-exhaustive under these bounds
    assert [pretty_chain(c) for c in universe_chains(universe, 2, 3)] == [
        "T",
        "W1",
        "Z",
    ]
    assert find_amalgam_bruteforce(s, universe, max_index=2, max_k=3) is None


def test_universe_enumeration_order():
    chains = universe_chains(parse_class_expr("[(W2 Z)*]"), 2, 2)
    names = [pretty_chain(c) for c in chains]
    assert names[0] == "T"
    assert names.index("W1") < names.index("W2") < names.index("Z")
    assert all(c.index <= 2 for c in chains)
    assert "W1+Z" in names and "Z+W2" in names


def test_constructive_lcm():
    s = w_span(1, 2, 3)
    am = amalgamate_constructive(s, ALL_WAJSBERG)
    assert pretty_chain(am.target) == "W6"
    assert spans_commute(s, am)
    assert verify_embedding(am.left) and verify_embedding(am.right)


def test_constructive_identity_span():
    a = parse_chain("W2+W1")
    ident = enumerate_embeddings(a, a)[0]
    am = amalgamate_constructive(Span(a, ident, ident), parse_class_expr("[W2 W1]"))
    assert am.target == a


def test_constructive_padding_example():
    # apex sits in the last component of one side and all of the other
    w1 = parse_chain("W1")
    g = parse_chain("W1+W1")
    into_last = [m for m in enumerate_embeddings(w1, g) if m.index_map == (1,)][0]
    ident = enumerate_embeddings(w1, w1)[0]
    s = Span(w1, into_last, ident)
    am = amalgamate_constructive(s, parse_class_expr("[W1*]"))
    assert pretty_chain(am.target) == "W1+W1"
    assert spans_commute(s, am)
    # the oracle agrees
    oracle = find_amalgam_bruteforce(s, parse_class_expr("[W1*]"), max_index=2, max_k=1)
    assert oracle.target == am.target


def test_constructive_mixed_components_stay_separate():
    # without an anchor, finite and cancellative components go to separate
    # slots, staying inside the group-star class
    s = make_span(chain(()), parse_chain("W2"), parse_chain("Z"))
    universe = parse_class_expr("[(W2 Z)*]")
    am = amalgamate_constructive(s, universe)
    assert pretty_chain(am.target) == "W2+Z"
    assert spans_commute(s, am)


def test_constructive_lex_transport():
    # cancellative apex into a lexicographic component: scales balance
    z = parse_chain("Z")
    wo = parse_chain("Wo2")
    left = enumerate_embeddings(z, wo, scale_cap=3)[1]  # scale 2 into the radical
    right = enumerate_embeddings(z, z, scale_cap=3)[2]  # scale 3
    s = Span(z, left, right)
    am = amalgamate_constructive(s, parse_class_expr("[Wo2]"))
    assert pretty_chain(am.target) == "Wo2"
    assert spans_commute(s, am)


def test_constructive_rejects_outside_universe():
    s = w_span(1, 2, 3)
    with pytest.raises(UnsupportedShapeError):
        amalgamate_constructive(s, parse_class_expr("[W2]"))


def test_one_sided_collapses_cancellative_leg():
    s = make_span(chain(()), parse_chain("W1"), parse_chain("Z"))
    am = one_sided_amalgam(s, parse_class_expr("[W1]|[Z]"))
    assert am.one_sided
    assert pretty_chain(am.target) == "W1"
    # the right completion collapses everything to the top
    from blcalc.core import element

    z = parse_chain("Z")
    assert apply_completion(am.right, element(z, 0, -3)).is_top


def test_one_sided_on_essential_span_is_two_sided():
    w1 = parse_chain("W1")
    g = parse_chain("W1+W1")
    into_last = [m for m in enumerate_embeddings(w1, g) if m.index_map == (1,)][0]
    ident = enumerate_embeddings(w1, w1)[0]
    s = Span(w1, into_last, ident)
    am = one_sided_amalgam(s, parse_class_expr("[W1*]"))
    assert not am.one_sided


def test_one_sided_quotient_then_amalgamate():
    # right leg lands in the first component; its tail gets collapsed first
    w1 = parse_chain("W1")
    g = parse_chain("W1+W1")
    embeddings = sorted(enumerate_embeddings(w1, g), key=lambda m: m.index_map)
    into_first, into_last = embeddings
    s = Span(w1, into_last, into_first)
    am = one_sided_amalgam(s, parse_class_expr("[W1*]"))
    assert am.one_sided
    assert spans_commute(s, am)
    oracle_target = find_amalgam_bruteforce(
        Span(w1, into_last, enumerate_embeddings(w1, w1)[0]),
        parse_class_expr("[W1*]"),
        max_index=2,
        max_k=1,
    ).target
    assert am.target == oracle_target


@pytest.mark.parametrize("g,a,b", [(1, 2, 3), (2, 2, 4), (1, 1, 5), (3, 3, 6)])
def test_oracle_constructive_agreement(g, a, b):
    s = w_span(g, a, b)
    constructed = amalgamate_constructive(s, ALL_WAJSBERG)
    lcm = math.lcm(a, b)
    assert constructed.target.components == (fin_luk(lcm),)
    oracle = find_amalgam_bruteforce(s, ALL_WAJSBERG, max_index=1, max_k=lcm)
    assert oracle.target == constructed.target


def test_every_span_in_a_catalog_node_one_sided_amalgamates():
    # the decisive property of the classified classes: essential spans have
    # amalgams, so arbitrary spans have one-sided amalgams after collapsing
    import random

    from blcalc.classify import enumerate_catalog
    from blcalc.maps import is_essential_embedding

    rng = random.Random(4242)
    nodes = [e for e, _, _ in enumerate_catalog("bh", 1) if e is not None]
    checked = 0
    for node in nodes:
        pool = [c for c in universe_chains(node, 2, 2) if not c.is_trivial]
        members = pool + [chain(())]
        for _ in range(12):
            b = rng.choice(pool)
            c = rng.choice(pool)
            apex = rng.choice(members)
            lefts = enumerate_embeddings(apex, b, scale_cap=2)
            rights = enumerate_embeddings(apex, c, scale_cap=2)
            if not lefts or not rights:
                continue
            s = Span(apex, rng.choice(lefts), rng.choice(rights))
            am = one_sided_amalgam(s, node, max_index=6, max_k=4, scale_cap=4)
            assert spans_commute(s, am, caps=2)
            from blcalc.classes import member

            assert member(am.target, node)
            assert verify_embedding(am.left, caps=2)
            if is_essential_span(s):
                assert not am.one_sided
            checked += 1
    assert checked > 100


def test_amalgam_completions_verified():
    s = w_span(2, 4, 6)
    am = amalgamate_constructive(s, ALL_WAJSBERG)
    for x in enumerate_elements(s.apex, 3):
        assert apply_map(am.left, apply_map(s.left, x)) == apply_completion(
            am.right, apply_map(s.right, x)
        )
