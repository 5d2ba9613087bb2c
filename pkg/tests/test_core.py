"""Element model, chain operations, and axiom checking."""

from fractions import Fraction

import pytest

from blcalc.core import (
    CANC_Z,
    STD_UNIT,
    TOP,
    TRIVIAL,
    RawChain,
    chain,
    chain_op,
    check_axioms,
    component_op,
    element,
    enumerate_elements,
    fin_luk,
    lex_omega,
    order_le,
)
from blcalc.decompose import flatten
from blcalc.dsl import parse_chain


def test_component_op_fin_luk():
    # direct evaluation of the truncated-addition formulas
    assert component_op(fin_luk(2), "mul", 1, 1) == 0
    assert component_op(fin_luk(2), "imp", 1, 0) == 1
    assert component_op(fin_luk(2), "imp", 0, 1) == 2
    assert component_op(fin_luk(3), "mul", 2, 2) == 1


def test_component_op_top_is_unit():
    for kind, top in [
        (fin_luk(4), 4),
        (CANC_Z, 0),
        (lex_omega(2), (2, 0)),
        (STD_UNIT, Fraction(1)),
    ]:
        for a in _window(kind):
            assert component_op(kind, "mul", a, top) == a
            assert component_op(kind, "imp", a, top) == top


def _window(kind, cap=3):
    from blcalc.core import _window_values

    return _window_values(kind, cap)


def test_component_op_lex():
    assert component_op(lex_omega(1), "mul", (0, 2), (1, -1)) == (0, 1)
    assert component_op(lex_omega(1), "imp", (0, 2), (0, 5)) == (1, 0)
    assert component_op(lex_omega(2), "mul", (1, 3), (1, 4)) == (0, 7)


def test_component_op_cancellative_residual():
    # largest z <= 0 with -1 + z <= -3
    assert component_op(CANC_Z, "imp", -1, -3) == -2
    best = max(z for z in range(-10, 1) if -1 + z <= -3)
    assert best == -2


def test_component_op_rejects_out_of_range():
    with pytest.raises(ValueError):
        component_op(fin_luk(2), "mul", 3, 0)
    with pytest.raises(ValueError):
        component_op(lex_omega(2), "mul", (0, -1), (0, 0))
    with pytest.raises(ValueError):
        component_op(CANC_Z, "mul", 1, 0)


def test_chain_op_across_components():
    c = parse_chain("W1+W1")
    x = element(c, 0, 0)
    y = element(c, 1, 0)
    assert chain_op(c, "mul", x, y) == x
    assert chain_op(c, "imp", x, y) == TOP
    assert chain_op(c, "imp", y, x) == x
    assert chain_op(c, "meet", x, y) == x
    assert chain_op(c, "join", x, y) == y


def test_chain_op_imp_reflexive():
    c = parse_chain("L2+Z+W3")
    for x in enumerate_elements(c, 2):
        assert chain_op(c, "imp", x, x) == TOP


def test_chain_op_cross_component_imp():
    c = parse_chain("L2+Z")
    x = element(c, 1, -3)
    y = element(c, 0, 1)
    assert chain_op(c, "imp", x, y) == y


def test_order_le():
    c = parse_chain("W2+Wo1")
    elems = enumerate_elements(c, 3)
    for x in elems:
        assert order_le(c, x, TOP)
    assert order_le(c, element(c, 0, 1), element(c, 1, (0, 5)))
    lex = parse_chain("Wo1")
    assert order_le(lex, element(lex, 0, (0, 5)), element(lex, 0, (1, -9)))


def test_order_consistent_with_meet():
    c = parse_chain("W2+Z")
    elems = enumerate_elements(c, 3)
    for x in elems:
        for y in elems:
            assert order_le(c, x, y) == (chain_op(c, "meet", x, y) == x)


@pytest.mark.parametrize(
    "text", ["W3", "Wo2", "Z", "U", "W1+W1", "L2+Z", "W2+Wo1+W1", "Lo2+W2"]
)
def test_residuation_on_windows(text):
    c = parse_chain(text)
    elems = enumerate_elements(c, 2)
    for x in elems:
        for y in elems:
            for z in elems:
                lhs = order_le(c, chain_op(c, "mul", x, y), z)
                rhs = order_le(c, x, chain_op(c, "imp", y, z))
                assert lhs == rhs, (x, y, z)


@pytest.mark.parametrize("text", ["W3", "Wo2", "Z", "U", "L2+Z+W1"])
def test_divisibility_prelinearity_on_windows(text):
    c = parse_chain(text)
    elems = enumerate_elements(c, 2)
    for x in elems:
        for y in elems:
            div = chain_op(c, "mul", x, chain_op(c, "imp", x, y))
            assert div == chain_op(c, "meet", x, y)
            pre = chain_op(
                c, "join", chain_op(c, "imp", x, y), chain_op(c, "imp", y, x)
            )
            assert pre == TOP


@pytest.mark.parametrize("text,expect", [("W3", True), ("Wo2", True)])
def test_mv_identity_on_windows(text, expect):
    c = parse_chain(text)
    elems = enumerate_elements(c, 2)
    holds = all(
        chain_op(c, "imp", chain_op(c, "imp", x, y), y) == chain_op(c, "join", x, y)
        for x in elems
        for y in elems
    )
    assert holds == expect


def test_cancellativity_on_windows():
    z = parse_chain("Z")
    elems = enumerate_elements(z, 4)
    for x in elems:
        for y in elems:
            assert chain_op(z, "imp", x, chain_op(z, "mul", x, y)) == y


def test_enumerate_elements():
    assert len(enumerate_elements(parse_chain("W2"), 5)) == 3
    assert enumerate_elements(chain(()), 3) == [TOP]
    zs = enumerate_elements(parse_chain("Z"), 2)
    assert [x.value for x in zs[:-1]] == [-2, -1] and zs[-1] == TOP
    u = enumerate_elements(parse_chain("U"), 3)
    assert element(parse_chain("U"), 0, Fraction(0)) in u
    assert all(
        x.is_top or x.value.denominator <= 3 for x in u
    )
    lex = enumerate_elements(parse_chain("Wo1"), 2)
    assert element(parse_chain("Wo1"), 0, (0, 0)) in lex  # component bottom


def test_check_axioms_luk():
    report = check_axioms(flatten(parse_chain("L2")))
    assert report.is_bl_chain and report.is_mv_chain
    assert not report.cancellativity


def test_check_axioms_trivial():
    t = RawChain(size=1, mul=((0,),), imp=((0,),), bottom=True)
    report = check_axioms(t)
    assert report.is_bl_chain and report.mv_identity and report.cancellativity


def test_check_axioms_residuation_failure():
    t = flatten(parse_chain("L2"))
    imp = [list(r) for r in t.imp]
    imp[0][0] = 0  # 0 -> 0 must be top
    bad = RawChain(size=t.size, mul=t.mul, imp=tuple(tuple(r) for r in imp),
                   bottom=True)
    report = check_axioms(bad)
    assert not report.residuation
    assert any(law == "residuation" for law, _ in report.failures)


def test_check_axioms_rejects_malformed():
    with pytest.raises(ValueError):
        RawChain(size=2, mul=((0,),), imp=((0, 0), (0, 1)))


def test_raw_chain_json_round_trip():
    t = flatten(parse_chain("L1+W2"))
    assert RawChain.from_json(t.to_json()) == t


def test_chain_op_agrees_with_flatten_tables():
    # structural operations and tabulated operations coincide bit-exactly
    c = parse_chain("L1+W2+W1")
    t = flatten(c)
    from blcalc.decompose import finite_elements

    elems = finite_elements(c)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            assert elems.index(chain_op(c, "mul", x, y)) == t.mul[i][j]
            assert elems.index(chain_op(c, "imp", x, y)) == t.imp[i][j]


def test_chain_validation():
    with pytest.raises(ValueError):
        chain((CANC_Z,), bottom=True)  # BL chain needs a bounded first component
    assert chain((TRIVIAL, fin_luk(1), TRIVIAL)).components == (fin_luk(1),)


def test_element_mismatch_rejected():
    c1 = parse_chain("W1")
    c2 = parse_chain("W2+W2")
    x = element(c2, 1, 1)
    with pytest.raises(ValueError):
        chain_op(c1, "mul", x, x)
