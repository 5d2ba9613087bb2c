"""Text syntax for chains, class expressions, and elements.

Chains:       comp ('+' comp)*       e.g.  L2+W1+Z
Classes:      sumclass ('|' sumclass)*, sumclass '[' item+ ']',
              item = comp '*'? | '(' comp+ ')' '*'   e.g.  [W2* Z] | [L1]
Components:   W<k>, Wo<k>, Z, U, T and, leading a sum only, the
              designated-bounds forms L<k>, Lo<k>, UM.
Elements:     'top' or '<component>:<local>' with local an integer, a pair
              'a,b', or a fraction 'p/q'.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .core import (
    CANC_Z,
    FIN,
    LEX,
    STD_UNIT,
    TRIVIAL,
    UNIT,
    Chain,
    Element,
    Kind,
    TOP,
    chain,
    element,
)
from .classes import Atom, ClassExpr, Item, SumClass, class_expr


class DSLError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<comp>UM|Lo\d+|L\d+|Wo\d+|W\d+|Z|U|T)|(?P<punct>[\[\]()*|+]))"
)

_BOTTOM_PREFIXES = ("UM", "Lo", "L")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise DSLError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((m.group("comp") or m.group("punct"), m.start()))
        pos = m.end()
    return tokens


def _comp_to_atom(token: str, pos: int) -> Atom:
    for prefix, tag in (("Lo", LEX), ("UM", UNIT), ("L", FIN)):
        if token == "UM" and prefix == "UM":
            return Atom(STD_UNIT, bottom=True)
        if prefix != "UM" and token.startswith(prefix) and token[len(prefix):].isdigit():
            k = int(token[len(prefix):])
            if k < 1:
                raise DSLError("component parameter must be >= 1", pos)
            return Atom(Kind(tag, k), bottom=True)
    if token == "Z":
        return Atom(CANC_Z)
    if token == "U":
        return Atom(STD_UNIT)
    if token == "T":
        return Atom(TRIVIAL)
    for prefix, tag in (("Wo", LEX), ("W", FIN)):
        if token.startswith(prefix) and token[len(prefix):].isdigit():
            k = int(token[len(prefix):])
            if k < 1:
                raise DSLError("component parameter must be >= 1", pos)
            return Atom(Kind(tag, k))
    raise DSLError(f"unknown component {token!r}", pos)


def parse_chain(text: str) -> Chain:
    """Parse an ordinal-sum chain such as ``L2+W1+Z`` or ``T``."""
    tokens = _tokenize(text)
    if not tokens:
        raise DSLError("empty chain", 0)
    expect_comp = True
    atoms = []
    for tok, pos in tokens:
        if expect_comp:
            if tok in "[]()*|+":
                raise DSLError(f"expected a component, got {tok!r}", pos)
            atoms.append((_comp_to_atom(tok, pos), pos))
            expect_comp = False
        else:
            if tok != "+":
                raise DSLError(f"expected '+', got {tok!r}", pos)
            expect_comp = True
    if expect_comp:
        raise DSLError("dangling '+'", tokens[-1][1])
    for a, pos in atoms[1:]:
        if a.bottom:
            raise DSLError("designated-bounds component after the first", pos)
    kinds = [a.kind for a, _ in atoms]
    return chain(kinds, bottom=atoms[0][0].bottom)


def parse_class_expr(text: str) -> ClassExpr:
    """Parse a bracket/star class expression such as ``[W1* Z] | [Z]``."""
    tokens = _tokenize(text)
    if not tokens:
        raise DSLError("empty class expression", 0)
    i = 0

    def peek():
        return tokens[i][0] if i < len(tokens) else None

    def pos_now():
        return tokens[i][1] if i < len(tokens) else len(text)

    def take(expected=None):
        nonlocal i
        if i >= len(tokens):
            raise DSLError(f"unexpected end of input, expected {expected}", len(text))
        tok, pos = tokens[i]
        if expected is not None and tok != expected:
            raise DSLError(f"expected {expected!r}, got {tok!r}", pos)
        i += 1
        return tok, pos

    def parse_item() -> Item:
        nonlocal i
        if peek() == "(":
            take("(")
            atoms = []
            while peek() != ")":
                tok, pos = take()
                if tok in "[]()*|+":
                    raise DSLError(f"expected a component, got {tok!r}", pos)
                atom = _comp_to_atom(tok, pos)
                if atom.bottom:
                    raise DSLError("designated-bounds atom inside a group", pos)
                atoms.append(atom)
            take(")")
            take("*")
            if not atoms:
                raise DSLError("empty group", pos_now())
            return Item(tuple(atoms), star=True)
        tok, pos = take()
        if tok in "[]()*|+":
            raise DSLError(f"expected a component, got {tok!r}", pos)
        atom = _comp_to_atom(tok, pos)
        star = False
        if peek() == "*":
            take("*")
            star = True
            if atom.bottom:
                raise DSLError("designated-bounds atom cannot be starred", pos)
        return Item((atom,), star=star)

    def parse_sum() -> SumClass:
        take("[")
        items = []
        while peek() != "]":
            if peek() is None:
                raise DSLError("unclosed '['", len(text))
            items.append(parse_item())
        take("]")
        if not items:
            raise DSLError("empty sum class", pos_now())
        for j, item in enumerate(items):
            for a in item.atoms:
                if a.bottom and j != 0:
                    raise DSLError(
                        "designated-bounds atom in non-initial position", pos_now()
                    )
        return SumClass(tuple(items))

    sums = [parse_sum()]
    while peek() == "|":
        take("|")
        sums.append(parse_sum())
    if i != len(tokens):
        raise DSLError(f"trailing input {tokens[i][0]!r}", tokens[i][1])
    try:
        return class_expr(sums)
    except ValueError as exc:
        raise DSLError(str(exc), 0) from None


def _kind_token(kind: Kind, bottom: bool) -> str:
    t = kind.tag
    if bottom:
        if t == FIN:
            return f"L{kind.k}"
        if t == LEX:
            return f"Lo{kind.k}"
        if t == UNIT:
            return "UM"
        raise ValueError(f"{kind} cannot carry designated bounds")
    if t in (FIN, LEX):
        return f"{t}{kind.k}"
    return t


def pretty_chain(c: Chain) -> str:
    if c.is_trivial:
        return "T"
    parts = [
        _kind_token(k, bottom=(i == 0 and c.bottom))
        for i, k in enumerate(c.components)
    ]
    return "+".join(parts)


def pretty_atom(a: Atom) -> str:
    return _kind_token(a.kind, a.bottom)


def pretty_item(item: Item) -> str:
    if len(item.atoms) > 1:
        return "(" + " ".join(pretty_atom(a) for a in item.atoms) + ")*"
    return pretty_atom(item.atoms[0]) + ("*" if item.star else "")


def pretty_class_expr(e: ClassExpr) -> str:
    return "|".join(
        "[" + " ".join(pretty_item(it) for it in s.items) + "]" for s in e.sums
    )


def parse_element(c: Chain, text: str) -> Element:
    """Parse 'top' or '<ci>:<local>' against a chain."""
    text = text.strip()
    if text == "top":
        return TOP
    if ":" not in text:
        raise DSLError("element must be 'top' or '<component>:<value>'", 0)
    ci_text, val_text = text.split(":", 1)
    try:
        ci = int(ci_text)
    except ValueError:
        raise DSLError(f"bad component index {ci_text!r}", 0) from None
    val_text = val_text.strip()
    if "," in val_text:
        a, b = val_text.split(",", 1)
        value = (int(a), int(b))
    elif "/" in val_text:
        p, q = val_text.split("/", 1)
        value = Fraction(int(p), int(q))
    else:
        value = int(val_text)
    return element(c, ci, value)


def pretty_element(x: Element) -> str:
    if x.is_top:
        return "top"
    if isinstance(x.value, tuple):
        return f"{x.ci}:{x.value[0]},{x.value[1]}"
    if isinstance(x.value, Fraction):
        return f"{x.ci}:{x.value.numerator}/{x.value.denominator}"
    return f"{x.ci}:{x.value}"
