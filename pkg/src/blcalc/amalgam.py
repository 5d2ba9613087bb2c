"""Spans of chain embeddings, brute-force amalgam search over a class, and
constructive amalgamation by componentwise alignment.

The brute-force search is the oracle: it enumerates candidate targets inside
a class expression in a fixed order (index, then component kinds, then
embedding choices) and returns the first commuting completion.  The
constructive route aligns the three ordinal-sum decompositions against a sum
class of the universe, pads with trivial summands, amalgamates slot by slot
(finite chains into their lcm chain, cancellative components by scale
balancing, lexicographic components by radical transport), and reassembles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, Optional, Union

from .core import (
    CANC,
    CANC_Z,
    FIN,
    LEX,
    STD_UNIT,
    UNIT,
    Chain,
    Element,
    Kind,
    chain,
    enumerate_elements,
    fin_luk,
    lex_omega,
)
from .classes import ClassExpr, match_assignments, member
from .maps import (
    ChainMap,
    Essentialization,
    Filter,
    LocalMap,
    apply_map,
    enumerate_embeddings,
    essentialize,
    identity_map,
    is_essential_embedding,
)


class UnsupportedShapeError(ValueError):
    """The constructive route does not cover this span/universe shape."""


@dataclass(frozen=True)
class Span:
    """Two embeddings out of a common chain."""

    apex: Chain
    left: ChainMap
    right: ChainMap

    def __post_init__(self):
        if self.left.source != self.apex or self.right.source != self.apex:
            raise ValueError("span legs must start at the apex")

    def to_json(self) -> dict:
        return {
            "apex": repr(self.apex),
            "left": self.left.to_json(),
            "right": self.right.to_json(),
        }


@dataclass(frozen=True)
class CollapsingMap:
    """A chain homomorphism factored as filter collapse followed by an
    embedding of the quotient."""

    source: Chain
    collapse: Filter
    embed: ChainMap
    project: Callable[[Element], Element]

    def to_json(self) -> dict:
        return {
            "source": repr(self.source),
            "collapse": {"cut": self.collapse.cut, "radical": self.collapse.radical},
            "embed": self.embed.to_json(),
            "embedding": self.collapse.cut == self.source.index,
        }


Completion = Union[ChainMap, CollapsingMap]


def apply_completion(m: Completion, x: Element) -> Element:
    if isinstance(m, CollapsingMap):
        return apply_map(m.embed, m.project(x))
    return apply_map(m, x)


@dataclass(frozen=True)
class Amalgam:
    """A completing pair of maps into a common target."""

    target: Chain
    left: ChainMap
    right: Completion
    one_sided: bool = False

    def to_json(self) -> dict:
        return {
            "target": repr(self.target),
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "one_sided": self.one_sided,
        }


def make_span(
    apex: Chain,
    left_target: Chain,
    right_target: Chain,
    left_index: int = 0,
    right_index: int = 0,
    scale_cap: int = 4,
) -> Span:
    """Span built from enumerated embeddings, selected by position in the
    deterministic enumeration order."""
    lefts = enumerate_embeddings(apex, left_target, scale_cap)
    rights = enumerate_embeddings(apex, right_target, scale_cap)
    if not lefts or not rights:
        raise ValueError("no embedding for the requested span leg")
    return Span(apex=apex, left=lefts[left_index], right=rights[right_index])


def is_essential_span(s: Span) -> bool:
    return is_essential_embedding(s.right)


def spans_commute(s: Span, am: Amalgam, caps: int = 3) -> bool:
    for x in enumerate_elements(s.apex, caps):
        if apply_map(am.left, apply_map(s.left, x)) != apply_completion(
            am.right, apply_map(s.right, x)
        ):
            return False
    return True


# ---------------------------------------------------------------------------
# Brute-force search
# ---------------------------------------------------------------------------


def _atom_closure_kinds(atom_kind: Kind, max_k: int) -> list:
    t = atom_kind.tag
    if t == FIN:
        return [fin_luk(d) for d in range(1, atom_kind.k + 1) if atom_kind.k % d == 0]
    if t == LEX:
        divisors = [d for d in range(1, atom_kind.k + 1) if atom_kind.k % d == 0]
        return (
            [fin_luk(d) for d in divisors]
            + [lex_omega(d) for d in divisors]
            + [CANC_Z]
        )
    if t == CANC:
        return [CANC_Z]
    if t == UNIT:
        return (
            [fin_luk(k) for k in range(1, max_k + 1)]
            + [lex_omega(k) for k in range(1, max_k + 1)]
            + [CANC_Z, STD_UNIT]
        )
    return []


def universe_chains(e: ClassExpr, max_index: int, max_k: int) -> list:
    """Members of a class with bounded index and parameters, in search order:
    by index, then componentwise by kind."""
    kinds = []
    seen = set()
    for s in e.sums:
        for item in s.items:
            for atom in item.atoms:
                for k in _atom_closure_kinds(atom.kind, max_k):
                    if k.k <= max_k and k not in seen:
                        seen.add(k)
                        kinds.append(k)
    kinds.sort(key=lambda k: k.sort_key())
    out = []
    if not e.bl_mode:
        out.append(chain((), bottom=False))
    for length in range(1, max_index + 1):
        for combo in product(kinds, repeat=length):
            if e.bl_mode and not combo[0].bounded:
                continue
            c = chain(combo, bottom=e.bl_mode)
            if member(c, e):
                out.append(c)
    return out


def find_amalgam_bruteforce(
    s: Span,
    universe: ClassExpr,
    max_index: int = 3,
    max_k: int = 7,
    scale_cap: int = 4,
    caps: int = 3,
) -> Optional[Amalgam]:
    """Exhaustive search for a commuting completion inside the universe.

    ``None`` means none within the stated bounds; for universes whose kind
    inventory is finite the kind-level embedding rules make the search
    exhaustive up to the scale cap.
    """
    for target in universe_chains(universe, max_index, max_k):
        for psi1 in enumerate_embeddings(s.left.target, target, scale_cap):
            for psi2 in enumerate_embeddings(s.right.target, target, scale_cap):
                am = Amalgam(target=target, left=psi1, right=psi2)
                if spans_commute(s, am, caps):
                    return am
    return None


# ---------------------------------------------------------------------------
# Constructive amalgamation
# ---------------------------------------------------------------------------


def _join_kinds(b: Kind, c: Kind) -> Kind:
    """Least representable kind both arguments embed into."""
    tags = {b.tag, c.tag}
    if tags == {FIN}:
        return fin_luk(math.lcm(b.k, c.k))
    if tags == {FIN, LEX} or tags == {LEX}:
        return lex_omega(math.lcm(b.k, c.k))
    if tags == {FIN, CANC}:
        return lex_omega(b.k if b.tag == FIN else c.k)
    if tags == {LEX, CANC}:
        return lex_omega(b.k if b.tag == LEX else c.k)
    if tags == {CANC}:
        return CANC_Z
    if tags == {UNIT} or tags == {FIN, UNIT}:
        return STD_UNIT
    raise UnsupportedShapeError(f"no representable join of {b} and {c}")


def _slot_amalgam(
    b_kind: Optional[Kind],
    c_kind: Optional[Kind],
    apex_locals: Optional[tuple],  # (LocalMap apex->b, LocalMap apex->c)
):
    """Amalgamate one aligned component slot.

    Returns the slot's target kind and the local maps of the two completions.
    Scales on the cancellative coordinate are balanced so the square commutes;
    finite-chain embeddings are unique, so they commute by themselves.
    """
    if b_kind is None and c_kind is None:
        raise AssertionError("empty slot")
    if c_kind is None:
        return b_kind, LocalMap(b_kind, b_kind), None
    if b_kind is None:
        return c_kind, None, LocalMap(c_kind, c_kind)
    d = _join_kinds(b_kind, c_kind)
    beta, gamma_ = 1, 1
    if apex_locals is not None:
        lb, lc = apex_locals
        if lb.src.tag in (CANC, LEX):
            beta, gamma_ = lc.scale, lb.scale
    return d, LocalMap(b_kind, d, scale=beta), LocalMap(c_kind, d, scale=gamma_)


def _merge_positions(bpos, cpos, anchors):
    """Merge two position runs sharing anchored pairs into slot records
    (b position or None, c position or None, anchored flag)."""
    slots = []
    bi, ci = 0, 0
    for (pb, pc) in anchors:
        while bi < len(bpos) and bpos[bi] < pb:
            slots.append((bpos[bi], None, False))
            bi += 1
        while ci < len(cpos) and cpos[ci] < pc:
            slots.append((None, cpos[ci], False))
            ci += 1
        slots.append((pb, pc, True))
        bi += 1
        ci += 1
    while bi < len(bpos):
        slots.append((bpos[bi], None, False))
        bi += 1
    while ci < len(cpos):
        slots.append((None, cpos[ci], False))
        ci += 1
    return slots


def amalgamate_constructive(s: Span, universe: ClassExpr) -> Amalgam:
    """Componentwise amalgamation inside a canonical universe.

    Both codomains are matched against one sum class of the universe; the
    apex components pin down which of their components must be fused, the
    rest are interleaved with trivial padding, and each slot is amalgamated
    on its own.  Raises UnsupportedShapeError when no consistent alignment
    exists or a slot join is not representable.
    """
    b_chain, c_chain = s.left.target, s.right.target
    for c in (s.apex, b_chain, c_chain):
        if not member(c, universe):
            raise UnsupportedShapeError(f"{c!r} lies outside the universe")

    if c_chain.is_trivial:
        return Amalgam(target=b_chain, left=identity_map(b_chain),
                       right=enumerate_embeddings(c_chain, b_chain)[0])
    if b_chain.is_trivial:
        return Amalgam(target=c_chain,
                       left=enumerate_embeddings(b_chain, c_chain)[0],
                       right=identity_map(c_chain))

    f1, f2 = s.left.index_map, s.right.index_map
    for sum_class in universe.sums:
        for asg_b in match_assignments(b_chain, sum_class):
            for asg_c in match_assignments(c_chain, sum_class):
                if any(asg_b[f1[i]] != asg_c[f2[i]] for i in range(s.apex.index)):
                    continue
                try:
                    am = _assemble(s, sum_class, asg_b, asg_c)
                except UnsupportedShapeError:
                    continue
                if member(am.target, universe) and spans_commute(s, am):
                    return am
    raise UnsupportedShapeError("no consistent componentwise alignment found")


def _assemble(s: Span, sum_class, asg_b, asg_c) -> Amalgam:
    b_chain, c_chain = s.left.target, s.right.target
    f1, f2 = s.left.index_map, s.right.index_map
    anchor_of_b = {f1[i]: i for i in range(s.apex.index)}

    slots = []  # (b position or None, c position or None, apex index or None)
    for ii, item in enumerate(sum_class.items):
        bpos = [p for p, a in enumerate(asg_b) if a == ii]
        cpos = [p for p, a in enumerate(asg_c) if a == ii]
        anchors = [
            (f1[i], f2[i]) for i in range(s.apex.index) if asg_b[f1[i]] == ii
        ]
        if item.star:
            merged = _merge_positions(bpos, cpos, anchors)
        else:
            if len(bpos) > 1 or len(cpos) > 1:
                raise UnsupportedShapeError("plain item consumed twice")
            if bpos or cpos:
                merged = [(bpos[0] if bpos else None, cpos[0] if cpos else None,
                           bool(anchors))]
            else:
                merged = []
        for pb, pc, anchored in merged:
            apex_i = anchor_of_b.get(pb) if anchored else None
            slots.append((pb, pc, apex_i))

    kinds = []
    b_index_map, b_locals = [], []
    c_index_map, c_locals = [], []
    for pos, (pb, pc, apex_i) in enumerate(slots):
        b_kind = b_chain.components[pb] if pb is not None else None
        c_kind = c_chain.components[pc] if pc is not None else None
        apex_locals = None
        if apex_i is not None:
            apex_locals = (s.left.locals[apex_i], s.right.locals[apex_i])
        d_kind, lb, lc = _slot_amalgam(b_kind, c_kind, apex_locals)
        kinds.append(d_kind)
        if pb is not None:
            b_index_map.append(pos)
            b_locals.append(lb)
        if pc is not None:
            c_index_map.append(pos)
            c_locals.append(lc)

    target = chain(kinds, bottom=b_chain.bottom)
    if target.index != len(kinds):
        raise AssertionError("slot kinds must be non-trivial")
    left = ChainMap(b_chain, target, tuple(b_index_map), tuple(b_locals))
    right = ChainMap(c_chain, target, tuple(c_index_map), tuple(c_locals))
    return Amalgam(target=target, left=left, right=right)


def one_sided_amalgam(
    s: Span,
    universe: ClassExpr,
    max_index: int = 3,
    max_k: int = 7,
    scale_cap: int = 4,
) -> Amalgam:
    """Collapse the right codomain along its largest image-avoiding filter,
    amalgamate the resulting essential span, and compose the collapse into
    the right completion."""
    ess: Essentialization = essentialize(s.right)
    if not member(ess.quotient, universe):
        raise UnsupportedShapeError(
            f"quotient {ess.quotient!r} escapes the universe; it is not "
            "closed under homomorphic images"
        )
    espan = Span(apex=s.apex, left=s.left, right=ess.map)
    try:
        core = amalgamate_constructive(espan, universe)
    except UnsupportedShapeError:
        core = find_amalgam_bruteforce(
            espan, universe, max_index=max_index, max_k=max_k, scale_cap=scale_cap
        )
        if core is None:
            raise ValueError("essential span has no amalgam within bounds")
    trivial_collapse = ess.theta0.cut == s.right.target.index
    right = CollapsingMap(
        source=s.right.target,
        collapse=ess.theta0,
        embed=core.right,
        project=ess.project,
    )
    return Amalgam(
        target=core.target,
        left=core.left,
        right=right,
        one_sided=not trivial_collapse,
    )
