"""Decision procedures for the amalgamation property.

Varieties of totally ordered MV-algebras and Wajsberg hoops reduce to
absorption among their one-component generators.  For basic hoops the
component kinds occurring pin the variety into one of countably many finite
intervals (two, three, or thirteen nodes); the verdict is the node whose
chain class equals the input's, if any.  BL-algebras reduce to the first
components plus the basic-hoop classification of the tails, matched against
a fixed list of composite shapes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import CANC, CANC_Z, FIN, LEX, STD_UNIT, TRIV, UNIT, Chain, Kind, chain
from .classes import (
    Atom,
    ClassExpr,
    Item,
    SumClass,
    VarietyInput,
    class_expr,
    class_includes,
    component_member,
    vfc_equals,
)


@dataclass(frozen=True)
class Verdict:
    ap: bool
    canonical: Optional[ClassExpr] = None
    interval: Optional[str] = None
    witness: Optional[Chain] = None

    def to_json(self) -> dict:
        from .dsl import pretty_chain, pretty_class_expr

        return {
            "ap": self.ap,
            "canonical": pretty_class_expr(self.canonical) if self.canonical else None,
            "interval": self.interval,
            "witness": pretty_chain(self.witness) if self.witness else None,
        }


@dataclass(frozen=True)
class IntervalPoset:
    name: str
    nodes: tuple  # ClassExpr per node
    covers: tuple  # (lower index, upper index) pairs, the Hasse relation


def _plain(kind: Kind, bottom: bool = False) -> Item:
    return Item((Atom(kind, bottom),))


def _star(kind: Kind) -> Item:
    return Item((Atom(kind),), star=True)


def _gstar(*kinds: Kind) -> Item:
    return Item(tuple(Atom(k) for k in kinds), star=True)


def _sum(*items: Item) -> SumClass:
    return SumClass(tuple(items))


def _expr(*sums: SumClass) -> ClassExpr:
    return class_expr(sums)


def _kind_name(kind: Kind) -> str:
    return repr(kind)


def interval(name: str, parameter: Optional[Kind] = None) -> IntervalPoset:
    """Interval posets of the amalgamation classes.

    ``I(A)`` for a simple or cancellative generator has two nodes, the
    lexicographic intervals have three, and the mixed finite/cancellative
    intervals have thirteen nodes whose covers are fixed data validated
    against recomputed inclusions.
    """
    if name == "I(A)":
        if parameter is None:
            raise ValueError("I(A) needs a generator kind")
        a = parameter
        if a.tag not in (FIN, CANC, UNIT):
            raise ValueError(f"I(A) is defined for W/Z/U generators, not {a}")
        return IntervalPoset(
            name=f"I({_kind_name(a)})",
            nodes=(_expr(_sum(_plain(a))), _expr(_sum(_star(a)))),
            covers=((0, 1),),
        )
    if name == "I(Wo)":
        if parameter is None or parameter.tag != FIN:
            raise ValueError("I(Wo) needs the finite parameter kind")
        n = parameter.k
        w, wo = Kind(FIN, n), Kind(LEX, n)
        return IntervalPoset(
            name=f"I(Wo{n})",
            nodes=(
                _expr(_sum(_plain(wo))),
                _expr(_sum(_star(w), _plain(wo))),
                _expr(_sum(_star(wo))),
            ),
            covers=((0, 1), (1, 2)),
        )
    if name == "I(W,Z)":
        if parameter is None or parameter.tag != FIN:
            raise ValueError("I(W,Z) needs the finite parameter kind")
        w, z = parameter, CANC_Z
        nodes = (
            _expr(_sum(_plain(w)), _sum(_plain(z))),        # 0  [Wn]|[Z]
            _expr(_sum(_plain(w), _plain(z))),              # 1  [Wn Z]
            _expr(_sum(_plain(z), _plain(w))),              # 2  [Z Wn]
            _expr(_sum(_star(w)), _sum(_plain(z))),         # 3  [Wn*]|[Z]
            _expr(_sum(_plain(w)), _sum(_star(z))),         # 4  [Wn]|[Z*]
            _expr(_sum(_star(w), _plain(z))),               # 5  [Wn* Z]
            _expr(_sum(_plain(w), _star(z))),               # 6  [Wn Z*]
            _expr(_sum(_star(z), _plain(w))),               # 7  [Z* Wn]
            _expr(_sum(_plain(z), _star(w))),               # 8  [Z Wn*]
            _expr(_sum(_star(w)), _sum(_star(z))),          # 9  [Wn*]|[Z*]
            _expr(_sum(_star(w), _star(z))),                # 10 [Wn* Z*]
            _expr(_sum(_star(z), _star(w))),                # 11 [Z* Wn*]
            _expr(_sum(_gstar(w, z))),                      # 12 [(Wn Z)*]
        )
        covers = (
            (0, 1), (0, 2), (0, 3), (0, 4),
            (1, 5), (1, 6),
            (2, 7), (2, 8),
            (3, 5), (3, 8), (3, 9),
            (4, 6), (4, 7), (4, 9),
            (5, 10), (6, 10),
            (7, 11), (8, 11),
            (9, 10), (9, 11),
            (10, 12), (11, 12),
        )
        return IntervalPoset(name=f"I({_kind_name(w)},Z)", nodes=nodes, covers=covers)
    raise ValueError(f"unknown interval {name!r}")


def interval_by_name(text: str) -> IntervalPoset:
    """Resolve names like I(W2), I(Z), I(U), I(Wo2), I(W2,Z)."""
    t = text.replace(" ", "")
    if not (t.startswith("I(") and t.endswith(")")):
        raise ValueError(f"unknown interval {text!r}")
    body = t[2:-1]
    if body == "Z":
        return interval("I(A)", CANC_Z)
    if body == "U":
        return interval("I(A)", STD_UNIT)
    if body.startswith("Wo") and body[2:].isdigit():
        return interval("I(Wo)", Kind(FIN, int(body[2:])))
    if body.endswith(",Z") and body.startswith("W") and body[1:-2].isdigit():
        return interval("I(W,Z)", Kind(FIN, int(body[1:-2])))
    if body.startswith("W") and body[1:].isdigit():
        return interval("I(A)", Kind(FIN, int(body[1:])))
    raise ValueError(f"unknown interval {text!r}")


def recompute_cover_relation(p: IntervalPoset) -> tuple:
    """Re-derive the Hasse relation from pairwise class inclusions."""
    n = len(p.nodes)
    leq = [[class_includes(p.nodes[i], p.nodes[j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                raise AssertionError(f"nodes {i} and {j} coincide")
    covers = []
    for i in range(n):
        for j in range(n):
            if i == j or not leq[i][j]:
                continue
            if any(
                k != i and k != j and leq[i][k] and leq[k][j] for k in range(n)
            ):
                continue
            covers.append((i, j))
    return tuple(covers)


def emit_poset(p: IntervalPoset, fmt: str) -> str:
    """Render an interval poset as DOT (edges bottom-to-top) or JSON."""
    from .dsl import pretty_class_expr

    labels = [pretty_class_expr(e) for e in p.nodes]
    if fmt == "dot":
        lines = [f'digraph "{p.name}" {{', "  rankdir=BT;"]
        for i, lab in enumerate(labels):
            lines.append(f'  n{i} [label="{lab}"];')
        for lo, hi in p.covers:
            lines.append(f"  n{lo} -> n{hi};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        import json

        return json.dumps(
            {
                "schema": "blcalc/1",
                "interval": p.name,
                "nodes": labels,
                "covers": [list(c) for c in p.covers],
            },
            indent=2,
            sort_keys=True,
        )
    raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# Kind-set normalization (generator absorption)
# ---------------------------------------------------------------------------


def normalize_kinds(kinds) -> tuple:
    """Drop generators absorbed by another's closure; keep the maximal ones."""
    ks = {k for k in kinds if k.tag != TRIV}
    keep = [
        a for a in ks if not any(b != a and component_member(a, b) for b in ks)
    ]
    return tuple(sorted(keep, key=lambda k: k.sort_key()))


def _single_atom_kinds(v: VarietyInput, bl: bool) -> tuple:
    """Generator kinds of a one-component-chains input."""
    if v.canonical is not None:
        kinds = []
        for s in v.canonical.sums:
            if len(s.items) != 1 or s.items[0].star or len(s.items[0].atoms) != 1:
                raise ValueError(f"{v!r} is not a union of single-generator classes")
            atom = s.items[0].atoms[0]
            if atom.bottom != bl:
                raise ValueError(f"{v!r} has the wrong signature")
            kinds.append(atom.kind)
        return normalize_kinds(kinds)
    kinds = []
    for g in v.generators:
        if g.bottom != bl:
            raise ValueError(f"{g!r} has the wrong signature")
        if g.index > 1:
            raise ValueError(f"{g!r} is not a one-component chain")
        kinds.extend(g.components)
    return normalize_kinds(kinds)


def classify_ap_mv(v: VarietyInput) -> Verdict:
    """Amalgamation for varieties of totally ordered MV-algebra generators:
    holds exactly for the one-chain-generated ones."""
    kinds = _single_atom_kinds(v, bl=True)
    if not kinds:
        return Verdict(ap=True, interval="Trivial")
    if len(kinds) == 1:
        a = kinds[0]
        return Verdict(
            ap=True,
            canonical=_expr(_sum(_plain(a, bottom=True))),
            interval=f"MV({_kind_name(a)})",
        )
    return Verdict(ap=False, witness=chain((kinds[0],), bottom=True))


def classify_ap_wh(v: VarietyInput) -> Verdict:
    """Amalgamation for varieties of Wajsberg-hoop chain generators: a single
    generator closure, or a finite chain paired with the cancellative kind."""
    kinds = _single_atom_kinds(v, bl=False)
    if not kinds:
        return Verdict(ap=True, interval="Trivial")
    if len(kinds) == 1:
        a = kinds[0]
        return Verdict(
            ap=True,
            canonical=_expr(_sum(_plain(a))),
            interval=f"WH({_kind_name(a)})",
        )
    if len(kinds) == 2 and {k.tag for k in kinds} == {FIN, CANC}:
        w = next(k for k in kinds if k.tag == FIN)
        return Verdict(
            ap=True,
            canonical=_expr(_sum(_plain(w)), _sum(_plain(CANC_Z))),
            interval=f"WH({_kind_name(w)},Z)",
        )
    return Verdict(ap=False, witness=chain((kinds[0],)))


def _component_kinds(v: VarietyInput) -> tuple:
    if v.canonical is not None:
        kinds = [
            a.kind for s in v.canonical.sums for it in s.items for a in it.atoms
        ]
    else:
        kinds = [k for g in v.generators for k in g.components]
    return normalize_kinds(kinds)


def _interval_for_kinds(kinds: tuple) -> Optional[IntervalPoset]:
    if len(kinds) == 1:
        a = kinds[0]
        if a.tag in (FIN, CANC, UNIT):
            return interval("I(A)", a)
        if a.tag == LEX:
            return interval("I(Wo)", Kind(FIN, a.k))
    if len(kinds) == 2 and {k.tag for k in kinds} == {FIN, CANC}:
        w = next(k for k in kinds if k.tag == FIN)
        return interval("I(W,Z)", w)
    return None


def classify_ap_bh(v: VarietyInput) -> Verdict:
    """Amalgamation for varieties of basic hoops.

    The component kinds must normalize to an admissible generator set; the
    chain class must then coincide with one of the interval's nodes.  A
    strictly-between class inherits a witness from the smallest node above.
    """
    if v.bl_mode:
        raise ValueError("basic-hoop classification needs hoop input")
    kinds = _component_kinds(v)
    if not kinds:
        return Verdict(ap=True, interval="Trivial")
    poset = _interval_for_kinds(kinds)
    if poset is None:
        return Verdict(ap=False)
    best_witness = None
    for idx, node in enumerate(poset.nodes):
        verdict, witness = vfc_equals(v, node)
        if verdict == "equal":
            return Verdict(
                ap=True, canonical=node, interval=f"{poset.name}:{idx}"
            )
        if verdict == "v_strictly_smaller" and best_witness is None:
            best_witness = witness
    return Verdict(ap=False, witness=best_witness)


def _prepend(atom_kind: Kind, node: Optional[ClassExpr]) -> tuple:
    """Sum classes of an MV head followed by a basic-hoop class's sums."""
    head = _plain(atom_kind, bottom=True)
    if node is None:
        return (_sum(head),)
    return tuple(SumClass((head,) + s.items) for s in node.sums)


def _bl_case_shapes(a: Kind, basic_node: Optional[ClassExpr]) -> list:
    """Candidate chain-class shapes for a BL variety with first components
    generated by ``a`` and tail class ``basic_node``."""
    shapes = []
    if a.tag in (FIN, UNIT):
        shapes.append(("BL-case-2", _expr(*_prepend(a, basic_node))))
        return shapes
    # lexicographic head: plain stacking, head-splitting, and the two
    # asymmetric union variants over a finite/cancellative tail pair
    m = Kind(FIN, a.k)
    shapes.append(("BL-case-2", _expr(*_prepend(a, basic_node))))
    shapes.append(
        ("BL-case-3", _expr(*(_prepend(m, basic_node) + (_sum(_plain(a, True)),))))
    )
    if basic_node is not None and len(basic_node.sums) == 2:
        tags = [s.items[0].atoms[0].kind.tag for s in basic_node.sums]
        if len(basic_node.sums[0].items) == 1 and len(basic_node.sums[1].items) == 1:
            if set(tags) == {FIN, CANC}:
                k_fin = basic_node.sums[tags.index(FIN)]
                k_canc = basic_node.sums[tags.index(CANC)]
                e1 = ClassExpr((k_fin,))
                e2 = ClassExpr((k_canc,))
                shapes.append(
                    ("BL-case-4", _expr(*(_prepend(a, e1) + _prepend(m, e2))))
                )
                shapes.append(
                    ("BL-case-4", _expr(*(_prepend(m, e1) + _prepend(a, e2))))
                )
    return shapes


def classify_ap_bl(v: VarietyInput) -> Verdict:
    """Amalgamation for varieties of BL-algebras: the first components must
    form a one-chain-generated MV class, the tails an amalgamable basic-hoop
    class, and the whole chain class one of the composite case shapes."""
    if not v.bl_mode:
        raise ValueError("BL classification needs designated-bounds input")
    if v.canonical is not None:
        head_kinds = [s.items[0].atoms[0].kind for s in v.canonical.sums]
        tails = [SumClass(s.items[1:]) for s in v.canonical.sums if len(s.items) > 1]
        basic = (
            VarietyInput(canonical=ClassExpr(tuple(tails))) if tails else None
        )
    else:
        nontrivial = [g for g in v.generators if not g.is_trivial]
        if not nontrivial:
            return Verdict(ap=True, interval="Trivial")
        head_kinds = [g.components[0] for g in nontrivial]
        tail_chains = [
            chain(g.components[1:], bottom=False) for g in nontrivial
        ]
        basic = (
            VarietyInput(generators=tuple(tail_chains))
            if any(not t.is_trivial for t in tail_chains)
            else None
        )
    heads = normalize_kinds(head_kinds)
    if not heads:
        return Verdict(ap=True, interval="Trivial")
    if len(heads) > 1:
        return Verdict(ap=False, witness=chain((heads[0],), bottom=True))

    if basic is None:
        basic_verdict = Verdict(ap=True, interval="Trivial")
    else:
        basic_verdict = classify_ap_bh(basic)
    if not basic_verdict.ap:
        return Verdict(ap=False, witness=basic_verdict.witness)

    best_witness = None
    for case, shape in _bl_case_shapes(heads[0], basic_verdict.canonical):
        verdict, witness = vfc_equals(v, shape)
        if verdict == "equal":
            tail = basic_verdict.interval or ""
            return Verdict(
                ap=True,
                canonical=shape,
                interval=f"{case}({_kind_name(heads[0])};{tail})",
            )
        if verdict == "v_strictly_smaller" and best_witness is None:
            best_witness = witness
    return Verdict(ap=False, witness=best_witness)


# ---------------------------------------------------------------------------
# Catalog enumeration
# ---------------------------------------------------------------------------


def enumerate_catalog(mode: str, n_max: int, m_max: Optional[int] = None) -> list:
    """All amalgamation classes with parameters below the bounds.

    Each entry is (expression or None for the trivial variety, interval name,
    node position).  The hoop catalog has 5 parameterless entries plus 18 per
    finite parameter; the BL catalog composes case shapes over it.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if mode == "bh":
        entries = [(None, "Trivial", 0)]
        posets = [interval("I(A)", CANC_Z), interval("I(A)", STD_UNIT)]
        for n in range(1, n_max + 1):
            posets.append(interval("I(A)", Kind(FIN, n)))
            posets.append(interval("I(Wo)", Kind(FIN, n)))
            posets.append(interval("I(W,Z)", Kind(FIN, n)))
        for p in posets:
            entries.extend((node, p.name, i) for i, node in enumerate(p.nodes))
        return entries
    if mode == "bl":
        if m_max is None:
            m_max = n_max
        bh_entries = enumerate_catalog("bh", n_max)
        heads = [Kind(FIN, m) for m in range(1, m_max + 1)]
        heads += [STD_UNIT]
        heads += [Kind(LEX, m) for m in range(1, m_max + 1)]
        out = [(None, "Trivial", 0)]
        seen = []
        for a in heads:
            for node, iname, pos in bh_entries:
                basic = node
                for case, shape in _bl_case_shapes(a, basic):
                    if any(
                        class_includes(shape, other) and class_includes(other, shape)
                        for other, _, _ in seen
                    ):
                        continue
                    seen.append((shape, case, f"{iname}:{pos}"))
                    out.append((shape, f"{case}({_kind_name(a)})", f"{iname}:{pos}"))
        return out
    raise ValueError(f"unknown mode {mode!r}")
