"""Embeddings between structural chains, their filters and quotients, and
the essential-embedding machinery.

An embedding of ordinal sums is an order-embedding of component positions
together with a local embedding per component.  The local possibilities are
rigid for the representable kinds:

  W k  -> W n    exactly when k | n, via i -> i*(n/k)
  W k  -> Wo n   exactly when k | n, via i -> (i*(n/k), 0)
  W k  -> U      via i -> i/k
  Z    -> Z      one per positive integer scale s, via b -> s*b
  Z    -> Wo n   one per scale, into the radical: b -> (n, s*b)
  Wo k -> Wo n   exactly when k | n, one per scale: (a, b) -> (a*(n/k), s*b)
  U    -> U      the identity

Nothing cancellative or lexicographic embeds into U, and nothing infinite
embeds into a finite chain.  Cancellative coordinates make some families
infinite, so enumeration takes a scale cap (canonical representative:
scale 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Optional

from .core import (
    CANC,
    FIN,
    LEX,
    UNIT,
    Chain,
    Element,
    Kind,
    LocalValue,
    TOP,
    chain,
    chain_op,
    element,
    enumerate_elements,
    fin_luk,
    local_bottom,
    order_le,
)


@dataclass(frozen=True)
class LocalMap:
    """A local embedding of one component kind into another."""

    src: Kind
    dst: Kind
    scale: int = 1

    def to_json(self) -> dict:
        return {"src": repr(self.src), "dst": repr(self.dst), "scale": self.scale}


def apply_local(lm: LocalMap, v: LocalValue) -> LocalValue:
    s, d = lm.src.tag, lm.dst.tag
    if s == FIN and d == FIN:
        return v * (lm.dst.k // lm.src.k)
    if s == FIN and d == LEX:
        return (v * (lm.dst.k // lm.src.k), 0)
    if s == FIN and d == UNIT:
        return Fraction(v, lm.src.k)
    if s == CANC and d == CANC:
        return lm.scale * v
    if s == CANC and d == LEX:
        return (lm.dst.k, lm.scale * v)
    if s == LEX and d == LEX:
        a, b = v
        return (a * (lm.dst.k // lm.src.k), lm.scale * b)
    if s == UNIT and d == UNIT:
        return v
    raise ValueError(f"no local map from {lm.src} to {lm.dst}")


def local_embeddings(src: Kind, dst: Kind, scale_cap: int = 4) -> list:
    """All local embeddings of one kind into another, scale-capped."""
    s, d = src.tag, dst.tag
    one = [LocalMap(src, dst)]
    scaled = [LocalMap(src, dst, scale=n) for n in range(1, scale_cap + 1)]
    if s == FIN and d == FIN:
        return one if dst.k % src.k == 0 else []
    if s == FIN and d == LEX:
        return one if dst.k % src.k == 0 else []
    if s == FIN and d == UNIT:
        return one
    if s == CANC and d == CANC:
        return scaled
    if s == CANC and d == LEX:
        return scaled
    if s == LEX and d == LEX:
        return scaled if dst.k % src.k == 0 else []
    if s == UNIT and d == UNIT:
        return one
    return []


@dataclass(frozen=True)
class ChainMap:
    """An embedding of structural chains: target positions per source
    component plus the local embedding used at each."""

    source: Chain
    target: Chain
    index_map: tuple  # strictly increasing target positions, one per source comp
    locals: tuple  # LocalMap per source component

    def to_json(self) -> dict:
        return {
            "source": repr(self.source),
            "target": repr(self.target),
            "index_map": [[i, p] for i, p in enumerate(self.index_map)],
            "component_maps": [lm.to_json() for lm in self.locals],
            "embedding": True,
        }

    def __repr__(self):
        pairs = ",".join(f"{i}->{p}" for i, p in enumerate(self.index_map))
        return f"<{self.source!r} into {self.target!r} [{pairs}]>"


def identity_map(c: Chain) -> ChainMap:
    return ChainMap(
        source=c,
        target=c,
        index_map=tuple(range(c.index)),
        locals=tuple(LocalMap(k, k) for k in c.components),
    )


def apply_map(m: ChainMap, x: Element) -> Element:
    if x.is_top:
        return TOP
    pos = m.index_map[x.ci]
    return element(m.target, pos, apply_local(m.locals[x.ci], x.value))


def compose(outer: ChainMap, inner: ChainMap) -> ChainMap:
    """outer o inner, defined when the local composites are representable."""
    if inner.target.components != outer.source.components:
        raise ValueError("maps do not compose")
    locs = []
    for i in range(inner.source.index):
        lm1 = inner.locals[i]
        lm2 = outer.locals[inner.index_map[i]]
        locs.append(_compose_local(lm2, lm1))
    return ChainMap(
        source=inner.source,
        target=outer.target,
        index_map=tuple(outer.index_map[p] for p in inner.index_map),
        locals=tuple(locs),
    )


def _compose_local(lm2: LocalMap, lm1: LocalMap) -> LocalMap:
    if lm1.dst != lm2.src:
        raise ValueError("local maps do not compose")
    s, mid, d = lm1.src.tag, lm1.dst.tag, lm2.dst.tag
    # scales multiply on the cancellative coordinate; the W-multipliers are
    # implicit in the kind parameters
    scale = lm1.scale * lm2.scale
    if s == FIN and mid == LEX and d == LEX:
        scale = 1  # the b-coordinate of the image is 0 throughout
    if s == FIN:
        scale = 1
    return LocalMap(lm1.src, lm2.dst, scale=scale)


def verify_embedding(m: ChainMap, caps: int = 3) -> bool:
    """Check injectivity, order and operation preservation on windows."""
    src, tgt = m.source, m.target
    if src.bottom != tgt.bottom:
        return False
    window = enumerate_elements(src, caps)
    images = [apply_map(m, x) for x in window]
    if len(set(images)) != len(images):
        return False
    if src.bottom and not src.is_trivial:
        if apply_map(m, element(src, 0, local_bottom(src.components[0]))) != element(
            tgt, 0, local_bottom(tgt.components[0])
        ):
            return False
    for x, fx in zip(window, images):
        for y, fy in zip(window, images):
            if order_le(src, x, y) != order_le(tgt, fx, fy):
                return False
            for op in ("mul", "imp", "meet", "join"):
                if apply_map(m, chain_op(src, op, x, y)) != chain_op(tgt, op, fx, fy):
                    return False
    return True


def enumerate_embeddings(a: Chain, b: Chain, scale_cap: int = 4) -> list:
    """All embeddings of a into b (cancellative scales capped), sorted by
    position choice then by local scales."""
    if a.bottom != b.bottom:
        raise ValueError("designated-bounds mismatch between source and target")
    if a.is_trivial:
        if a.bottom and not b.is_trivial:
            return []  # the collapsed bottom cannot reach the target bottom
        return [ChainMap(a, b, (), ())]
    if a.index > b.index:
        return []
    out = []
    if a.bottom:
        if b.is_trivial:
            return []
        position_choices = (
            (0,) + rest for rest in combinations(range(1, b.index), a.index - 1)
        )
    else:
        position_choices = combinations(range(b.index), a.index)
    for positions in position_choices:
        per_comp = [
            local_embeddings(a.components[i], b.components[p], scale_cap)
            for i, p in enumerate(positions)
        ]
        if any(not opts for opts in per_comp):
            continue
        for locs in product(*per_comp):
            out.append(ChainMap(a, b, tuple(positions), tuple(locs)))
    return out


# ---------------------------------------------------------------------------
# Filters and quotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Filter:
    """A deductive filter of a structural chain: the tail from component
    ``cut`` upward, optionally thinned to the radical of the cut component
    (lexicographic components only).  cut == index means the trivial filter."""

    cut: int
    radical: bool = False

    def __repr__(self):
        return f"F({self.cut}{'r' if self.radical else ''})"


@dataclass(frozen=True)
class FilterChain:
    """All filters of a chain, ordered by decreasing inclusion."""

    chain: Chain
    filters: tuple

    @property
    def smallest_nontrivial(self) -> Optional[Filter]:
        if len(self.filters) < 2:
            return None
        return self.filters[-2]


def filters(c: Chain) -> FilterChain:
    """The inclusion-ordered filter list: one tail filter per cut position
    plus one radical refinement per lexicographic component."""
    out = []
    for cut in range(c.index + 1):
        out.append(Filter(cut, False))
        if cut < c.index and c.components[cut].tag == LEX:
            out.append(Filter(cut, True))
    return FilterChain(chain=c, filters=tuple(out))


def filter_contains(c: Chain, f: Filter, x: Element) -> bool:
    if x.is_top:
        return True
    if x.ci > f.cut:
        return True
    if x.ci == f.cut:
        if not f.radical:
            return True
        return x.value[0] == c.components[f.cut].k
    return False


def quotient_by_filter(c: Chain, f: Filter):
    """Collapse a filter to the top.

    Returns the quotient chain and the projection on elements.  Components
    above the cut vanish; the cut component vanishes too unless the filter
    is its radical, in which case it degrades to the finite chain on its
    first coordinate.
    """
    if not (0 <= f.cut <= c.index):
        raise ValueError(f"invalid filter {f!r} for {c!r}")
    comps = list(c.components[: f.cut])
    if f.radical:
        kind = c.components[f.cut]
        if kind.tag != LEX:
            raise ValueError(f"{kind} has no internal radical filter")
        comps.append(fin_luk(kind.k))
    q = chain(comps, bottom=c.bottom)

    def project(x: Element) -> Element:
        if x.is_top or filter_contains(c, f, x):
            return TOP
        if f.radical and x.ci == f.cut:
            return element(q, x.ci, x.value[0])
        return Element(x.ci, x.value)

    return q, project


# ---------------------------------------------------------------------------
# Essential embeddings
# ---------------------------------------------------------------------------


def is_essential_embedding(m: ChainMap) -> bool:
    """Structural essentiality test.

    An embedding is essential exactly when the congruence of the smallest
    nontrivial filter of the target identifies two image points: the last
    source component must land in the last target component, and when that
    target component is lexicographic the image must dip into its radical
    below the top.
    """
    if m.source.is_trivial:
        return m.target.is_trivial
    if m.index_map[-1] != m.target.index - 1:
        return False
    if m.target.components[-1].tag == LEX:
        return m.locals[-1].src.tag in (CANC, LEX)
    return True


def essential_by_filter_definition(m: ChainMap, caps: int = 3) -> bool:
    """Essentiality per the congruence definition, decided on windows.

    Exact on fully finite chains; used as the oracle the structural test is
    validated against.
    """
    tgt = m.target
    fc = filters(tgt)
    fmin = fc.smallest_nontrivial
    if fmin is None:
        return m.source.is_trivial
    if m.source.is_trivial:
        return False
    image = [apply_map(m, x) for x in enumerate_elements(m.source, caps)]
    for x in image:
        for y in image:
            if x != y and order_le(tgt, x, y):
                if filter_contains(tgt, fmin, chain_op(tgt, "imp", y, x)):
                    return True
    return False


@dataclass(frozen=True)
class Essentialization:
    """Largest congruence of the target that misses the image, and the
    induced essential embedding into the quotient."""

    theta0: Filter
    quotient: Chain
    map: ChainMap
    project: Callable[[Element], Element]


def _restricts_trivially(m: ChainMap, f: Filter) -> bool:
    if m.source.is_trivial:
        return True
    last_pos = m.index_map[-1]
    if f.cut > last_pos:
        return True
    if f.cut == last_pos and f.radical:
        return m.locals[-1].src.tag == FIN  # image meets the radical only at top
    return False


def essentialize(m: ChainMap) -> Essentialization:
    """Quotient the target by the largest filter whose congruence restricts
    trivially to the image; the induced embedding is essential."""
    fc = filters(m.target)
    theta0 = next(f for f in fc.filters if _restricts_trivially(m, f))
    q, project = quotient_by_filter(m.target, theta0)
    locs = []
    for i, p in enumerate(m.index_map):
        lm = m.locals[i]
        if theta0.radical and p == theta0.cut:
            locs.append(LocalMap(lm.src, fin_luk(lm.dst.k)))
        else:
            locs.append(lm)
    induced = ChainMap(
        source=m.source,
        target=q,
        index_map=m.index_map,
        locals=tuple(locs),
    )
    if not is_essential_embedding(induced):
        raise AssertionError("essentialization produced a non-essential map")
    return Essentialization(theta0=theta0, quotient=q, map=induced, project=project)
