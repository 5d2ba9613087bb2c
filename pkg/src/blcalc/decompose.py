"""Decompose finite chains given by tables into ordinal sums of finite
Wajsberg components, and flatten structural chains back to tables."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Chain,
    Kind,
    RawChain,
    chain,
    chain_op,
    check_axioms,
    enumerate_elements,
    fin_luk,
)


def finite_elements(c: Chain) -> list:
    """All elements of a fully finite chain, ascending (top last)."""
    if not c.is_finite:
        raise ValueError(f"{c!r} has symbolic components")
    return enumerate_elements(c, caps=1)


def flatten(c: Chain) -> RawChain:
    """Tabulate a fully finite chain; index order is element order."""
    elems = finite_elements(c)
    pos = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    mul = tuple(
        tuple(pos[chain_op(c, "mul", x, y)] for y in elems) for x in elems
    )
    imp = tuple(
        tuple(pos[chain_op(c, "imp", x, y)] for y in elems) for x in elems
    )
    return RawChain(size=n, mul=mul, imp=imp, bottom=c.bottom)


def same_component(t: RawChain, a: int, b: int) -> bool:
    """Whether two non-top elements lie in the same Wajsberg component.

    Tests (a -> b) -> b = (b -> a) -> a on the tables.  The top belongs to
    every component, so callers must not ask about it.
    """
    top = t.top
    if a == top or b == top:
        raise ValueError("the top lies in every component")
    if not (0 <= a < t.size and 0 <= b < t.size):
        raise ValueError("element index out of range")
    return t.imp[t.imp[a][b]][b] == t.imp[t.imp[b][a]][a]


def classify_component(t: RawChain, block) -> Kind:
    """Identify a component block (indices below top) as a finite chain kind.

    The block plus the top must carry the Lukasiewicz tables under the order
    isomorphism sending the i-th smallest block element to i.
    """
    block = sorted(block)
    m = len(block)
    idx = {e: i for i, e in enumerate(block)}
    idx[t.top] = m
    kind = fin_luk(m)

    def local(e: int) -> int:
        return idx[e]

    for x in block + [t.top]:
        for y in block + [t.top]:
            got_mul = t.mul[x][y]
            got_imp = t.imp[x][y]
            want_mul = max(local(x) + local(y) - m, 0)
            want_imp = min(m - local(x) + local(y), m)
            if got_mul not in idx or local(got_mul) != want_mul:
                raise ValueError(
                    f"block {block} is not a Wajsberg component: mul at ({x},{y})"
                )
            if got_imp not in idx or local(got_imp) != want_imp:
                raise ValueError(
                    f"block {block} is not a Wajsberg component: imp at ({x},{y})"
                )
    return kind


@dataclass(frozen=True)
class Decomposition:
    """Partition of a finite chain into its ordinal-sum components."""

    source: RawChain
    chain: Chain
    blocks: tuple  # tuple of tuples of element indices, ascending, top excluded

    def to_json(self) -> dict:
        return {
            "components": [
                {"kind": kind.tag, "k": kind.k, "elements": list(block)}
                for kind, block in zip(self.chain.components, self.blocks)
            ],
            "order": "ascending",
            "bottom_designated": self.chain.bottom,
        }


def decompose(t: RawChain) -> Decomposition:
    """Split a finite chain into maximal same-component blocks and identify
    each as a finite Lukasiewicz chain.

    The same-component predicate must be an equivalence on the carrier minus
    the top with order-convex classes; both facts are checked rather than
    assumed, and violations signal corrupt tables.
    """
    report = check_axioms(t)
    if not report.is_basic_hoop_chain:
        raise ValueError(f"axiom check failed: {report.failures!r}")
    n = t.size
    if n == 1:
        return Decomposition(source=t, chain=chain((), bottom=t.bottom), blocks=())

    blocks = []
    current = [0]
    for e in range(1, n - 1):
        if same_component(t, current[-1], e):
            current.append(e)
        else:
            blocks.append(tuple(current))
            current = [e]
    blocks.append(tuple(current))

    for block in blocks:
        for a in block:
            for b in block:
                if not same_component(t, a, b):
                    raise ValueError(
                        f"component predicate not transitive on block {block}"
                    )
    for i, bi in enumerate(blocks):
        for bj in blocks[i + 1:]:
            for a in bi:
                for b in bj:
                    if same_component(t, a, b):
                        raise ValueError(
                            f"blocks {bi} and {bj} are not separated"
                        )

    kinds = tuple(classify_component(t, block) for block in blocks)
    return Decomposition(
        source=t,
        chain=chain(kinds, bottom=t.bottom),
        blocks=tuple(blocks),
    )
