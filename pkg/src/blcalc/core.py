"""Exact element model for totally ordered basic hoops and BL-chains.

A chain is an ordinal sum of sum-irreducible Wajsberg components, all
sharing a single top element.  Five component kinds are representable:

  W k   the finite Lukasiewicz chain with k+1 elements (local values 0..k)
  Wo k  the lexicographic chain on pairs below (k, 0) in Z x_lex Z
  Z     the negative cone of the integers (local values <= 0)
  U     the rationals of [0, 1] under the standard MV operations
  T     the one-element hoop

Every operation is exact: integers, integer pairs, and Fractions.  Values
of the infinite kinds are manipulated symbolically; exhaustive subroutines
work on finite truncation windows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Optional, Union

FIN = "W"
LEX = "Wo"
CANC = "Z"
UNIT = "U"
TRIV = "T"

_TAG_RANK = {FIN: 0, LEX: 1, CANC: 2, UNIT: 3, TRIV: 4}

LocalValue = Union[int, tuple, Fraction]


@dataclass(frozen=True)
class Kind:
    """A sum-irreducible component kind, parameterized where applicable."""

    tag: str
    k: int = 0

    def __post_init__(self):
        if self.tag not in _TAG_RANK:
            raise ValueError(f"unknown component tag {self.tag!r}")
        if self.tag in (FIN, LEX) and self.k < 1:
            raise ValueError(f"{self.tag} requires a parameter >= 1, got {self.k}")
        if self.tag in (CANC, UNIT, TRIV) and self.k != 0:
            raise ValueError(f"{self.tag} takes no parameter")

    @property
    def bounded(self) -> bool:
        """Whether the component has a least element of its own."""
        return self.tag in (FIN, LEX, UNIT, TRIV)

    @property
    def finite(self) -> bool:
        return self.tag in (FIN, TRIV)

    def sort_key(self):
        return (_TAG_RANK[self.tag], self.k)

    def __repr__(self):
        if self.tag in (FIN, LEX):
            return f"{self.tag}{self.k}"
        return self.tag


def fin_luk(k: int) -> Kind:
    return Kind(FIN, k)


def lex_omega(k: int) -> Kind:
    return Kind(LEX, k)


CANC_Z = Kind(CANC)
STD_UNIT = Kind(UNIT)
TRIVIAL = Kind(TRIV)


def local_top(kind: Kind) -> LocalValue:
    if kind.tag == FIN:
        return kind.k
    if kind.tag == LEX:
        return (kind.k, 0)
    if kind.tag == CANC:
        return 0
    if kind.tag == UNIT:
        return Fraction(1)
    return 0  # TRIV: lone element


def local_bottom(kind: Kind) -> LocalValue:
    """Least local value; only bounded kinds have one."""
    if kind.tag == FIN:
        return 0
    if kind.tag == LEX:
        return (0, 0)
    if kind.tag == UNIT:
        return Fraction(0)
    if kind.tag == TRIV:
        return 0
    raise ValueError(f"{kind} has no least element")


def value_in_range(kind: Kind, v: LocalValue) -> bool:
    if kind.tag == FIN:
        return isinstance(v, int) and 0 <= v <= kind.k
    if kind.tag == LEX:
        if not (isinstance(v, tuple) and len(v) == 2):
            return False
        a, b = v
        if not (isinstance(a, int) and isinstance(b, int) and 0 <= a <= kind.k):
            return False
        if a == 0 and b < 0:
            return False
        if a == kind.k and b > 0:
            return False
        return True
    if kind.tag == CANC:
        return isinstance(v, int) and v <= 0
    if kind.tag == UNIT:
        return isinstance(v, (Fraction, int)) and 0 <= v <= 1
    return v == 0  # TRIV


def local_le(kind: Kind, a: LocalValue, b: LocalValue) -> bool:
    if kind.tag == LEX:
        return a <= b  # tuple comparison is lexicographic
    return a <= b


def _lex_clamp_max(v: tuple, lo: tuple) -> tuple:
    return v if v >= lo else lo


def _lex_clamp_min(v: tuple, hi: tuple) -> tuple:
    return v if v <= hi else hi


def component_op(kind: Kind, op: str, a: LocalValue, b: LocalValue) -> LocalValue:
    """Apply mul/imp/meet/join inside one component (top allowed)."""
    if not value_in_range(kind, a) or not value_in_range(kind, b):
        raise ValueError(f"value out of range for {kind}: {a!r}, {b!r}")
    if op == "meet":
        return a if local_le(kind, a, b) else b
    if op == "join":
        return b if local_le(kind, a, b) else a
    t = kind.tag
    if t == FIN:
        if op == "mul":
            return max(a + b - kind.k, 0)
        if op == "imp":
            return min(kind.k - a + b, kind.k)
    elif t == CANC:
        if op == "mul":
            return a + b
        if op == "imp":
            return min(b - a, 0)
    elif t == LEX:
        a1, b1 = a
        a2, b2 = b
        if op == "mul":
            return _lex_clamp_max((a1 + a2 - kind.k, b1 + b2), (0, 0))
        if op == "imp":
            return _lex_clamp_min((kind.k - a1 + a2, b2 - b1), (kind.k, 0))
    elif t == UNIT:
        a = Fraction(a)
        b = Fraction(b)
        if op == "mul":
            return max(a + b - 1, Fraction(0))
        if op == "imp":
            return min(1 - a + b, Fraction(1))
    elif t == TRIV:
        return 0
    raise ValueError(f"unknown operation {op!r}")


@dataclass(frozen=True)
class Element:
    """A chain element: the shared top, or (component index, local value below top)."""

    ci: int
    value: Optional[LocalValue]

    @property
    def is_top(self) -> bool:
        return self.ci < 0

    def __repr__(self):
        if self.is_top:
            return "top"
        return f"({self.ci}|{self.value})"


TOP = Element(-1, None)


@dataclass(frozen=True)
class Chain:
    """An ordinal sum of non-trivial component kinds with one shared top.

    The trivial chain is represented by an empty component tuple.  When
    ``bottom`` is set the chain is a BL-chain: its least element is part of
    the signature and the first component is the MV part.
    """

    components: tuple = ()
    bottom: bool = False

    @property
    def index(self) -> int:
        return len(self.components)

    @property
    def is_trivial(self) -> bool:
        return not self.components

    @property
    def is_finite(self) -> bool:
        return all(k.finite for k in self.components)

    @property
    def size(self) -> int:
        """Number of elements of a fully finite chain."""
        if not self.is_finite:
            raise ValueError("infinite chain has no size")
        return 1 + sum(k.k for k in self.components)

    def kind_at(self, ci: int) -> Kind:
        return self.components[ci]

    def __repr__(self):
        from .dsl import pretty_chain

        return pretty_chain(self)


def chain(kinds, bottom: bool = False) -> Chain:
    """Build a chain, absorbing trivial components and validating the shape."""
    comps = tuple(k for k in kinds if k.tag != TRIV)
    if bottom and comps and not comps[0].bounded:
        raise ValueError("a BL-chain needs a bounded first component")
    return Chain(comps, bottom)


def element(c: Chain, ci: int, value: LocalValue) -> Element:
    """Element constructor; local tops normalize to the shared top."""
    if not (0 <= ci < c.index):
        raise ValueError(f"component index {ci} out of range for {c!r}")
    kind = c.components[ci]
    if kind.tag == UNIT:
        value = Fraction(value)
    if not value_in_range(kind, value):
        raise ValueError(f"value {value!r} out of range for {kind}")
    if value == local_top(kind):
        return TOP
    return Element(ci, value)


def bottom_element(c: Chain) -> Element:
    """Least element of a chain whose first component is bounded."""
    if c.is_trivial:
        return TOP
    return element(c, 0, local_bottom(c.components[0]))


def _check_member(c: Chain, x: Element):
    if x.is_top:
        return
    if not (0 <= x.ci < c.index) or not value_in_range(c.components[x.ci], x.value):
        raise ValueError(f"element {x!r} does not belong to {c!r}")


def chain_op(c: Chain, op: str, x: Element, y: Element) -> Element:
    """Ordinal-sum operation table.

    Within a component the local operation applies.  Across components the
    product is the lower argument, the implication is top when the left
    argument lies strictly below, and the right argument otherwise; meet and
    join are the order extremes.
    """
    _check_member(c, x)
    _check_member(c, y)
    if x.is_top and y.is_top:
        return TOP
    if x.is_top:
        return TOP if op == "join" else y  # 1*y = y, 1->y = y, meet y
    if y.is_top:
        if op == "imp" or op == "join":
            return TOP
        return x
    if x.ci == y.ci:
        v = component_op(c.components[x.ci], op, x.value, y.value)
        return element(c, x.ci, v)
    lo, hi = (x, y) if x.ci < y.ci else (y, x)
    if op in ("mul", "meet"):
        return lo
    if op == "join":
        return hi
    if op == "imp":
        return TOP if x.ci < y.ci else y
    raise ValueError(f"unknown operation {op!r}")


def order_le(c: Chain, x: Element, y: Element) -> bool:
    _check_member(c, x)
    _check_member(c, y)
    if y.is_top:
        return True
    if x.is_top:
        return False
    if x.ci != y.ci:
        return x.ci < y.ci
    return local_le(c.components[x.ci], x.value, y.value)


def _window_values(kind: Kind, cap: int) -> list:
    """Local values of one component inside the truncation window, ascending.

    Includes the component bottom where one exists; never the local top.
    """
    t = kind.tag
    if t == FIN:
        return list(range(kind.k))
    if t == CANC:
        return list(range(-cap, 0))
    if t == LEX:
        out = []
        for a in range(kind.k + 1):
            lo = 0 if a == 0 else -cap
            hi = -1 if a == kind.k else cap
            out.extend((a, b) for b in range(lo, hi + 1))
        return out
    if t == UNIT:
        vals = {Fraction(p, q) for q in range(1, cap + 1) for p in range(q)}
        return sorted(vals)
    return []  # TRIV


def enumerate_elements(c: Chain, caps: Union[int, Mapping[str, int]] = 3) -> list:
    """Window of elements of a chain, ascending and ending with the top.

    Finite kinds enumerate completely; Z/Wo/U kinds truncate to ``caps``
    (an int, or a per-tag mapping).
    """

    def cap_for(kind: Kind) -> int:
        if isinstance(caps, int):
            cap = caps
        else:
            cap = caps.get(kind.tag, 3)
        if cap < 1:
            raise ValueError("caps must be positive")
        return cap

    out = []
    for ci, kind in enumerate(c.components):
        out.extend(Element(ci, v) for v in _window_values(kind, cap_for(kind)))
    out.append(TOP)
    return out


# ---------------------------------------------------------------------------
# Raw finite chains given by operation tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RawChain:
    """A finite chain presented by mul/imp tables over indices 0..n-1.

    Element order is index order; index n-1 is the unit (and top); meet and
    join are min and max of indices.
    """

    size: int
    mul: tuple
    imp: tuple
    bottom: bool = False

    def __post_init__(self):
        n = self.size
        if n < 1:
            raise ValueError("size must be >= 1")
        for name, tab in (("mul", self.mul), ("imp", self.imp)):
            if len(tab) != n or any(len(row) != n for row in tab):
                raise ValueError(f"{name} table is not {n}x{n}")
            if any(not (0 <= v < n) for row in tab for v in row):
                raise ValueError(f"{name} table has out-of-range entries")

    @property
    def top(self) -> int:
        return self.size - 1

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "mul": [list(r) for r in self.mul],
            "imp": [list(r) for r in self.imp],
            "bottom_designated": self.bottom,
        }

    @staticmethod
    def from_json(data: dict) -> "RawChain":
        return RawChain(
            size=data["size"],
            mul=tuple(tuple(r) for r in data["mul"]),
            imp=tuple(tuple(r) for r in data["imp"]),
            bottom=bool(data.get("bottom_designated", False)),
        )


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of the exhaustive law checks on a raw chain."""

    commutative_monoid: bool
    residuation: bool
    integrality: bool
    divisibility: bool
    prelinearity: bool
    mv_identity: bool
    cancellativity: bool
    bounded: bool
    failures: tuple = ()  # (law name, witness indices) pairs

    @property
    def is_basic_hoop_chain(self) -> bool:
        return (
            self.commutative_monoid
            and self.residuation
            and self.integrality
            and self.divisibility
            and self.prelinearity
        )

    @property
    def is_bl_chain(self) -> bool:
        return self.is_basic_hoop_chain and self.bounded

    @property
    def is_mv_chain(self) -> bool:
        return self.is_bl_chain and self.mv_identity

    def to_json(self) -> dict:
        return {
            "commutative_monoid": self.commutative_monoid,
            "residuation": self.residuation,
            "integrality": self.integrality,
            "divisibility": self.divisibility,
            "prelinearity": self.prelinearity,
            "mv_identity": self.mv_identity,
            "cancellativity": self.cancellativity,
            "bounded": self.bounded,
            "basic_hoop_chain": self.is_basic_hoop_chain,
            "bl_chain": self.is_bl_chain,
            "mv_chain": self.is_mv_chain,
            "failures": [[law, list(w)] for law, w in self.failures],
        }


def check_axioms(t: RawChain) -> AxiomReport:
    """Exhaustively check the residuated-chain laws on a raw table."""
    n = t.size
    top = n - 1
    rng = range(n)
    mul, imp = t.mul, t.imp
    failures = []

    def fail(law, *witness):
        failures.append((law, witness))

    monoid = True
    for x, y in product(rng, rng):
        if mul[x][y] != mul[y][x]:
            fail("commutativity", x, y)
            monoid = False
            break
    if monoid:
        for x in rng:
            if mul[x][top] != x:
                fail("unit", x)
                monoid = False
                break
    if monoid:
        for x, y, z in product(rng, rng, rng):
            if mul[mul[x][y]][z] != mul[x][mul[y][z]]:
                fail("associativity", x, y, z)
                monoid = False
                break

    residuation = True
    for x, y, z in product(rng, rng, rng):
        if (mul[x][y] <= z) != (x <= imp[y][z]):
            fail("residuation", x, y, z)
            residuation = False
            break

    integrality = all(mul[x][y] <= min(x, y) for x in rng for y in rng)
    if not integrality:
        fail("integrality")

    divisibility = True
    for x, y in product(rng, rng):
        if mul[x][imp[x][y]] != min(x, y):
            fail("divisibility", x, y)
            divisibility = False
            break

    prelinearity = True
    for x, y in product(rng, rng):
        if max(imp[x][y], imp[y][x]) != top:
            fail("prelinearity", x, y)
            prelinearity = False
            break

    mv_identity = True
    for x, y in product(rng, rng):
        if imp[imp[x][y]][y] != max(x, y):
            fail("mv_identity", x, y)
            mv_identity = False
            break

    cancellativity = True
    for x, y in product(rng, rng):
        if imp[x][mul[x][y]] != y:
            fail("cancellativity", x, y)
            cancellativity = False
            break

    return AxiomReport(
        commutative_monoid=monoid,
        residuation=residuation,
        integrality=integrality,
        divisibility=divisibility,
        prelinearity=prelinearity,
        mv_identity=mv_identity,
        cancellativity=cancellativity,
        bounded=t.bottom,
        failures=tuple(failures),
    )
