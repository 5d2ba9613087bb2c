"""Propositional formulas over chains: evaluation, consequence over finite
generator sets, and deductive-interpolant search.

Interpolants are searched inside the algebra of term functions on the shared
variables: starting from the variable projections and constants, the closure
under the pointwise connectives is generated smallest-first; any element
lying between the premise and the conclusion is an interpolant, and its
construction trace is the returned formula.  For varieties generated by
finite chains this closure is finite, so exhausting it without a hit
certifies that no interpolant exists.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Optional, Sequence, Union

from .core import Chain, Element, TOP, bottom_element, chain_op
from .decompose import finite_elements


@dataclass(frozen=True)
class Var:
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    symbol: str  # "1" or "0"

    def __repr__(self):
        return self.symbol


@dataclass(frozen=True)
class BinOp:
    op: str  # mul / imp / meet / join
    left: "Formula"
    right: "Formula"

    def __repr__(self):
        return pretty_formula(self)


Formula = Union[Var, Const, BinOp]

_OP_SYMBOL = {"mul": "*", "imp": "->", "meet": "/\\", "join": "\\/"}


def pretty_formula(f: Formula) -> str:
    def render(g: Formula, parent: int) -> str:
        # precedence levels: * = 3, -> = 2, /\ \/ = 1
        if isinstance(g, (Var, Const)):
            return repr(g) if isinstance(g, Var) else g.symbol
        level = {"mul": 3, "imp": 2, "meet": 1, "join": 1}[g.op]
        left = render(g.left, level + (1 if g.op == "imp" else 0))
        right = render(g.right, level if g.op == "imp" else level + 1)
        text = f"{left} {_OP_SYMBOL[g.op]} {right}"
        return f"({text})" if level < parent else text

    return render(f, 0)


class FormulaError(ValueError):
    pass


_FORMULA_TOKEN = re.compile(
    r"\s*(?:(?P<var>[a-z][a-zA-Z0-9_]*)|(?P<const>[01])|"
    r"(?P<op>\*|->|/\\|\\/|\(|\)))"
)


def parse_formula(text: str) -> Formula:
    """Parse with precedence * over -> over the lattice connectives."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _FORMULA_TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise FormulaError(f"unexpected character {text[pos]!r} at {pos}")
        kind = "var" if m.group("var") else ("const" if m.group("const") else "op")
        tokens.append((kind, m.group(kind), m.start()))
        pos = m.end()
    i = 0

    def peek():
        return tokens[i][1] if i < len(tokens) else None

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def parse_atom() -> Formula:
        if i >= len(tokens):
            raise FormulaError("unexpected end of formula")
        kind, val, pos = take()
        if kind == "var":
            return Var(val)
        if kind == "const":
            return Const(val)
        if val == "(":
            f = parse_lattice()
            if peek() != ")":
                raise FormulaError(f"missing ')' at {pos}")
            take()
            return f
        raise FormulaError(f"unexpected {val!r} at {pos}")

    def parse_mul() -> Formula:
        f = parse_atom()
        while peek() == "*":
            take()
            f = BinOp("mul", f, parse_atom())
        return f

    def parse_imp() -> Formula:
        f = parse_mul()
        if peek() == "->":
            take()
            return BinOp("imp", f, parse_imp())
        return f

    def parse_lattice() -> Formula:
        f = parse_imp()
        while peek() in ("/\\", "\\/"):
            _, val, _ = take()
            f = BinOp("meet" if val == "/\\" else "join", f, parse_imp())
        return f

    f = parse_lattice()
    if i != len(tokens):
        raise FormulaError(f"trailing input {tokens[i][1]!r} at {tokens[i][2]}")
    return f


def formula_vars(f: Formula) -> frozenset:
    if isinstance(f, Var):
        return frozenset([f.name])
    if isinstance(f, Const):
        return frozenset()
    return formula_vars(f.left) | formula_vars(f.right)


def eval_formula(f: Formula, c: Chain, valuation: Mapping[str, Element]) -> Element:
    if isinstance(f, Var):
        if f.name not in valuation:
            raise FormulaError(f"unassigned variable {f.name!r}")
        return valuation[f.name]
    if isinstance(f, Const):
        if f.symbol == "1":
            return TOP
        if not c.bottom:
            raise FormulaError("constant 0 needs designated bounds")
        return bottom_element(c)
    return chain_op(
        c,
        f.op,
        eval_formula(f.left, c, valuation),
        eval_formula(f.right, c, valuation),
    )


@dataclass(frozen=True)
class ConsequenceResult:
    holds: bool
    countermodel: Optional[tuple] = None  # (generator index, valuation dict)


def consequence(
    premise: Formula, conclusion: Formula, gens: Sequence[Chain]
) -> ConsequenceResult:
    """Truth preservation on every valuation into every generator chain.

    Validity on the generators settles validity in the generated variety,
    consequence being preserved under subalgebras and products.
    """
    names = sorted(formula_vars(premise) | formula_vars(conclusion))
    for gi, g in enumerate(gens):
        elems = finite_elements(g)
        for combo in product(elems, repeat=len(names)):
            val = dict(zip(names, combo))
            if eval_formula(premise, g, val) == TOP:
                if eval_formula(conclusion, g, val) != TOP:
                    return ConsequenceResult(False, (gi, val))
    return ConsequenceResult(True)


def fold_premises(premises: Sequence[Formula]) -> Formula:
    """Fold a finite premise set into one formula by strong conjunction;
    sound for designated-value consequence since a product is designated
    exactly when every factor is."""
    if not premises:
        return Const("1")
    out = premises[0]
    for f in premises[1:]:
        out = BinOp("mul", out, f)
    return out


class ClosureLimitError(RuntimeError):
    pass


class NotLocallyFiniteError(ValueError):
    pass


def _point_tables(premise, conclusion, shared, gens):
    """Per-chain valuation sweeps projected onto shared-variable points.

    Returns the point count, the projection vectors of the shared variables,
    and for each formula a list of (point index, formula is top) pairs over
    all full valuations.
    """
    shared = list(shared)
    points = []
    point_index = {}
    projections = [[] for _ in shared]
    for gi, g in enumerate(gens):
        for combo in product(finite_elements(g), repeat=len(shared)):
            point_index[(gi, combo)] = len(points)
            points.append((gi, combo))
            for vi, x in enumerate(combo):
                projections[vi].append(x)

    def sweep(f: Formula):
        out = []
        names = sorted(formula_vars(f) | set(shared))
        spos = [names.index(s) for s in shared]
        for gi, g in enumerate(gens):
            for combo in product(finite_elements(g), repeat=len(names)):
                val = dict(zip(names, combo))
                pt = point_index[(gi, tuple(combo[p] for p in spos))]
                out.append((pt, eval_formula(f, g, val) == TOP))
        return out

    return points, [tuple(p) for p in projections], sweep(premise), sweep(conclusion)


def find_interpolant(
    premise: Formula,
    conclusion: Formula,
    gens: Sequence[Chain],
    limit: int = 100_000,
) -> Optional[Formula]:
    """Interpolant in the shared variables, or None when provably none exists.

    Requires the consequence to hold and every generator to be fully finite.
    The closure is generated in a fixed smallest-first order, so the returned
    formula is deterministic.
    """
    for g in gens:
        if not g.is_finite:
            raise NotLocallyFiniteError(
                "unsupported: not locally finite (symbolic generator)"
            )
    if not consequence(premise, conclusion, gens).holds:
        raise ValueError("premise does not entail conclusion on the generators")
    shared = sorted(formula_vars(premise) & formula_vars(conclusion))
    points, projections, prem_sweep, conc_sweep = _point_tables(
        premise, conclusion, shared, gens
    )

    def qualifies(vec) -> bool:
        for pt, prem_top in prem_sweep:
            if prem_top and vec[pt] != TOP:
                return False
        for pt, conc_top in conc_sweep:
            if vec[pt] == TOP and not conc_top:
                return False
        return True

    def combine(op, a, b):
        return tuple(
            chain_op(gens[points[p][0]], op, a[p], b[p]) for p in range(len(points))
        )

    queue = []
    seen = {}

    def push(vec, term) -> Optional[Formula]:
        if vec in seen:
            return None
        seen[vec] = term
        queue.append((vec, term))
        if len(queue) > limit:
            raise ClosureLimitError(f"closure exceeded {limit} elements")
        return term if qualifies(vec) else None

    top_vec = tuple(TOP for _ in points)
    hit = push(top_vec, Const("1"))
    if hit is not None:
        return hit
    if gens and gens[0].bottom:
        bot_vec = tuple(bottom_element(gens[points[p][0]]) for p in range(len(points)))
        hit = push(bot_vec, Const("0"))
        if hit is not None:
            return hit
    for vi, name in enumerate(shared):
        hit = push(projections[vi], Var(name))
        if hit is not None:
            return hit

    i = 0
    while i < len(queue):
        vec_i, term_i = queue[i]
        for j in range(i + 1):
            vec_j, term_j = queue[j]
            for op in ("mul", "meet", "join"):
                hit = push(combine(op, vec_i, vec_j), BinOp(op, term_i, term_j))
                if hit is not None:
                    return hit
            for a, ta, b, tb in (
                (vec_i, term_i, vec_j, term_j),
                (vec_j, term_j, vec_i, term_i),
            ):
                hit = push(combine("imp", a, b), BinOp("imp", ta, tb))
                if hit is not None:
                    return hit
        i += 1
    return None


def closure_size(premise, conclusion, gens) -> int:
    """Size of the full shared-variable term-function closure (diagnostic)."""
    shared = sorted(formula_vars(premise) & formula_vars(conclusion))
    points, projections, _, _ = _point_tables(premise, conclusion, shared, gens)

    def combine(op, a, b):
        return tuple(
            chain_op(gens[points[p][0]], op, a[p], b[p]) for p in range(len(points))
        )

    seen = set()
    queue = []

    def push(vec):
        if vec not in seen:
            seen.add(vec)
            queue.append(vec)

    push(tuple(TOP for _ in points))
    if gens and gens[0].bottom:
        push(tuple(bottom_element(gens[points[p][0]]) for p in range(len(points))))
    for proj in projections:
        push(proj)
    i = 0
    while i < len(queue):
        for j in range(i + 1):
            for op in ("mul", "meet", "join"):
                push(combine(op, queue[i], queue[j]))
            push(combine("imp", queue[i], queue[j]))
            push(combine("imp", queue[j], queue[i]))
        i += 1
    return len(seen)


def dip_report(v) -> dict:
    """Deductive-interpolation verdict for a variety input, phrased at the
    logic level; equivalent to the amalgamation classification."""
    from .classify import classify_ap_bh, classify_ap_bl
    from .dsl import pretty_chain, pretty_class_expr

    verdict = classify_ap_bl(v) if v.bl_mode else classify_ap_bh(v)
    return {
        "deductive_interpolation": verdict.ap,
        "amalgamation": verdict.ap,
        "canonical": pretty_class_expr(verdict.canonical) if verdict.canonical else None,
        "interval": verdict.interval,
        "witness": pretty_chain(verdict.witness) if verdict.witness else None,
        "equivalent_properties": [
            "strong deductive interpolation",
            "strong Robinson property",
        ],
    }


# ---------------------------------------------------------------------------
# Random formula mining (test support; seeded via BLCALC_SEED)
# ---------------------------------------------------------------------------


def random_formula(rng, names: Sequence[str], depth: int, allow_zero: bool) -> Formula:
    if depth <= 0 or rng.random() < 0.3:
        pool = list(names) + (["0", "1"] if allow_zero else ["1"])
        pick = rng.choice(pool)
        if pick in ("0", "1"):
            return Const(pick)
        return Var(pick)
    op = rng.choice(["mul", "imp", "meet", "join"])
    return BinOp(
        op,
        random_formula(rng, names, depth - 1, allow_zero),
        random_formula(rng, names, depth - 1, allow_zero),
    )


def mine_valid_consequences(
    gens: Sequence[Chain],
    count: int,
    names: Sequence[str],
    rng,
    depth: int = 3,
) -> list:
    """Randomly generated pairs (premise, conclusion) that are valid
    consequences over the generators."""
    allow_zero = bool(gens and gens[0].bottom)
    out = []
    while len(out) < count:
        premise = random_formula(rng, names, depth, allow_zero)
        conclusion = random_formula(rng, names, depth, allow_zero)
        if consequence(premise, conclusion, gens).holds:
            out.append((premise, conclusion))
    return out
