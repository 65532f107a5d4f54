"""Acceptance suite: each check returns a pass/fail Result with a short detail.

The same functions back ``skein-f selftest`` and the acceptance tests. Output is
deterministic (seeded randomness, no timings) so runs can be diffed byte-for-byte.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Callable

from . import reference
from .catalog import Catalog
from .coloring import Coloration, PartitionType, all_set_partitions, partitions_of_type
from .diagram import Diagram, disjoint_union, parse_pd, switch
from .invariants import (
    conjecture_residual,
    f_multiset,
    jones,
    jones_bracket,
    sigma,
)
from .moves import connected_sum_colored, random_move
from .ratfun import ONE, RatFun, T, W, X
from .skein import Evaluator, verify_skein_identity

SEPARATED_PAIRS = [
    ("L11n325{1,1}", "L11n424{0,0}"),
    ("L11n356{1,0}", "L11n434{0,0}"),
    ("L10n79{1,1}", "L10n95{1,0}"),
    ("L11a404{1,1}", "L11a428{0,1}"),
    ("L10n76{1,1}", "L11n425{1,0}"),
    ("L11n358{1,1}", "L11n418{1,0}"),
]
# (link id, letter of its published values) for the pairs with equal F^3 but different F^2_(2,1)
F2_PAIRS = [
    (("L11n358{0,1}", "K"), ("L11n418{0,0}", "H")),
    (("L11a467{0,1}", "G"), ("L11a527{0,0}", "Q")),
]
R_ID, S_ID = "L10n76{1,1}", "L11n425{1,0}"
P111 = PartitionType((1, 1, 1))
P21 = PartitionType((2, 1))


@dataclass(frozen=True)
class Result:
    number: int
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        text = f"{'PASS' if self.passed else 'FAIL'}  {self.number:>2}  {self.name}"
        return f"{text}  -- {self.detail}" if self.detail else text

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed, "detail": self.detail}


class Mismatch(AssertionError):
    pass


def _expect(what: str, got: RatFun, want: RatFun) -> None:
    if got != want:
        raise Mismatch(f"{what}: expected {want}, got {got}")


class Context:
    """Catalog access plus one shared evaluator."""

    def __init__(self, catalog: Catalog, threads: int = 1):
        self.catalog = catalog
        self.threads = threads
        self.ev = Evaluator()

    def diagram(self, key: str) -> Diagram:
        if key not in self.catalog:
            raise Mismatch(f"catalog has no entry {key!r}")
        return self.catalog.diagram(key)

    def small(self, max_crossings: int, min_crossings: int = 1) -> list[tuple[str, Diagram]]:
        out = []
        for e in self.catalog:
            d = e.diagram()
            if min_crossings <= d.n_crossings <= max_crossings:
                out.append((e.id, d))
        return out

    def multiset(self, key: str, p: PartitionType) -> tuple[RatFun, ...]:
        return f_multiset(self.diagram(key), p, self.ev, self.threads).values


# -- oracles independent of the evaluator's base cases ----------------------

def unlink_closed_form(n: int, c: int) -> RatFun:
    y = X * (T * W * W - ONE) / (ONE - T)
    return y ** (n - c) / (W * X) ** (n - 1)


def _junk_piece(kind: str) -> Diagram:
    if kind == "kink":
        return parse_pd("PD[X[1,1,2,2]]")
    if kind == "clasp":  # Hopf diagram with one crossing switched
        return switch(parse_pd("PD[X[4,2,3,1], X[2,4,1,3]]"), 0)
    return parse_pd("PD[]", free_loops=1)


# -- criteria ------------------------------------------------------------------

def c1_unlink(ctx: Context) -> str:
    rng = random.Random(1)
    checked = 0
    for n in range(1, 7):
        for col in all_set_partitions(n):
            d = parse_pd("PD[]", free_loops=n)
            _expect(f"O_{n} colored {col}", ctx.ev(d, col), unlink_closed_form(n, col.c))
            checked += 1
        for c in range(1, n + 1):
            cols = [col for col in all_set_partitions(n) if col.c == c]
            for _ in range(3):
                pieces, comps, junk = [], 0, 0
                while comps < n:
                    options = ["loop", "kink"]
                    if comps + 2 <= n and junk + 2 <= 4:
                        options.append("clasp")
                    if junk + 1 > 4:
                        options = ["loop"]
                    kind = rng.choice(options)
                    piece = _junk_piece(kind)
                    pieces.append(piece)
                    comps += piece.n_components
                    junk += piece.n_crossings
                d = pieces[0]
                for piece in pieces[1:]:
                    d = disjoint_union(d, piece)
                col = rng.choice(cols)
                _expect(f"decorated O_{n} {d.to_pd()} colored {col}", ctx.ev(d, col), unlink_closed_form(n, c))
                checked += 1
    return f"{checked} colored unlink diagrams"


SIMPLE_ROWS = [
    ("L1", "unknot", "0"),
    ("L2", "O2", "0,0"),
    ("L3", "O2", "0,1"),
    ("L8", "O3", "0,0,0"),
    ("L9", "O3", "0,0,1"),
    ("L26", "O3", "0,1,2"),
]


def c2_simple(ctx: Context) -> str:
    for label, key, col in SIMPLE_ROWS:
        got = ctx.ev(ctx.diagram(key), Coloration.parse(col))
        _expect(f"{label} ({key} colored {col})", got, reference.value("simple", label))
    return f"{len(SIMPLE_ROWS)} rows"


def c3_calibration(ctx: Context) -> str:
    for key, label in (("Hopf+", "L4"), ("trefoil", "L40")):
        d = ctx.diagram(key)
        via_f = dict(jones(d, ctx.ev).terms)
        via_bracket = jones_bracket(d)
        if via_f != via_bracket:
            raise Mismatch(f"{key}: Jones from F {via_f} != bracket {via_bracket}")
        _expect(f"{key} single-color value ({label})", ctx.ev(d, Coloration.monochrome(d.n_components)),
                reference.value("simple", label))
    return "positive Hopf link and trefoil agree with the bracket"


def c4_skein_identity(ctx: Context) -> str:
    count = 0
    for key, d in ctx.small(7):
        for col in (Coloration.monochrome(d.n_components), Coloration.discrete(d.n_components)):
            for i in range(d.n_crossings):
                if not verify_skein_identity(d, col, i, ctx.ev):
                    raise Mismatch(f"{key} colored {col}: identity fails at crossing {i}")
                count += 1
    return f"{count} crossing checks"


def c5_reidemeister(ctx: Context) -> str:
    rng = random.Random(5)
    pool = ctx.small(7)
    if not pool:
        raise Mismatch("no catalog diagrams with 1..7 crossings")
    base: dict[str, dict[Coloration, RatFun]] = {}
    moves_done = []
    for k in range(50):
        key, d = pool[k % len(pool)]
        if key not in base:
            base[key] = {col: ctx.ev(d, col) for col in all_set_partitions(d.n_components)}
        steps = rng.randint(1, 3)
        for _ in range(steps):
            kind, d = random_move(d, rng)
            moves_done.append(kind)
        fresh = Evaluator()
        for col, want in base[key].items():
            _expect(f"{key} after {steps} moves ({d.to_pd()}) colored {col}", fresh(d, col), want)
    counts = {m: moves_done.count(m) for m in ("R1", "R2", "R3")}
    return "50 perturbations, moves " + ", ".join(f"{m}x{c}" for m, c in counts.items())


def c6_example_pair(ctx: Context) -> str:
    a, b = ctx.diagram("A"), ctx.diagram("B")
    _expect("F^1(A) vs F^1(B)", ctx.ev(a, Coloration.monochrome(4)), ctx.ev(b, Coloration.monochrome(4)))
    p = PartitionType((3, 1))
    ma, mb = ctx.multiset("A", p), ctx.multiset("B", p)
    a1, b1 = reference.value("four_component", "A1"), reference.value("four_component", "B1")
    if a1 not in ma:
        raise Mismatch(f"A1 = {a1} not among the (3,1) values of A: {[str(v) for v in ma]}")
    if b1 not in mb:
        raise Mismatch(f"B1 = {b1} not among the (3,1) values of B: {[str(v) for v in mb]}")
    rest_a, rest_b = set(ma) - {a1}, set(mb) - {b1}
    if rest_a != rest_b or len(rest_a) != 1:
        raise Mismatch("the remaining (3,1) values of A and B (A2, B2) differ")
    if set(ma) == set(mb):
        raise Mismatch("F^2_(3,1) does not separate A and B")
    return "F^1 equal, A2 = B2, A1 and B1 match, F^2_(3,1) differs"


def c7_separated(ctx: Context) -> str:
    for k1, k2 in SEPARATED_PAIRS:
        if ctx.multiset(k1, P111) == ctx.multiset(k2, P111):
            raise Mismatch(f"F^3 does not separate {k1} and {k2}")
    _expect(f"F^3({R_ID})", ctx.multiset(R_ID, P111)[0], reference.value("sum_pair", "R"))
    _expect(f"F^3({S_ID})", ctx.multiset(S_ID, P111)[0], reference.value("sum_pair", "S"))
    return f"{len(SEPARATED_PAIRS)} pairs separated by F^3; R and S match"


def c8_equal_f3(ctx: Context) -> str:
    for (k1, x), (k2, y) in F2_PAIRS:
        want = reference.value("equal_f3", x)
        _expect(f"F^3({k1})", ctx.multiset(k1, P111)[0], want)
        _expect(f"F^3({k2})", ctx.multiset(k2, P111)[0], want)
        for key, letter in ((k1, x), (k2, y)):
            got = list(ctx.multiset(key, P21))
            expect = sorted((reference.value("equal_f3", letter + s) for s in "ABC"), key=RatFun.sort_key)
            for g, e in zip(got, expect):
                _expect(f"F^2_(2,1)({key}) element", g, e)
        if ctx.multiset(k1, P21) == ctx.multiset(k2, P21):
            raise Mismatch(f"F^2_(2,1) does not separate {k1} and {k2}")
    return "F^3 equal and F^2_(2,1) multisets match for both pairs"


def c9_identities(ctx: Context) -> str:
    for (k1, _), (k2, _) in F2_PAIRS:
        d1, d2 = ctx.diagram(k1), ctx.diagram(k2)
        _expect(f"sigma^2 {k1} vs {k2}", sigma(d1, 2, ctx.ev, ctx.threads), sigma(d2, 2, ctx.ev, ctx.threads))
        check = conjecture_residual(d1, d2, ctx.ev, ctx.threads)
        if not check.precondition_met:
            raise Mismatch(f"sigma^1 differs for {k1}, {k2}")
        _expect(f"residual {k1} vs {k2}", check.residual, RatFun.const(0))
    r, s = ctx.diagram(R_ID), ctx.diagram(S_ID)
    lhs = sigma(r, 2, ctx.ev, ctx.threads) - sigma(s, 2, ctx.ev, ctx.threads)
    rhs = sigma(r, 3, ctx.ev, ctx.threads) - sigma(s, 3, ctx.ev, ctx.threads)
    _expect("sigma^2(R) - sigma^2(S) vs F^3(R) - F^3(S)", lhs, rhs)
    check = conjecture_residual(r, s, ctx.ev, ctx.threads)
    if not check.precondition_met:
        raise Mismatch("sigma^1 differs for R, S")
    _expect("residual R vs S", check.residual, RatFun.const(0))
    return "sums agree and residuals vanish for (K,H), (G,Q), (R,S)"


def c10_multiplicative(ctx: Context) -> str:
    rng = random.Random(10)
    pool = ctx.small(6)
    if not pool:
        raise Mismatch("no catalog diagrams with 1..6 crossings")
    for _ in range(20):
        (k1, d1), (k2, d2) = rng.choice(pool), rng.choice(pool)
        col1 = rng.choice(all_set_partitions(d1.n_components))
        col2 = rng.choice(all_set_partitions(d2.n_components))
        arc1, arc2 = rng.choice(d1.arcs), rng.choice(d2.arcs)
        d, col = connected_sum_colored(d1, col1, arc1, d2, col2, arc2)
        want = ctx.ev(d1, col1) * ctx.ev(d2, col2)
        _expect(f"{k1}[{col1}] # {k2}[{col2}] at arcs {arc1}, {arc2}", ctx.ev(d, col), want)
    return "20 colored connected sums"


CRITERIA: list[tuple[int, str, Callable[[Context], str]]] = [
    (1, "unlink closed form", c1_unlink),
    (2, "simple colored links table", c2_simple),
    (3, "sign calibration against the bracket", c3_calibration),
    (4, "skein identity at every crossing", c4_skein_identity),
    (5, "Reidemeister invariance", c5_reidemeister),
    (6, "four-component example pair", c6_example_pair),
    (7, "F^3 separates the listed pairs", c7_separated),
    (8, "equal F^3, different F^2_(2,1)", c8_equal_f3),
    (9, "sum identities and conjecture residuals", c9_identities),
    (10, "multiplicativity under connected sum", c10_multiplicative),
]


def run_one(number: int, catalog: Catalog, threads: int = 1, ctx: Context | None = None) -> Result:
    ctx = ctx or Context(catalog, threads)
    if number == 11:
        return c11_determinism(catalog, threads)
    _, name, fn = next(c for c in CRITERIA if c[0] == number)
    try:
        return Result(number, name, True, fn(ctx))
    except Mismatch as exc:
        return Result(number, name, False, str(exc))
    except (ValueError, KeyError, ArithmeticError) as exc:
        return Result(number, name, False, f"{type(exc).__name__}: {exc}")


def run(catalog: Catalog, threads: int = 1, numbers: list[int] | None = None) -> list[Result]:
    ctx = Context(catalog, threads)
    wanted = numbers or [n for n, _, _ in CRITERIA] + [11]
    return [run_one(n, catalog, threads, ctx) for n in wanted]


def c11_determinism(catalog: Catalog, threads: int) -> Result:
    name = "single- and multi-threaded reports identical"
    other = 4 if threads == 1 else 1
    numbers = [n for n, _, _ in CRITERIA]
    a = render(run(catalog, threads, numbers))
    b = render(run(catalog, other, numbers))
    if a != b:
        diff = next(
            (f"first difference: {x!r} vs {y!r}" for x, y in zip(a.splitlines(), b.splitlines()) if x != y),
            "reports differ in length",
        )
        return Result(11, name, False, diff)
    return Result(11, name, True, f"threads {threads} and {other} agree")


def render(results: list[Result]) -> str:
    return "\n".join(r.line() for r in results) + "\n"


def render_json(results: list[Result]) -> str:
    return json.dumps(
        {"passed": all(r.passed for r in results), "criteria": [r.to_json() for r in results]},
        indent=2,
    ) + "\n"


def partitions_for(n: int, p: PartitionType) -> list[Coloration]:
    return partitions_of_type(n, p)
