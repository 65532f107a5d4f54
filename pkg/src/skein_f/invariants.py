"""Link invariants assembled from F: multisets F^c_p, sums, pair comparison.

Also hosts an independent Jones-polynomial oracle (Kauffman bracket state sum)
that shares nothing with the skein evaluator except the Diagram type.
"""

from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .coloring import Coloration, PartitionType, integer_partitions, partitions_of_type
from .diagram import Diagram, smooth, switch
from .ratfun import ZERO, RatFun, SFraction, W, T, substitute_jones
from .skein import Evaluator


@dataclass(frozen=True)
class FMultiset:
    p: PartitionType
    values: tuple[RatFun, ...]  # sorted by canonical text

    @property
    def c(self) -> int:
        return self.p.c

    def total(self) -> RatFun:
        out = ZERO
        for v in self.values:
            out = out + v
        return out

    def to_json(self) -> dict:
        return {"p": list(self.p.parts), "values": [str(v) for v in self.values]}


def _evaluate_all(
    d: Diagram, cols: Sequence[Coloration], evaluator: Evaluator | None, threads: int
) -> list[RatFun]:
    ev = evaluator or Evaluator()
    if threads <= 1 or len(cols) <= 1:
        return [ev(d, col) for col in cols]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda col: ev(d, col), cols))


def f_multiset(
    d: Diagram,
    p: PartitionType,
    evaluator: Evaluator | None = None,
    threads: int = 1,
) -> FMultiset:
    """Values of F over every coloration of type p (all set partitions, no symmetry reduction)."""
    if p.n != d.n_components:
        raise ValueError(f"type {p} does not match {d.n_components} components")
    cols = partitions_of_type(d.n_components, p)
    values = _evaluate_all(d, cols, evaluator, threads)
    return FMultiset(p, tuple(sorted(values, key=RatFun.sort_key)))


def f_by_coloration(
    d: Diagram, p: PartitionType, evaluator: Evaluator | None = None
) -> list[tuple[Coloration, RatFun]]:
    ev = evaluator or Evaluator()
    return [(col, ev(d, col)) for col in partitions_of_type(d.n_components, p)]


def types_with_colors(n: int, c: int) -> list[PartitionType]:
    return [p for p in integer_partitions(n) if p.c == c]


def sigma(d: Diagram, c: int, evaluator: Evaluator | None = None, threads: int = 1) -> RatFun:
    """Sum of F^c_p, defined when exactly one type p has c parts (e.g. any 3-component link)."""
    n = d.n_components
    types = types_with_colors(n, c)
    if len(types) != 1:
        raise ValueError(f"sigma^{c} is not defined for {n}-component links")
    return f_multiset(d, types[0], evaluator, threads).total()


@dataclass
class TypeVerdict:
    p: PartitionType
    equal: bool
    values_1: FMultiset
    values_2: FMultiset

    def to_json(self) -> dict:
        return {
            "p": list(self.p.parts),
            "equal": self.equal,
            "values_L1": [str(v) for v in self.values_1.values],
            "values_L2": [str(v) for v in self.values_2.values],
        }


@dataclass
class ConjectureCheck:
    precondition_met: bool
    residual: RatFun

    def to_json(self) -> dict:
        return {"precondition_met": self.precondition_met, "residual": str(self.residual)}


@dataclass
class PairReport:
    links: tuple[str, str]
    per_type: list[TypeVerdict]
    sigma: dict[int, tuple[RatFun, RatFun]] = field(default_factory=dict)
    conjecture: ConjectureCheck | None = None

    @property
    def distinguished(self) -> bool:
        return any(not v.equal for v in self.per_type)

    def to_json(self) -> dict:
        out = {
            "links": list(self.links),
            "distinguished": self.distinguished,
            "per_type": [v.to_json() for v in self.per_type],
            "sigma": {
                str(c): {"L1": str(a), "L2": str(b), "equal": a == b}
                for c, (a, b) in sorted(self.sigma.items())
            },
        }
        if self.conjecture is not None:
            out["conjecture"] = self.conjecture.to_json()
        return out


def compare_pair(
    d1: Diagram,
    d2: Diagram,
    types: Sequence[PartitionType],
    names: tuple[str, str] = ("L1", "L2"),
    evaluator: Evaluator | None = None,
    threads: int = 1,
) -> PairReport:
    if d1.n_components != d2.n_components:
        raise ValueError(
            f"component counts differ: {d1.n_components} vs {d2.n_components}"
        )
    ev = evaluator or Evaluator()
    verdicts = []
    for p in types:
        m1 = f_multiset(d1, p, ev, threads)
        m2 = f_multiset(d2, p, ev, threads)
        verdicts.append(TypeVerdict(p, m1.values == m2.values, m1, m2))
    report = PairReport(names, verdicts)
    n = d1.n_components
    for c in range(1, n + 1):
        if len(types_with_colors(n, c)) == 1:
            report.sigma[c] = (sigma(d1, c, ev, threads), sigma(d2, c, ev, threads))
    if n == 3:
        report.conjecture = conjecture_residual(d1, d2, ev, threads)
    return report


def conjecture_residual(
    d1: Diagram, d2: Diagram, evaluator: Evaluator | None = None, threads: int = 1
) -> ConjectureCheck:
    """(sigma^3 - sigma^2)(L1) - (sigma^3 - sigma^2)(L2), with the sigma^1 precondition."""
    for d in (d1, d2):
        if d.n_components != 3:
            raise ValueError("the conjecture concerns three-component links")
    ev = evaluator or Evaluator()
    s = {(i, c): sigma(d, c, ev, threads) for i, d in enumerate((d1, d2)) for c in (1, 2, 3)}
    pre = s[(0, 1)] == s[(1, 1)]
    residual = (s[(0, 3)] - s[(0, 2)]) - (s[(1, 3)] - s[(1, 2)])
    return ConjectureCheck(pre, residual)


# -- HOMFLYPT / Jones -----------------------------------------------------

def homflypt_check(d: Diagram, evaluator: Evaluator | None = None) -> bool:
    """Check the HOMFLYPT skein relation on single-color values at every crossing.

    With l = i/(w s), m = i(1/s - s) and t = s^2, the relation
    l P(L+) + l^-1 P(L-) + m P(L0) = 0, scaled by -i s, reads
    P(L+)/w - w t P(L-) + (1 - t) P(L0) = 0, which only involves integral
    powers of t and is checked exactly.
    """
    ev = evaluator or Evaluator()
    mono = Coloration.monochrome(d.n_components)
    inv_w = RatFun.monomial(ew=-1)
    for i in range(d.n_crossings):
        plus, minus = (d, switch(d, i)) if d.signs[i] > 0 else (switch(d, i), d)
        zero = smooth(d, i)
        p_plus = ev(plus, mono)
        p_minus = ev(minus, mono)
        p_zero = ev(zero, Coloration.monochrome(zero.n_components))
        if not (p_plus.x_free() and p_minus.x_free() and p_zero.x_free()):
            return False
        if not (inv_w * p_plus - W * T * p_minus + (1 - T) * p_zero).is_zero():
            return False
    return True


def jones(d: Diagram, evaluator: Evaluator | None = None) -> SFraction:
    """Jones polynomial in s = t^(1/2) from the single-color value of F."""
    ev = evaluator or Evaluator()
    return substitute_jones(ev(d, Coloration.monochrome(d.n_components)))


def jones_bracket(d: Diagram) -> dict[int, int]:
    """Jones polynomial via the Kauffman bracket state sum, as {exponent of s: coeff}.

    A-smoothing at X[a,b,c,d] joins (a,b) and (c,d); V = (-A^3)^(-writhe) <D>
    with A = t^(-1/4), so A^k contributes s^(-k/2).
    """
    n = d.n_crossings
    bracket: dict[int, int] = defaultdict(int)  # exponent of A -> coeff
    labels = sorted({a for x in d.crossings for a in x})
    index = {a: k for k, a in enumerate(labels)}
    for state in product((0, 1), repeat=n):
        parent = list(range(len(labels)))

        def find(u: int) -> int:
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        for (a, b, c, e), s in zip(d.crossings, state):
            pairs = ((a, b), (c, e)) if s == 0 else ((a, e), (b, c))
            for u, v in pairs:
                ru, rv = find(index[u]), find(index[v])
                if ru != rv:
                    parent[ru] = rv
        loops = len({find(k) for k in range(len(labels))}) + d.free_loops
        n_a = state.count(0)
        a_exp = n_a - (n - n_a)
        # delta^(loops - 1), delta = -A^2 - A^-2
        poly = {a_exp: 1}
        for _ in range(loops - 1):
            nxt: dict[int, int] = defaultdict(int)
            for e, cf in poly.items():
                nxt[e + 2] -= cf
                nxt[e - 2] -= cf
            poly = nxt
        for e, cf in poly.items():
            bracket[e] += cf
    wr = d.writhe()
    sign = -1 if wr % 2 else 1
    out: dict[int, int] = defaultdict(int)
    for e, cf in bracket.items():
        if cf:
            a_total = e - 3 * wr
            if a_total % 2:
                raise ArithmeticError("odd A-exponent in normalized bracket")
            out[-a_total // 2] += sign * cf
    return {e: c for e, c in sorted(out.items()) if c}
