"""Skein evaluation of the colored-link invariant F(x, w, t).

The evaluator walks each diagram from fixed basepoints and resolves the first
crossing met on its under-strand:

* strands of one color: F(L+) = t w^2 F(L-) + (t-1) w F(L~), and its inverse;
* strands of different colors: F(L+) = w^2 F(L-) + w^2 (t-1) F(L-,~) + w (t-1) F(L~),
  and its mirror form, where ``,~`` merges the two colors.

Descending diagrams are unlinks and are read off the closed form
F(O_n^c) = y^(n-c) / (wx)^(n-1). Crossingless split circles are peeled off
with factor 1/(wx) (fresh color) or y/(wx) (shared color).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Mapping

from .coloring import Coloration, canonical_labels, merge_colors, restrict_after_smooth
from .diagram import (
    Diagram,
    bad_crossings,
    simplify_tracked,
    smooth_tracked,
    switch,
)
from .ratfun import ONE, RatFun, inv_wx, iv_coeffs, scale_coeffs, va_coeffs, vb_coeffs, y_constant

_Y = y_constant()
_INV_WX = inv_wx()
_Y_OVER_WX = _Y * _INV_WX
_IV = {1: iv_coeffs(1), -1: iv_coeffs(-1)}
_V = {1: va_coeffs(), -1: vb_coeffs()}


def eval_unlink(n: int, c: int) -> RatFun:
    """F on n split circles carrying c colors."""
    if not 1 <= c <= n:
        raise ValueError(f"need 1 <= c <= n, got n={n}, c={c}")
    return _Y ** (n - c) * _INV_WX ** (n - 1)


def absorb_factor(shared: bool) -> RatFun:
    return _Y_OVER_WX if shared else _INV_WX


def absorb_split_circle(d: Diagram, col: Coloration) -> tuple[Diagram, Coloration, RatFun]:
    """Remove the last free loop of d; return the reduced pair and the factor it contributes."""
    if d.free_loops == 0:
        raise ValueError("diagram has no free loop")
    if d.n_components < 2:
        raise ValueError("cannot remove the only component")
    loop = d.n_components - 1
    labels = list(col.block_of)
    color = labels.pop(loop)
    factor = absorb_factor(color in labels)
    reduced = Diagram(d.crossings, d.signs, d.free_loops - 1)
    return reduced, Coloration.from_labels(labels), factor


# -- internal state: diagram + per-arc colors -----------------------------

def _arc_colors(d: Diagram, col: Coloration) -> tuple[dict[int, int], list[int]]:
    if col.n != d.n_components:
        raise ValueError(
            f"coloration has {col.n} entries but the diagram has {d.n_components} components"
        )
    cycles = d.arc_cycles()
    arc_color = {a: col.block_of[ci] for ci, cyc in enumerate(cycles) for a in cyc}
    loop_colors = list(col.block_of[len(cycles):])
    return arc_color, loop_colors


def coloration_of(d: Diagram, arc_color: Mapping[int, int], loop_colors=()) -> Coloration:
    labels = [arc_color[cyc[0]] for cyc in d.arc_cycles()] + list(loop_colors)
    return Coloration.from_labels(labels)


def memo_key(d: Diagram, arc_color: Mapping[int, int]) -> tuple:
    """Traversal encoding of a loop-free colored diagram, independent of arc labels.

    Arcs are renumbered in first-visit order; the least encoding over all
    starting arcs of the smallest components is used.
    """
    succ = d.arc_successor
    cycles = d.arc_cycles()
    if not cycles:
        return ((), ())
    crossings_at: dict[int, list[int]] = {}
    for i, x in enumerate(d.crossings):
        for a in x:
            crossings_at.setdefault(a, []).append(i)
    shortest = min(len(c) for c in cycles)
    starts = [a for cyc in cycles if len(cyc) == shortest for a in cyc]
    best = None
    for s in starts:
        enc = _encode(d, arc_color, succ, cycles, crossings_at, s)
        if best is None or enc < best:
            best = enc
    return best


def _encode(d, arc_color, succ, cycles, crossings_at, start) -> tuple:
    label: dict[int, int] = {}
    order: list[int] = []
    comp_of = d.component_of_arc()
    pending = [start]
    done_comps: set[int] = set()
    while len(done_comps) < len(cycles):
        s = None
        while pending:
            cand = pending.pop(0)
            if comp_of[cand] not in done_comps:
                s = cand
                break
        if s is None:
            # split piece not reachable through crossings
            s = min(cyc[0] for ci, cyc in enumerate(cycles) if ci not in done_comps)
        done_comps.add(comp_of[s])
        a = s
        while True:
            label[a] = len(label) + 1
            order.append(a)
            for i in crossings_at[a]:
                for b in d.crossings[i]:
                    if b not in label:
                        pending.append(b)
            a = succ[a]
            if a == s:
                break
    crossings = tuple(
        sorted(
            (tuple(label[a] for a in x), sgn) for x, sgn in zip(d.crossings, d.signs)
        )
    )
    colors = canonical_labels(arc_color[a] for a in order)
    return (crossings, colors)


# -- trace ----------------------------------------------------------------

@dataclass
class TraceNode:
    diagram: str
    coloration: str
    rule: str
    coefficients: list[str]
    children: list["TraceNode"]
    value: str | None = None

    def to_json(self) -> dict:
        return {
            "diagram": self.diagram,
            "coloration": self.coloration,
            "rule": self.rule,
            "coefficients": self.coefficients,
            "children": [c.to_json() for c in self.children],
            "value": self.value,
        }


class Evaluator:
    """Evaluates F with a memo table shared across calls on this instance.

    Thread-safe: the memo is a plain dict guarded by a lock for inserts; values
    are immutable, so racing evaluations of one key store identical values.
    """

    def __init__(self, trace: bool = False):
        self.memo: dict[tuple, RatFun] = {}
        self._lock = threading.Lock()
        self.trace = trace
        self.nodes = 0

    def __call__(self, d: Diagram, col: Coloration) -> RatFun:
        return self.eval(d, col)

    def eval(self, d: Diagram, col: Coloration) -> RatFun:
        arc_color, loop_colors = _arc_colors(d, col)
        value, _ = self._eval_state(d, arc_color, loop_colors)
        return value

    def eval_traced(self, d: Diagram, col: Coloration) -> tuple[RatFun, TraceNode]:
        arc_color, loop_colors = _arc_colors(d, col)
        saved = self.trace
        self.trace = True
        try:
            return self._eval_state(d, arc_color, loop_colors)
        finally:
            self.trace = saved

    # the recursion proper ------------------------------------------------
    def _eval_state(self, d: Diagram, arc_color: dict[int, int], loop_colors: list[int]):
        self.nodes += 1
        d, new_loops = simplify_tracked(d)
        loop_colors = list(loop_colors) + [arc_color[a] for a in new_loops]
        if d.n_crossings == 0:
            n = len(loop_colors)
            value = eval_unlink(n, len(set(loop_colors)))
            node = self._node(d, arc_color, loop_colors, "unlink", [], [], value)
            return value, node

        # peel split circles
        factor = ONE
        arc_colors_present = {arc_color[a] for a in d.arcs}
        remaining = list(loop_colors)
        while remaining:
            color = remaining.pop()
            shared = color in arc_colors_present or color in remaining
            factor = factor * absorb_factor(shared)
        if loop_colors:
            base = Diagram(d.crossings, d.signs, 0)
            inner, child = self._eval_state(base, arc_color, [])
            value = factor * inner
            node = self._node(d, arc_color, loop_colors, "II", [str(factor)], [child], value)
            return value, node

        key = memo_key(d, arc_color)
        hit = self.memo.get(key)
        if hit is not None:
            node = self._node(d, arc_color, [], "memo", [], [], hit)
            return hit, node

        bad = bad_crossings(d)
        if not bad:
            n = d.n_components
            c = len({arc_color[cyc[0]] for cyc in d.arc_cycles()})
            value = eval_unlink(n, c)
            node = self._node(d, arc_color, [], "unlink", [], [], value)
        else:
            i = bad[0]
            sign = d.signs[i]
            a = d.crossings[i][0]
            oi, _ = d.over_in_out(i)
            cu, co = arc_color[a], arc_color[oi]
            sw = switch(d, i)
            if cu == co:
                coeffs = _IV[sign]
                sm, sm_loops = smooth_tracked(d, i)
                v1, n1 = self._eval_state(sw, arc_color, [])
                v2, n2 = self._eval_state(sm, arc_color, [arc_color[x] for x in sm_loops])
                value = coeffs[0] * v1 + coeffs[1] * v2
                children = [n1, n2]
                rule = "IV"
            else:
                coeffs = _V[sign]
                lo, hi = min(cu, co), max(cu, co)
                merged = {arc: (lo if col == hi else col) for arc, col in arc_color.items()}
                sm, sm_loops = smooth_tracked(d, i)
                v1, n1 = self._eval_state(sw, arc_color, [])
                v2, n2 = self._eval_state(sw, merged, [])
                v3, n3 = self._eval_state(sm, merged, [merged[x] for x in sm_loops])
                value = coeffs[0] * v1 + coeffs[1] * v2 + coeffs[2] * v3
                children = [n1, n2, n3]
                rule = "Va" if sign > 0 else "Vb"
            node = self._node(d, arc_color, [], rule, [str(c) for c in coeffs], children, value)
        with self._lock:
            self.memo.setdefault(key, value)
        return value, node

    def _node(self, d, arc_color, loop_colors, rule, coeffs, children, value):
        if not self.trace:
            return None
        col = coloration_of(d, arc_color, loop_colors) if d.n_components else Coloration(())
        return TraceNode(
            diagram=Diagram(d.crossings, d.signs, len(loop_colors)).to_pd(),
            coloration=str(col),
            rule=rule,
            coefficients=coeffs,
            children=[c for c in children if c is not None],
            value=str(value),
        )


def eval(d: Diagram, col: Coloration | None = None) -> RatFun:  # noqa: A001
    """F(d, col) with a fresh memo table. col defaults to the monochrome coloration."""
    if col is None:
        col = Coloration.monochrome(d.n_components)
    return Evaluator().eval(d, col)


# -- explicit skein steps (public, used for auditing and tests) ---------------

@dataclass(frozen=True)
class Child:
    coefficient: RatFun
    diagram: Diagram
    coloration: Coloration


def _strand_blocks(d: Diagram, col: Coloration, i: int) -> tuple[int, int, int, int]:
    o, u = d.crossing_components(i)
    return o, u, col.block_of[o], col.block_of[u]


def _smoothed_coloration(d: Diagram, col: Coloration, i: int) -> tuple[Diagram, Coloration]:
    """Smooth crossing i, carrying the (already equal) strand colors to the offspring."""
    o, u = d.crossing_components(i)
    old_comp = d.component_of_arc()
    n_cycles = len(d.arc_cycles())
    sm, loops = smooth_tracked(d, i)
    # old component behind each new component, in the new diagram's order
    parents = [old_comp[cyc[0]] for cyc in sm.arc_cycles()]
    parents += list(range(n_cycles, n_cycles + d.free_loops))
    parents += [old_comp[a] for a in loops]
    if o != u:
        gone = max(o, u)
        keep = [k for k in range(d.n_components) if k != gone]
        index = {k: pos for pos, k in enumerate(keep)}
        index[gone] = index[min(o, u)]
        order = [index[p] for p in parents]
        return sm, restrict_after_smooth(col, merged=(o, u), order=order)
    index = {k: k for k in range(d.n_components)}
    order, used = [], False
    for p in parents:
        if p == o and used:
            order.append(d.n_components)
        else:
            order.append(index[p])
            used = used or p == o
    return sm, restrict_after_smooth(col, split=o, order=order)


def resolve_same_color(d: Diagram, col: Coloration, i: int) -> list[Child]:
    o, u, bo, bu = _strand_blocks(d, col, i)
    if bo != bu:
        raise ValueError("strands at this crossing carry different colors")
    c_sw, c_sm = _IV[d.signs[i]]
    sm, sm_col = _smoothed_coloration(d, col, i)
    return [Child(c_sw, switch(d, i), col), Child(c_sm, sm, sm_col)]


def resolve_mixed_color(d: Diagram, col: Coloration, i: int) -> list[Child]:
    o, u, bo, bu = _strand_blocks(d, col, i)
    if bo == bu:
        raise ValueError("strands share a color; use the same-color relation")
    c1, c2, c3 = _V[d.signs[i]]
    merged = merge_colors(col, bo, bu)
    sw = switch(d, i)
    sm, sm_col = _smoothed_coloration(d, merged, i)
    return [Child(c1, sw, col), Child(c2, sw, merged), Child(c3, sm, sm_col)]


def verify_skein_identity(d: Diagram, col: Coloration, i: int, evaluator: Evaluator | None = None) -> bool:
    """Check (1/w)F(L+) - w F(L-) = (1 - 1/t) F(L~) + (1/w)(1 - 1/t) F(L+,~) at crossing i.

    Each of the four diagrams is evaluated on its own.
    """
    ev = evaluator or Evaluator()
    o, u, bo, bu = _strand_blocks(d, col, i)
    plus, minus = (d, switch(d, i)) if d.signs[i] > 0 else (switch(d, i), d)
    merged = col if bo == bu else merge_colors(col, bo, bu)
    sm, sm_col = _smoothed_coloration(d, merged, i)
    k = scale_coeffs()
    lhs = k.c_plus * ev(plus, col) - k.c_minus * ev(minus, col)
    rhs = k.c_merge * ev(sm, sm_col) + k.c_merge_plus * ev(plus, merged)
    return lhs == rhs
