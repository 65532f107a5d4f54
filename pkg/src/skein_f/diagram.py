"""Oriented link diagrams given as planar-diagram (PD) codes.

A crossing is ``X[a,b,c,d]``: arc labels listed counterclockwise starting from
the incoming under-strand, so ``a -> c`` is the under-strand and ``b, d`` carry
the over-strand. The over-strand direction is the crossing's sign:
``d -> b`` is a positive (right-handed) crossing, ``b -> d`` a negative one.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Crossing = tuple[int, int, int, int]

POSITIVE = 1
NEGATIVE = -1


class PDError(ValueError):
    """Malformed or inconsistent PD input."""


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Crossing, ...]
    signs: tuple[int, ...]
    free_loops: int = 0
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(self.crossings) != len(self.signs):
            raise PDError("one sign per crossing required")

    # -- structure ----------------------------------------------------
    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self) -> list[int]:
        return sorted({a for x in self.crossings for a in x})

    def over_in_out(self, i: int) -> tuple[int, int]:
        a, b, c, d = self.crossings[i]
        return (d, b) if self.signs[i] > 0 else (b, d)

    @property
    def arc_successor(self) -> dict[int, int]:
        if "succ" not in self._cache:
            succ = {}
            for i, (a, b, c, d) in enumerate(self.crossings):
                succ[a] = c
                oi, oo = self.over_in_out(i)
                succ[oi] = oo
            self._cache["succ"] = succ
        return self._cache["succ"]

    def arc_cycles(self) -> list[list[int]]:
        """Arc cycles of the successor permutation, ordered by smallest label.

        Each cycle starts at its smallest arc (the component's basepoint).
        """
        if "cycles" not in self._cache:
            succ = self.arc_successor
            seen: set[int] = set()
            cycles = []
            for start in sorted(succ):
                if start in seen:
                    continue
                cyc = [start]
                seen.add(start)
                nxt = succ[start]
                while nxt != start:
                    cyc.append(nxt)
                    seen.add(nxt)
                    nxt = succ[nxt]
                cycles.append(cyc)
            self._cache["cycles"] = cycles
        return self._cache["cycles"]

    @property
    def n_components(self) -> int:
        return len(self.arc_cycles()) + self.free_loops

    def component_of_arc(self) -> dict[int, int]:
        if "comp" not in self._cache:
            self._cache["comp"] = {
                a: ci for ci, cyc in enumerate(self.arc_cycles()) for a in cyc
            }
        return self._cache["comp"]

    def crossing_components(self, i: int) -> tuple[int, int]:
        """(over component, under component) at crossing i."""
        comp = self.component_of_arc()
        a = self.crossings[i][0]
        oi, _ = self.over_in_out(i)
        return comp[oi], comp[a]

    def writhe(self) -> int:
        return sum(self.signs)

    def linking_number(self, ci: int, cj: int) -> float:
        total = 0
        for i in range(self.n_crossings):
            o, u = self.crossing_components(i)
            if {o, u} == {ci, cj} and o != u:
                total += self.signs[i]
        return total / 2

    # -- text / json --------------------------------------------------
    def to_pd(self) -> str:
        body = ", ".join(f"X[{a},{b},{c},{d}]" for a, b, c, d in self.crossings)
        text = f"PD[{body}]"
        if self.free_loops:
            text += f" O^{self.free_loops}"
        return text

    def to_json(self) -> dict:
        return {
            "crossings": [list(x) for x in self.crossings],
            "free_loops": self.free_loops,
            "signs": list(self.signs),
        }

    def __str__(self) -> str:
        return self.to_pd()


# -- parsing --------------------------------------------------------------

_PD_RE = re.compile(r"^\s*PD\s*\[(.*)\]\s*(?:O\^?(\d+))?\s*$", re.S)
_X_RE = re.compile(r"X\s*\[\s*([^\]]*)\]")


def _infer_signs(crossings: Sequence[Crossing]) -> tuple[int, ...]:
    """Decide over-strand directions so that every arc has one head and one tail."""
    # head[a] / tail[a]: (crossing, position) where arc a ends / starts
    occurrences: dict[int, list[tuple[int, int]]] = {}
    for i, x in enumerate(crossings):
        for pos, a in enumerate(x):
            occurrences.setdefault(a, []).append((i, pos))
    for a, occ in occurrences.items():
        if len(occ) != 2:
            raise PDError(f"arc {a} appears {len(occ)} times (expected 2)")

    # role[(i, pos)] = True if arc enters the crossing there
    role: dict[tuple[int, int], bool] = {}
    for i in range(len(crossings)):
        role[(i, 0)] = True
        role[(i, 2)] = False

    def other(i: int, pos: int) -> tuple[int, int]:
        a = crossings[i][pos]
        o1, o2 = occurrences[a]
        return o2 if o1 == (i, pos) else o1

    def settle(i: int, pos: int, enters: bool, queue: list) -> None:
        key = (i, pos)
        if key in role:
            if role[key] != enters:
                raise PDError(
                    f"inconsistent orientation at crossing {i} X{list(crossings[i])}, arc {crossings[i][pos]}"
                )
            return
        role[key] = enters
        queue.append(key)

    queue: list[tuple[int, int]] = list(role)
    undecided = set(range(len(crossings)))
    while True:
        while queue:
            i, pos = queue.pop()
            enters = role[(i, pos)]
            j, q = other(i, pos)
            settle(j, q, not enters, queue)
            if pos in (1, 3):
                settle(i, 4 - pos, not enters, queue)
                undecided.discard(i)
            if q in (1, 3):
                settle(j, 4 - q, enters, queue)
                undecided.discard(j)
        undecided = {i for i in undecided if (i, 1) not in role}
        if not undecided:
            break
        # over-only strand: fall back to label order (d -> b when b follows d)
        i = min(undecided)
        a, b, c, d = crossings[i]
        d_to_b = b == d + 1 or d > b + 1
        settle(i, 3, d_to_b, queue)

    return tuple(POSITIVE if role[(i, 3)] else NEGATIVE for i in range(len(crossings)))


def parse_pd(text: str | Sequence[Sequence[int]] | dict, free_loops: int = 0) -> Diagram:
    """Parse ``PD[X[a,b,c,d], ...]`` (optionally followed by ``O^k``) or its JSON mirror."""
    signs = None
    if isinstance(text, str):
        s = text.strip()
        if s.startswith("[") or s.startswith("{"):
            try:
                obj = json.loads(s)
            except json.JSONDecodeError as exc:
                raise PDError(f"malformed JSON PD code: {exc}") from None
            return parse_pd(obj, free_loops)
        m = _PD_RE.match(s)
        if not m:
            raise PDError(f"malformed PD expression: {text!r}")
        body, loops = m.group(1), m.group(2)
        free_loops += int(loops) if loops else 0
        crossings = []
        stripped = _X_RE.sub("", body).replace(",", "").strip()
        if stripped:
            raise PDError(f"unexpected text in PD body: {stripped!r}")
        for xm in _X_RE.finditer(body):
            parts = [p.strip() for p in xm.group(1).split(",")]
            if len(parts) != 4 or not all(p.lstrip("-").isdigit() for p in parts):
                raise PDError(f"crossing X[{xm.group(1)}] must have four integer labels")
            crossings.append(tuple(int(p) for p in parts))
    elif isinstance(text, dict):
        crossings = [tuple(x) for x in text.get("crossings", [])]
        free_loops += int(text.get("free_loops", 0))
        if "signs" in text:
            signs = tuple(int(v) for v in text["signs"])
    else:
        crossings = [tuple(x) for x in text]

    for x in crossings:
        if len(x) != 4:
            raise PDError(f"crossing {list(x)} must have four labels")
        if any((not isinstance(a, int)) or a <= 0 for a in x):
            raise PDError(f"crossing {list(x)}: arc labels must be positive integers")
    if free_loops < 0:
        raise PDError("free loop count must be nonnegative")
    inferred = _infer_signs(crossings)
    if signs is not None:
        if len(signs) != len(crossings) or any(s not in (1, -1) for s in signs):
            raise PDError("signs must list +1/-1 per crossing")
        _check_signs(crossings, signs)
    else:
        signs = inferred
    return Diagram(tuple(crossings), signs, free_loops)


def _check_signs(crossings: Sequence[Crossing], signs: Sequence[int]) -> None:
    heads: dict[int, int] = {}
    tails: dict[int, int] = {}
    for i, (a, b, c, d) in enumerate(crossings):
        oi, oo = (d, b) if signs[i] > 0 else (b, d)
        for arc, book in ((a, heads), (oi, heads), (c, tails), (oo, tails)):
            if arc in book:
                raise PDError(f"arc {arc} has two {'heads' if book is heads else 'tails'} (crossing {i})")
            book[arc] = i


def from_json(obj: dict | str) -> Diagram:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return parse_pd(obj)


# -- local moves ----------------------------------------------------------

def crossing_sign(d: Diagram, i: int) -> int:
    return d.signs[i]


def switch(d: Diagram, i: int) -> Diagram:
    """Exchange over and under strands at crossing i."""
    a, b, c, e = d.crossings[i]
    if d.signs[i] > 0:
        new = (e, a, b, c)  # over was e -> b
    else:
        new = (b, c, e, a)  # over was b -> e
    crossings = list(d.crossings)
    crossings[i] = new
    signs = list(d.signs)
    signs[i] = -signs[i]
    return Diagram(tuple(crossings), tuple(signs), d.free_loops)


class _Merger:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, a: int) -> int:
        root = a
        while self.parent.get(root, root) != root:
            root = self.parent[root]
        while self.parent.get(a, a) != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            lo, hi = min(ra, rb), max(ra, rb)
            self.parent[hi] = lo


def _remove_tracked(
    d: Diagram, drop: Iterable[int], joins: Iterable[tuple[int, int]]
) -> tuple[Diagram, list[int]]:
    """Delete crossings and glue arc ends; closed leftovers become free loops.

    Glued arcs keep the smallest label of their class. Returns the new diagram
    and the surviving labels of arcs that closed up into free loops.
    """
    drop = set(drop)
    merger = _Merger()
    touched = set()
    for u, v in joins:
        merger.union(u, v)
        touched.update((u, v))
    keep = [i for i in range(d.n_crossings) if i not in drop]
    crossings = tuple(tuple(merger.find(a) for a in d.crossings[i]) for i in keep)
    signs = tuple(d.signs[i] for i in keep)
    present = {a for x in crossings for a in x}
    for i in drop:
        touched.update(d.crossings[i])
    loops = sorted({merger.find(a) for a in touched} - present)
    return Diagram(crossings, signs, d.free_loops + len(loops)), loops


def _remove_crossings(d: Diagram, drop: Iterable[int], joins: Iterable[tuple[int, int]]) -> Diagram:
    return _remove_tracked(d, drop, joins)[0]


def smooth_tracked(d: Diagram, i: int) -> tuple[Diagram, list[int]]:
    a, _, c, _ = d.crossings[i]
    oi, oo = d.over_in_out(i)
    return _remove_tracked(d, [i], [(a, oo), (oi, c)])


def smooth(d: Diagram, i: int) -> Diagram:
    """Oriented smoothing at crossing i (under-in joins over-out, over-in joins under-out)."""
    return smooth_tracked(d, i)[0]


def smooth_components(d: Diagram, i: int) -> tuple[Diagram, str]:
    """Smooth and report whether two components merged ("merge") or one split ("split")."""
    o, u = d.crossing_components(i)
    return smooth(d, i), ("merge" if o != u else "split")


# -- simplification -------------------------------------------------------

def _find_r1(d: Diagram) -> tuple[int, list[tuple[int, int]]] | None:
    for i, x in enumerate(d.crossings):
        for p in range(4):
            if x[p] == x[(p + 1) % 4]:
                return i, [(x[(p + 2) % 4], x[p]), (x[p], x[(p + 3) % 4])]
    return None


def _find_r2(d: Diagram) -> tuple[int, int, list[tuple[int, int]]] | None:
    where: dict[int, list[tuple[int, int]]] = {}
    for i, x in enumerate(d.crossings):
        for pos, a in enumerate(x):
            where.setdefault(a, []).append((i, pos))
    for p, occ in where.items():
        (i, pi), (j, pj) = occ
        if i == j or pi % 2 == 0 or pj % 2 == 0:
            continue
        # p is over at both i and j; look for an arc under at both
        for pos_i in (0, 2):
            q = d.crossings[i][pos_i]
            (i2, qi), (j2, qj) = where[q]
            if {i2, j2} != {i, j}:
                continue
            if qi % 2 or qj % 2:
                continue
            xi, xj = d.crossings[i], d.crossings[j]
            r1, r2 = xi[4 - pi], xj[4 - pj]
            q_pos_i = qi if i2 == i else qj
            q_pos_j = qj if i2 == i else qi
            s1, s2 = xi[2 - q_pos_i], xj[2 - q_pos_j]
            return i, j, [(r1, p), (p, r2), (s1, q), (q, s2)]
    return None


def simplify_tracked(d: Diagram) -> tuple[Diagram, list[int]]:
    """Simplify, also returning the labels of arcs that closed into free loops."""
    loops: list[int] = []
    while True:
        r1 = _find_r1(d)
        if r1 is not None:
            i, joins = r1
            d, lp = _remove_tracked(d, [i], joins)
            loops.extend(lp)
            continue
        r2 = _find_r2(d)
        if r2 is not None:
            i, j, joins = r2
            d, lp = _remove_tracked(d, [i, j], joins)
            loops.extend(lp)
            continue
        return d, loops


def simplify(d: Diagram) -> Diagram:
    """Remove Reidemeister I kinks and Reidemeister II bigons until none remain."""
    return simplify_tracked(d)[0]


# -- descending traversal -------------------------------------------------

def traversal(d: Diagram) -> list[tuple[int, bool]]:
    """Crossing visits along components (smallest-label basepoints, in label order).

    Returns (crossing index, on_over_strand) in the order they are met.
    """
    if "trav" in d._cache:
        return d._cache["trav"]
    head_at: dict[int, tuple[int, bool]] = {}
    for i, (a, _, _, _) in enumerate(d.crossings):
        head_at[a] = (i, False)
        oi, _ = d.over_in_out(i)
        head_at[oi] = (i, True)
    visits = []
    for cyc in d.arc_cycles():
        for arc in cyc:
            visits.append(head_at[arc])
    d._cache["trav"] = visits
    return visits


def bad_crossings(d: Diagram) -> list[int]:
    seen: set[int] = set()
    bad = []
    for i, over in traversal(d):
        if i in seen:
            continue
        seen.add(i)
        if not over:
            bad.append(i)
    return bad


def pick_crossing(d: Diagram) -> tuple[int, int] | None:
    """First crossing met on its under-strand, with its sign; None if descending."""
    bad = bad_crossings(d)
    if not bad:
        return None
    return bad[0], d.signs[bad[0]]


def bad_crossing_count(d: Diagram) -> int:
    return len(bad_crossings(d))


def is_descending(d: Diagram) -> bool:
    return not bad_crossings(d)


# -- construction helpers -------------------------------------------------

def unlink(n: int) -> Diagram:
    return Diagram((), (), n)


def mirror(d: Diagram) -> Diagram:
    """Mirror image: every crossing switched."""
    out = d
    for i in range(d.n_crossings):
        out = switch(out, i)
    return out


def reverse_components(d: Diagram, components: Iterable[int]) -> Diagram:
    """Reverse the orientation of the given (arc-cycle) components."""
    rev_arcs = set()
    cycles = d.arc_cycles()
    for ci in components:
        rev_arcs.update(cycles[ci])
    crossings = []
    signs = []
    for i, (a, b, c, e) in enumerate(d.crossings):
        sign = d.signs[i]
        under_rev = a in rev_arcs
        oi, _ = d.over_in_out(i)
        over_rev = oi in rev_arcs
        if under_rev:
            # rotate so the new incoming under arc (old c) comes first
            a, b, c, e = c, e, a, b
        if under_rev != over_rev:
            sign = -sign
        crossings.append((a, b, c, e))
        signs.append(sign)
    return Diagram(tuple(crossings), tuple(signs), d.free_loops)


def relabel(d: Diagram, mapping: dict[int, int]) -> Diagram:
    crossings = tuple(tuple(mapping[a] for a in x) for x in d.crossings)
    return Diagram(crossings, d.signs, d.free_loops)


def compact_labels(d: Diagram) -> Diagram:
    """Relabel arcs 1..m consecutively along components (basepoint order)."""
    mapping = {}
    for cyc in d.arc_cycles():
        for a in cyc:
            mapping[a] = len(mapping) + 1
    return relabel(d, mapping)


def disjoint_union(d1: Diagram, d2: Diagram) -> Diagram:
    shift = max(d1.arcs, default=0)
    c2 = tuple(tuple(a + shift for a in x) for x in d2.crossings)
    return Diagram(d1.crossings + c2, d1.signs + d2.signs, d1.free_loops + d2.free_loops)


def braid_closure(word: Sequence[int], strands: int | None = None) -> Diagram:
    """Closure of a braid word; generator ``k`` crosses strands k and k+1 positively,
    ``-k`` negatively. Strands no generator touches become free loops."""
    strands = strands or max((abs(g) for g in word), default=0) + 1
    labels = list(range(1, strands + 1))
    nxt = strands + 1
    rows = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise PDError(f"generator {g} out of range for {strands} strands")
        left, right = labels[i], labels[i + 1]
        rows.append([right, nxt + 1, nxt, left] if g > 0 else [left, right, nxt + 1, nxt])
        labels[i], labels[i + 1] = nxt, nxt + 1
        nxt += 2
    close = {labels[k]: k + 1 for k in range(strands)}
    rows = [[close.get(a, a) for a in row] for row in rows]
    used = {a for row in rows for a in row}
    loops = sum(1 for k in range(1, strands + 1) if k not in used)
    return parse_pd(rows, free_loops=loops) if rows else unlink(loops)
