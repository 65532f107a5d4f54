"""Reidemeister moves that grow or rearrange a diagram, plus connected sum.

Used to perturb diagrams for invariance testing. Everything works directly on
PD positions; faces come from the cyclic (counterclockwise) order of the four
positions at each crossing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .coloring import Coloration
from .diagram import Diagram, PDError, compact_labels, relabel, switch

Dart = tuple[int, int]  # (crossing, position)


def _ends(d: Diagram) -> dict[int, list[Dart]]:
    ends: dict[int, list[Dart]] = {}
    for i, x in enumerate(d.crossings):
        for p, lab in enumerate(x):
            ends.setdefault(lab, []).append((i, p))
    return ends


def head_position(d: Diagram, i: int, lab: int) -> int:
    """Position at crossing i where arc ``lab`` enters."""
    x = d.crossings[i]
    over_in = 3 if d.signs[i] > 0 else 1
    for p in (0, over_in):
        if x[p] == lab:
            return p
    raise PDError(f"arc {lab} does not enter crossing {i}")


def _is_tail(d: Diagram, dart: Dart) -> bool:
    i, p = dart
    over_out = 1 if d.signs[i] > 0 else 3
    return p in (2, over_out)


@dataclass(frozen=True)
class Edge:
    """One side of an arc on a face boundary, traversed with the face on the left."""

    start: Dart
    end: Dart
    label: int
    forward: bool  # traversal agrees with the arc's orientation


def faces(d: Diagram) -> list[list[Edge]]:
    ends = _ends(d)
    used: set[Dart] = set()
    out = []
    for i in range(d.n_crossings):
        for p in range(4):
            if (i, p) in used:
                continue
            face = []
            dart = (i, p)
            while dart not in used:
                used.add(dart)
                lab = d.crossings[dart[0]][dart[1]]
                a, b = ends[lab]
                other = b if a == dart else a
                face.append(Edge(dart, other, lab, _is_tail(d, dart)))
                dart = (other[0], (other[1] - 1) % 4)
            out.append(face)
    return out


def _fresh(d: Diagram, k: int) -> list[int]:
    top = max(d.arcs, default=0)
    return list(range(top + 1, top + 1 + k))


def _with(d: Diagram, rows: list[list[int]], signs: list[int]) -> Diagram:
    return Diagram(tuple(tuple(r) for r in rows), tuple(signs), d.free_loops)


def add_kink(d: Diagram, lab: int, kind: int) -> Diagram:
    """R1: insert a curl on arc ``lab``; ``kind`` in 0..3 picks side and sign."""
    if not d.crossings:
        raise PDError("no arcs to kink")
    ends = _ends(d)
    head = next(dart for dart in ends[lab] if not _is_tail(d, dart))
    n1, n2 = _fresh(d, 2)
    rows = [list(x) for x in d.crossings]
    signs = list(d.signs)
    rows[head[0]][head[1]] = n2
    e = lab
    new, sign = [
        ([e, n2, n1, n1], 1),
        ([e, n1, n1, n2], -1),
        ([n1, n1, n2, e], 1),
        ([n1, e, n2, n1], -1),
    ][kind]
    rows.append(new)
    signs.append(sign)
    return _with(d, rows, signs)


def poke(d: Diagram, face: list[Edge], ie: int, jf: int, e_over: bool = True) -> Diagram:
    """R2: push boundary edge ``face[ie]`` across ``face[jf]`` inside the face."""
    e, f = face[ie], face[jf]
    if e.label == f.label:
        raise PDError("R2 needs two different arcs")
    e2, e3, f2, f3 = _fresh(d, 4)
    e1, f1 = e.label, f.label
    rows = [list(x) for x in d.crossings]
    signs = list(d.signs)
    # the segments nearest the edge's start keep the old label
    rows[e.end[0]][e.end[1]] = e3
    rows[f.end[0]][f.end[1]] = f3
    se = 1 if e.forward else -1
    sf = 1 if f.forward else -1
    # relabel actual orientation: a backward edge runs e3 -> e2 -> e1
    if sf > 0:
        xr = [f2, e2, f3, e1]
        xl = [f1, e2, f2, e3]
    else:
        xr = [f3, e1, f2, e2]
        xl = [f2, e3, f1, e2]
    rows += [xr, xl]
    signs += [se * sf, -se * sf]
    out = _with(d, rows, signs)
    if not e_over:
        out = switch(switch(out, len(rows) - 2), len(rows) - 1)
    return out


def r3_candidates(d: Diagram) -> list[list[Edge]]:
    """Triangular faces where one strand passes over both others."""
    out = []
    for face in faces(d):
        if len(face) != 3:
            continue
        xs = {edge.start[0] for edge in face}
        if len(xs) != 3:
            continue
        levels = [(_level(edge.start), _level(edge.end)) for edge in face]
        if ("over", "over") in levels and ("under", "under") in levels:
            out.append(face)
    return out


def _level(dart: Dart) -> str:
    return "under" if dart[1] in (0, 2) else "over"


def r3(d: Diagram, face: list[Edge]) -> Diagram:
    """R3: slide the bottom strand of a triangle across the opposite crossing.

    Along each of the three strands the two triangle crossings swap roles: the
    first now carries the strand's outgoing outside arc, the second its incoming
    one, and the triangle edge label moves to the far side of both.
    """
    rows = [list(x) for x in d.crossings]
    for edge in face:
        s = edge.label
        tail, head = (edge.start, edge.end) if edge.forward else (edge.end, edge.start)
        p_cross, p_out = tail
        q_cross, q_in = head
        p_in = (p_out + 2) % 4
        q_out = (q_in + 2) % 4
        s1 = d.crossings[p_cross][p_in]
        s3 = d.crossings[q_cross][q_out]
        rows[p_cross][p_in] = s
        rows[p_cross][p_out] = s3
        rows[q_cross][q_in] = s1
        rows[q_cross][q_out] = s
    return _with(d, rows, list(d.signs))


def random_move(d: Diagram, rng: random.Random) -> tuple[str, Diagram]:
    """Apply one random R1, R2 or R3 move (R3 only where a triangle allows it)."""
    if not d.crossings:
        raise PDError("random moves need at least one crossing")
    choices = ["R1", "R2"]
    tri = r3_candidates(d)
    if tri:
        choices += ["R3", "R3"]
    kind = rng.choice(choices)
    if kind == "R1":
        return kind, add_kink(d, rng.choice(d.arcs), rng.randrange(4))
    if kind == "R3":
        return kind, r3(d, rng.choice(tri))
    options = [f for f in faces(d) if len({e.label for e in f}) >= 2]
    if not options:
        return "R1", add_kink(d, rng.choice(d.arcs), rng.randrange(4))
    face = rng.choice(options)
    while True:
        ie, jf = rng.randrange(len(face)), rng.randrange(len(face))
        if face[ie].label != face[jf].label:
            break
    return kind, poke(d, face, ie, jf, e_over=rng.random() < 0.5)


def connected_sum(d1: Diagram, arc1: int, d2: Diagram, arc2: int) -> Diagram:
    """Band d1 and d2 together by cutting arc1 and arc2 and crossing the ends."""
    return compact_labels(_band(d1, arc1, d2, arc2)[0])


def connected_sum_colored(
    d1: Diagram, col1: Coloration, arc1: int, d2: Diagram, col2: Coloration, arc2: int
) -> tuple[Diagram, Coloration]:
    """Connected sum carrying colors: the two banded components must share a color,
    and every other color of d2 is kept apart from the colors of d1."""
    d, shift = _band(d1, arc1, d2, arc2)
    comp1, comp2 = d1.component_of_arc(), d2.component_of_arc()
    joined = col2.block_of[comp2[arc2]]
    arc_color = {a: ("L", col1.block_of[comp1[a]]) for a in d1.arcs}
    for a in d2.arcs:
        blk = col2.block_of[comp2[a]]
        arc_color[a + shift] = ("L", col1.block_of[comp1[arc1]]) if blk == joined else ("R", blk)
    cycles = d.arc_cycles()
    labels = [arc_color[cyc[0]] for cyc in cycles]
    loops1 = [("L", b) for b in col1.block_of[len(d1.arc_cycles()):]]
    loops2 = [("R", b) for b in col2.block_of[len(d2.arc_cycles()):]]
    return d, Coloration.from_labels(labels + loops1 + loops2)


def _band(d1: Diagram, arc1: int, d2: Diagram, arc2: int) -> tuple[Diagram, int]:
    if not d1.crossings or not d2.crossings:
        raise PDError("connected sum needs crossings on both sides")
    shift = max(d1.arcs) + 1 - min(d2.arcs)
    d2 = relabel(d2, {a: a + shift for a in d2.arcs})
    arc2 += shift
    h1 = next(i for i, x in enumerate(d1.crossings) if arc1 in x and _enters(d1, i, arc1))
    h2 = next(i for i, x in enumerate(d2.crossings) if arc2 in x and _enters(d2, i, arc2))
    rows1 = [list(x) for x in d1.crossings]
    rows2 = [list(x) for x in d2.crossings]
    rows1[h1][head_position(d1, h1, arc1)] = arc2
    rows2[h2][head_position(d2, h2, arc2)] = arc1
    out = Diagram(
        tuple(tuple(r) for r in rows1 + rows2),
        d1.signs + d2.signs,
        d1.free_loops + d2.free_loops,
    )
    return out, shift


def _enters(d: Diagram, i: int, lab: int) -> bool:
    try:
        head_position(d, i, lab)
        return True
    except PDError:
        return False
