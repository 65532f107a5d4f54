import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from skein_f.coloring import Coloration, all_set_partitions
from skein_f.diagram import PDError, braid_closure, parse_pd
from skein_f.invariants import jones_bracket
from skein_f.moves import (
    add_kink,
    connected_sum,
    connected_sum_colored,
    faces,
    poke,
    r3,
    r3_candidates,
    random_move,
)
from skein_f.skein import Evaluator

from conftest import braid_words

BORROMEAN = "PD[X[6,1,7,2], X[12,8,9,7], X[4,12,1,11], X[10,5,11,6], X[8,4,5,3], X[2,9,3,10]]"


@given(braid_words())
def test_euler_characteristic_of_faces(wn):
    d = braid_closure(*wn)
    if d.free_loops:
        return
    # faces are traced per projection piece, each with its own outer face
    pieces = _projection_pieces(d)
    assert d.n_crossings - 2 * d.n_crossings + len(faces(d)) == 2 * pieces


def _projection_pieces(d):
    parent = list(range(d.n_crossings))

    def find(u):
        while parent[u] != u:
            u = parent[u]
        return u

    where = {}
    for i, row in enumerate(d.crossings):
        for a in row:
            where.setdefault(a, []).append(i)
    for ends in where.values():
        a, b = find(ends[0]), find(ends[1])
        parent[a] = b
    return len({find(i) for i in range(d.n_crossings)})


@given(braid_words(max_len=5), st.integers(0, 3), st.data())
def test_kink_preserves_every_colored_value(wn, kind, data):
    d = braid_closure(*wn)
    if not d.crossings:
        return
    lab = data.draw(st.sampled_from(d.arcs))
    k = add_kink(d, lab, kind)
    assert k.n_crossings == d.n_crossings + 1
    ev = Evaluator()
    for col in all_set_partitions(d.n_components):
        assert Evaluator()(k, col) == ev(d, col)


@given(braid_words(max_len=5), st.integers(0, 10**6))
def test_random_moves_preserve_values(wn, seed):
    d = braid_closure(*wn)
    if not d.crossings:
        return
    rng = random.Random(seed)
    moved = d
    for _ in range(2):
        _, moved = random_move(moved, rng)
    assert moved.n_components == d.n_components
    ev = Evaluator()
    for col in all_set_partitions(d.n_components):
        assert Evaluator()(moved, col) == ev(d, col)


def test_poke_and_r3_on_trefoil_keep_jones():
    d = parse_pd("PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]")
    want = jones_bracket(d)
    face = next(f for f in faces(d) if len({e.label for e in f}) >= 2)
    for e_over in (True, False):
        poked = poke(d, face, 0, 1, e_over)
        assert poked.n_crossings == 5 and jones_bracket(poked) == want


def test_r3_on_borromean_preserves_all_colorings():
    d = parse_pd(BORROMEAN)
    ev = Evaluator()
    rng = random.Random(3)
    moved = d
    for _ in range(6):
        tri = r3_candidates(moved)
        if tri:
            moved = r3(moved, rng.choice(tri))
        else:
            _, moved = random_move(moved, rng)
    for col in all_set_partitions(3):
        assert Evaluator()(moved, col) == ev(d, col)


def test_poke_needs_two_arcs():
    d = braid_closure([1, 1, 1])
    face = faces(d)[0]
    with pytest.raises(PDError):
        poke(d, face, 0, 0)


@given(braid_words(strands=(2, 3), max_len=4), braid_words(strands=(2, 3), max_len=4), st.data())
def test_connected_sum_multiplies(w1, w2, data):
    d1, d2 = braid_closure(*w1), braid_closure(*w2)
    if d1.free_loops or d2.free_loops or not d1.crossings or not d2.crossings:
        return
    col1 = data.draw(st.sampled_from(all_set_partitions(d1.n_components)))
    col2 = data.draw(st.sampled_from(all_set_partitions(d2.n_components)))
    a1, a2 = data.draw(st.sampled_from(d1.arcs)), data.draw(st.sampled_from(d2.arcs))
    d, col = connected_sum_colored(d1, col1, a1, d2, col2, a2)
    assert d.n_components == d1.n_components + d2.n_components - 1
    ev = Evaluator()
    assert ev(d, col) == ev(d1, col1) * ev(d2, col2)


def test_connected_sum_of_trefoils_is_granny():
    tref = braid_closure([1, 1, 1])
    granny = connected_sum(tref, tref.arcs[0], tref, tref.arcs[0])
    ev = Evaluator()
    mono = Coloration.monochrome(1)
    assert ev(granny, mono) == ev(tref, mono) ** 2
    with pytest.raises(PDError):
        connected_sum(parse_pd("PD[] O^1"), 1, tref, 1)
