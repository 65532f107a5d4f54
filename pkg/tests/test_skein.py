import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from skein_f.coloring import Coloration, all_set_partitions
from skein_f.diagram import (
    bad_crossing_count,
    braid_closure,
    compact_labels,
    mirror,
    parse_pd,
    pick_crossing,
    relabel,
    switch,
)
from skein_f.invariants import homflypt_check
from skein_f.ratfun import ONE, inv_wx, to_sympy
from skein_f.skein import (
    Evaluator,
    eval,
    eval_unlink,
    resolve_mixed_color,
    resolve_same_color,
    verify_skein_identity,
)

from conftest import braid_words

x, w, t = sp.symbols("x w t")


@st.composite
def colored_braids(draw, max_len=6):
    word, n = draw(braid_words(max_len=max_len))
    d = braid_closure(word, n)
    col = draw(st.sampled_from(all_set_partitions(d.n_components)))
    return d, col


def test_unknot_is_one():
    assert eval(parse_pd("PD[]", free_loops=1)) == ONE


def test_two_colored_unlink():
    assert eval(parse_pd("PD[] O^2"), Coloration.parse("0,1")) == inv_wx()


def test_unlink_rejects_bad_counts():
    with pytest.raises(ValueError):
        eval_unlink(2, 3)


@given(colored_braids())
def test_skein_identity_holds_at_every_crossing(dc):
    d, col = dc
    ev = Evaluator()
    assert all(verify_skein_identity(d, col, i, ev) for i in range(d.n_crossings))


@given(braid_words())
def test_single_color_values_satisfy_homflypt(wn):
    assert homflypt_check(braid_closure(*wn))


@given(colored_braids())
def test_value_independent_of_labels_and_memo(dc):
    d, col = dc
    shared = Evaluator()
    first = shared(d, col)
    assert shared(d, col) == first
    assert Evaluator()(compact_labels(d), col) == first


@settings(max_examples=15)
@given(colored_braids(max_len=5))
def test_specialization_recovers_single_color_value(dc):
    # x -> (1-t)/(t w^2 - 1) turns y into 1, so any coloring collapses to F^1
    d, col = dc
    f = to_sympy(eval(d, col)).subs(x, (1 - t) / (t * w**2 - 1))
    f1 = to_sympy(eval(d, Coloration.monochrome(d.n_components)))
    assert sp.simplify(f - f1) == 0


@settings(max_examples=15)
@given(colored_braids(max_len=5))
def test_mirror_symmetry(dc):
    d, col = dc
    f = to_sympy(eval(d, col))
    g = to_sympy(eval(mirror(d), col))
    assert sp.simplify(g - f.subs({x: x * w**2, w: 1 / w, t: 1 / t}, simultaneous=True)) == 0


def test_trace_root_matches_value():
    ev = Evaluator()
    d = braid_closure([1, 1, 1])
    value, node = ev.eval_traced(d, Coloration.monochrome(1))
    assert value == ev(d, Coloration.monochrome(1))
    assert node.to_json()["value"] == str(value)


def _measure(d, col):
    return (col.c, d.n_crossings, bad_crossing_count(d))


@given(colored_braids(max_len=7))
def test_children_decrease_termination_measure(dc):
    d, col = dc
    pick = pick_crossing(d)
    if pick is None:
        return
    i, _ = pick
    o, u = d.crossing_components(i)
    same = col.block_of[o] == col.block_of[u]
    children = resolve_same_color(d, col, i) if same else resolve_mixed_color(d, col, i)
    for child in children:
        assert _measure(child.diagram, child.coloration) < _measure(d, col)


@given(braid_words())
def test_switching_the_picked_crossing_removes_one_bad_crossing(wn):
    d = braid_closure(*wn)
    pick = pick_crossing(d)
    if pick is None:
        assert bad_crossing_count(d) == 0
        return
    assert bad_crossing_count(switch(d, pick[0])) == bad_crossing_count(d) - 1


@given(colored_braids())
def test_single_color_values_are_x_free(dc):
    d, _ = dc
    assert eval(d, Coloration.monochrome(d.n_components)).x_free()


@given(st.randoms(use_true_random=False))
def test_basepoint_order_does_not_matter(catalog, rnd):
    for entry in catalog:
        d = entry.diagram()
        if not 0 < d.n_crossings <= 9:
            continue
        arcs = d.arcs
        shuffled = arcs[:]
        rnd.shuffle(shuffled)
        moved = relabel(d, dict(zip(arcs, shuffled)))
        for col in (Coloration.monochrome(d.n_components), Coloration.discrete(d.n_components)):
            assert Evaluator()(moved, col) == Evaluator()(d, col), entry.id
