import pytest
from hypothesis import given

from skein_f.coloring import Coloration, PartitionType
from skein_f.diagram import braid_closure, parse_pd
from skein_f.invariants import (
    compare_pair,
    conjecture_residual,
    f_multiset,
    jones,
    jones_bracket,
    sigma,
    types_with_colors,
)
from skein_f.skein import Evaluator

from conftest import braid_words


@given(braid_words(max_len=7))
def test_jones_from_f_matches_bracket(wn):
    d = braid_closure(*wn)
    sf = jones(d)
    assert sf.k == 0
    assert dict(sf.terms) == jones_bracket(d)


def test_textbook_jones_values():
    assert jones_bracket(braid_closure([1, 1, 1])) == {2: 1, 6: 1, 8: -1}
    assert jones_bracket(braid_closure([1, -2, 1, -2])) == {-4: 1, -2: -1, 0: 1, 2: -1, 4: 1}
    assert jones_bracket(braid_closure([1, 1])) == {1: -1, 5: -1}


def test_unlink_multiset_has_three_equal_values():
    m = f_multiset(parse_pd("PD[] O^3"), PartitionType((2, 1)))
    assert len(m.values) == 3 and len(set(m.values)) == 1


def test_multiset_threads_agree():
    d = braid_closure([1, -2, 1, 1, -2, 3, -2])
    p = PartitionType((1,) * d.n_components)
    one = f_multiset(d, p, Evaluator(), 1)
    many = f_multiset(d, p, Evaluator(), 4)
    assert one == many


def test_multiset_rejects_wrong_type():
    with pytest.raises(ValueError):
        f_multiset(parse_pd("PD[] O^2"), PartitionType((1, 1, 1)))


def test_sigma_definedness():
    assert [p.parts for p in types_with_colors(3, 2)] == [(2, 1)]
    assert len(types_with_colors(4, 2)) == 2
    with pytest.raises(ValueError):
        sigma(parse_pd("PD[] O^4"), 2)


def test_sigma_of_unlink_sums_multiset():
    d = parse_pd("PD[] O^3")
    assert sigma(d, 2) == f_multiset(d, PartitionType((2, 1))).total()


def test_compare_reports_and_json_schema():
    hopf = braid_closure([1, 1])
    unlink = parse_pd("PD[] O^2")
    rep = compare_pair(hopf, unlink, [PartitionType((1, 1)), PartitionType((2,))], ("hopf", "O2"))
    assert rep.distinguished
    js = rep.to_json()
    assert set(js) == {"links", "distinguished", "per_type", "sigma"}
    assert set(js["per_type"][0]) == {"p", "equal", "values_L1", "values_L2"}
    assert set(js["sigma"]["1"]) == {"L1", "L2", "equal"}
    with pytest.raises(ValueError):
        compare_pair(hopf, parse_pd("PD[] O^3"), [PartitionType((1, 1))])


def test_compare_equal_links():
    a = braid_closure([1, 1, 2, 2])
    b = braid_closure([2, 2, 1, 1])
    rep = compare_pair(a, b, [PartitionType((1, 1, 1)), PartitionType((2, 1))])
    assert not rep.distinguished
    assert rep.conjecture is not None and rep.conjecture.residual.is_zero()


def test_conjecture_needs_three_components():
    with pytest.raises(ValueError):
        conjecture_residual(braid_closure([1, 1]), braid_closure([1, 1]))


def test_named_pair_residual(catalog):
    check = conjecture_residual(catalog.diagram("L11n358{0,1}"), catalog.diagram("L11n418{0,0}"))
    assert check.precondition_met and check.residual.is_zero()


def test_monochrome_hopf_value_is_x_free(catalog):
    value = Evaluator()(catalog.diagram("Hopf+"), Coloration.monochrome(2))
    assert value.x_free()
