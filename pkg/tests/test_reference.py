"""Consistency of the bundled published values among themselves."""

import pytest

from skein_f import reference
from skein_f.ratfun import ZERO, parse_expression


def total(section, names):
    out = ZERO
    for n in names:
        out = out + reference.value(section, n)
    return out


def test_all_sections_load():
    for section in reference.SECTIONS:
        for key in reference.keys(section):
            reference.value(section, key)
    assert len(reference.keys("simple")) == 41
    assert len(reference.keys("three_colored")) == 10


@pytest.mark.parametrize("x,y", [("K", "H"), ("G", "Q")])
def test_equal_f3_pairs_have_equal_f2_sums(x, y):
    sec = "equal_f3"
    assert total(sec, [x + s for s in "ABC"]) == total(sec, [y + s for s in "ABC"])


def test_r_s_sum_identity():
    sec = "sum_pair"
    lhs = total(sec, ["RA", "RB", "RC"]) - total(sec, ["SA", "SB", "SC"])
    assert lhs == reference.value(sec, "R") - reference.value(sec, "S")


def test_unknown_key():
    with pytest.raises(KeyError, match="simple/L99"):
        reference.value("simple", "L99")


def test_source_text_kept():
    assert reference.source("simple", "L1").strip()


@pytest.mark.parametrize(
    "key,formula",
    [
        ("L1", "1"),
        ("L2", "(t w^2 - 1)/((1 - t) w)"),
        ("L3", "1/(w x)"),
        ("L8", "(t w^2 - 1)^2/((1 - t)^2 w^2)"),
        ("L9", "(t w^2 - 1)/((1 - t) w^2 x)"),
        ("L26", "1/(w^2 x^2)"),
    ],
)
def test_simple_rows_match_closed_forms(key, formula):
    assert reference.value("simple", key) == parse_expression(formula)
