from collections import Counter
from math import factorial, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.functions.combinatorial.numbers import stirling

from skein_f.coloring import (
    Coloration,
    PartitionType,
    all_set_partitions,
    bell,
    canonical_labels,
    integer_partitions,
    merge_colors,
    partitions_of_type,
    restrict_after_smooth,
    type_of,
)


def count_of_type(parts):
    # n! / (prod p_i! * prod multiplicity!)
    n = sum(parts)
    return factorial(n) // (prod(factorial(p) for p in parts) * prod(factorial(m) for m in Counter(parts).values()))


def test_bell_numbers():
    assert [bell(n) for n in range(1, 8)] == [1, 2, 5, 15, 52, 203, 877]


@pytest.mark.parametrize("n", range(1, 8))
def test_enumeration_sizes(n):
    cols = all_set_partitions(n)
    assert len(cols) == bell(n) == len(set(cols))
    for c in range(1, n + 1):
        assert sum(1 for col in cols if col.c == c) == stirling(n, c)


@pytest.mark.parametrize("n", range(1, 7))
def test_type_counts_match_multinomial(n):
    for p in integer_partitions(n):
        assert len(partitions_of_type(n, p)) == count_of_type(p.parts)


def test_integer_partitions_of_five():
    got = {p.parts for p in integer_partitions(5)}
    assert got == {(5,), (4, 1), (3, 2), (3, 1, 1), (2, 2, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1)}
    assert len(integer_partitions(5)) == 7


@given(st.lists(st.sampled_from("abcdef"), min_size=1, max_size=8))
def test_canonical_labels_are_restricted_growth(labels):
    rgs = canonical_labels(labels)
    assert rgs[0] == 0
    assert all(v <= max(rgs[:i], default=-1) + 1 for i, v in enumerate(rgs))
    # same partition: positions share a label iff they share a canonical label
    assert all((labels[i] == labels[j]) == (rgs[i] == rgs[j]) for i in range(len(labels)) for j in range(len(labels)))


@given(st.lists(st.integers(0, 4), min_size=1, max_size=7))
def test_type_sums_to_component_count(labels):
    col = Coloration.from_labels(labels)
    p = type_of(col)
    assert p.n == col.n and p.c == col.c
    assert list(p.parts) == sorted(p.parts, reverse=True)


def test_parse_and_str():
    col = Coloration.parse("2, 2, 7")
    assert col.block_of == (0, 0, 1) and str(col) == "0,0,1"
    assert PartitionType.parse("1,2").parts == (2, 1)
    with pytest.raises(ValueError):
        Coloration.parse("a,b")
    with pytest.raises(ValueError):
        Coloration.parse("")


def test_merge_and_restrict():
    col = Coloration.parse("0,1,2")
    assert merge_colors(col, 0, 2).block_of == (0, 1, 0)
    with pytest.raises(ValueError):
        merge_colors(col, 1, 1)
    assert restrict_after_smooth(Coloration.parse("0,1,0"), merged=(0, 2)).block_of == (0, 1)
    assert restrict_after_smooth(Coloration.parse("0,1"), split=1).block_of == (0, 1, 1)
    with pytest.raises(ValueError):
        restrict_after_smooth(Coloration.parse("0,1"), merged=(0, 1))


def test_component_limits():
    with pytest.raises(ValueError):
        all_set_partitions(0)
    with pytest.raises(ValueError):
        partitions_of_type(3, PartitionType((2, 2)))
