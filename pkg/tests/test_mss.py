import math

import pytest

from segsum.errors import LimitError
from segsum.index import build_index
from segsum.mss import (MssTree, count_distinct_trees, count_tables, count_tables_direct,
                        extract_mss_tree, growth_estimate, growth_ratio, series_coefficients, tree_key)
import numpy as np


def test_small_tables():
    tab = count_tables(4)
    assert list(tab.t) == [1, 1, 2, 4, 10]
    assert list(tab.m) == [0, 1, 1, 2, 5]
    assert len(count_tables(0)) == 1


def test_two_recurrence_forms_agree():
    assert count_tables_direct(50) == count_tables(50)


def test_series_matches():
    coeffs = series_coefficients(64)
    tab = count_tables(64)
    assert all(c.denominator == 1 for c in coeffs)
    assert [int(c) for c in coeffs] == list(tab.t)


def test_growth_small():
    assert abs(growth_estimate(100) - math.log2(1 / 0.2695944)) < 0.05
    assert growth_ratio(2, count_tables(2)) == 2.0
    with pytest.raises(ValueError):
        growth_estimate(1)


def test_extract_examples():
    idx = build_index([0, 4, -1, 2, -6, 3])
    root = extract_mss_tree(idx)
    assert root.label == (1, 4)
    assert extract_mss_tree(idx, 3, 3) == MssTree("general", (3, 3))
    assert extract_mss_tree(idx, 2, 2, flavor="restricted") is None
    with pytest.raises(ValueError):
        extract_mss_tree(idx, flavor="odd")


def check_structure(tree, i0, j0):
    if tree is None:
        return
    assert tree.label is None or i0 <= tree.label[0] <= tree.label[1] <= j0
    if tree.flavor == "general":
        if tree.label is None or i0 == j0:
            assert tree.children == ()
            return
        i, j = tree.label
        left, mid, right = tree.children
        check_structure(left, i0, i - 1)
        check_structure(mid, i, j - 1)
        if mid is not None and mid.label is not None:
            assert mid.label[0] == i and mid.label[1] >= i + 1  # never starts at i + 1
        check_structure(right, j + 1, j0)
    else:
        assert tree.label[0] == i0
        if tree.label[1] == j0 and j0 == i0 + 1:
            return
        _, j = tree.label
        left, right = tree.children
        check_structure(left, i0, j - 1)
        check_structure(right, j + 1, j0)


def test_random_trees_structure():
    rng = np.random.default_rng(1)
    for _ in range(300):
        n = int(rng.integers(1, 60))
        a = np.concatenate(([0], rng.integers(-9, 10, n - 1)))
        tree = extract_mss_tree(build_index(a))
        check_structure(tree, 1, n)
        assert tree_key(tree).startswith("G[")


def test_distinct_counts():
    assert count_distinct_trees(1) == 1
    assert count_distinct_trees(2) == 2
    assert count_distinct_trees(3) == 4
    assert count_distinct_trees(4) == 10
    for n in (3, 4, 5):
        assert count_distinct_trees(n, [-1, 0, 1]) <= count_tables(n).t[n]
    with pytest.raises(LimitError):
        count_distinct_trees(8)


def test_oracle_and_index_trees_agree():
    from segsum.mss import _OracleIndex

    rng = np.random.default_rng(2)
    for _ in range(200):
        a = np.concatenate(([0], rng.integers(-5, 6, int(rng.integers(0, 12)))))
        assert tree_key(extract_mss_tree(build_index(a))) == tree_key(extract_mss_tree(_OracleIndex(a)))
