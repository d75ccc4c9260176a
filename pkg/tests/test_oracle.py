import ast
from pathlib import Path

import numpy as np

from gen import RUNNING
from segsum import oracle
from segsum.oracle import (is_tight, naive_all_windows, naive_arrays, naive_kcover, naive_kcover_all,
                           naive_rmaxssq, naive_rmq)


def test_oracle_imports_nothing_from_production():
    tree = ast.parse(Path(oracle.__file__).read_text())
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom):
            assert node.level == 0 and not (node.module or "").startswith("segsum")


def test_rmq_examples():
    assert naive_rmq([3, 1, 3], 1, 3, "max") == 3
    assert naive_rmq([5], 1, 1, "min") == 1
    assert naive_rmq([2, 2, 2], 1, 3, "min") == 3


def test_kcover_examples():
    assert naive_kcover(RUNNING, 2) == 8
    assert naive_kcover(RUNNING, 3) == 9
    assert naive_kcover([-1, -4], 3) == 0


def test_all_windows_matches_scalar():
    rng = np.random.default_rng(0)
    for _ in range(200):
        a = rng.integers(-6, 7, int(rng.integers(1, 14))).tolist()
        lo, hi = naive_all_windows(a)
        for i in range(1, len(a) + 1):
            for j in range(i, len(a) + 1):
                got = None if lo[i, j] == 0 else (lo[i, j], hi[i, j])
                assert got == naive_rmaxssq(a, i, j).as_tuple()


def test_tight_answers_are_maximal_and_disjoint():
    rng = np.random.default_rng(1)
    for _ in range(200):
        a = rng.integers(-4, 5, int(rng.integers(1, 12))).tolist()
        c = [0] + np.cumsum(a).tolist()
        ans = naive_rmaxssq(a, 1, len(a))
        best = max(c[j] - c[i - 1] for i in range(1, len(a) + 1) for j in range(i, len(a) + 1))
        if ans.kind == "empty":
            assert best <= 0
            continue
        assert c[ans.hi] - c[ans.lo - 1] == best and is_tight(c, ans.lo, ans.hi)
        # every other tight maximum lies strictly to the left
        for i in range(1, len(a) + 1):
            for j in range(i, len(a) + 1):
                if c[j] - c[i - 1] == best and is_tight(c, i, j) and (i, j) != (ans.lo, ans.hi):
                    assert j < ans.lo


def test_whole_array_answer_is_best_candidate():
    # the answer over the whole array is the candidate (P[x], x) with the largest score, rightmost
    rng = np.random.default_rng(2)
    for _ in range(300):
        user = rng.integers(-9, 10, int(rng.integers(1, 25)))
        _, P, D, _ = naive_arrays(np.concatenate(([0], user)))
        ans = naive_rmaxssq(user, 1, user.size)
        if D.max() <= 0:
            assert ans.kind == "empty"
            continue
        x = max(k for k in range(len(D)) if D[k] == D.max())
        assert ans.as_tuple() == (P[x], x - 1)  # internal (P[x] + 1, x) shifted to user positions


def test_non_positive_arrays():
    lv, P, D, Q = naive_arrays([0, -1, 0, -3])
    assert P[1:].tolist() == [1, 2, 3, 4] and not D.any() and not Q.any()


def test_kcover_all_monotone():
    a = np.random.default_rng(3).integers(-20, 21, 80)
    s = naive_kcover_all(a)
    assert (np.diff(s) >= 0).all() and s[0] == 0
