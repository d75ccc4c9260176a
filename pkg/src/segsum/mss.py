"""Counting and extracting maximum-sum segment trees (MSS-trees).

An MSS-tree records the answers of recursive queries on an array whose
first value is 0.  Each answer ``[i + 1, j]`` is recorded as its drop
``[i, j]``.  General trees recurse left, middle (restricted) and right of a
drop; restricted trees recurse on a range whose first prefix sum is its
strict minimum, so every drop there starts at the range start.

``T(n)`` counts general trees and ``M(n)`` restricted ones.  Their growth
rate bounds from below the bits any encoding of the queries needs.
"""
from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass
from fractions import Fraction

from .errors import LimitError

MAX_ENUM_N = 7


@dataclass(frozen=True)
class MssCountTable:
    t: tuple
    m: tuple

    def __len__(self):
        return len(self.t)


def count_tables(N) -> MssCountTable:
    """``T(0..N)`` and ``M(0..N)`` from the single-sum recurrences, O(N^2) big-int ops."""
    if N < 0:
        raise ValueError("N must be non-negative")
    T = [1]
    M = [0]
    for n in range(1, N + 1):
        if n == 1:
            M.append(1)
            T.append(1)
            continue
        rev = T[n - 2::-1]  # T(n-2), ..., T(0)
        # M(n) = sum_{i=1}^{n-1} M(i) T(n-1-i);  T(n) = 1 + sum_{j=2}^{n} M(j) T(n-j)
        M.append(sum(map(operator.mul, M[1:n], rev)))
        T.append(1 + sum(map(operator.mul, M[2:n + 1], rev)))
    return MssCountTable(tuple(T), tuple(M))


def count_tables_direct(N) -> MssCountTable:
    """Same tables from the original double-sum forms; cubic, for cross-checks."""
    T = [1] + [0] * N
    M = [0] + [0] * N
    if N >= 1:
        M[1] = 1
    for n in range(1, N + 1):
        if n >= 2:
            M[n] = sum(M[i - 1] * T[n - i] for i in range(2, n + 1))
        T[n] = 1 + sum(T[i - 1] * M[j - i] * T[n - j]
                       for j in range(2, n + 1) for i in range(1, j))
    return MssCountTable(tuple(T), tuple(M))


def growth_ratio(N, table=None) -> float:
    """``T(N) / T(N - 1)`` as a float."""
    if N < 2:
        raise ValueError("N must be at least 2")
    T = (table or count_tables(N)).t
    return T[N] / T[N - 1]  # int / int is correctly rounded


def growth_estimate(N, table=None) -> float:
    """``log2(T(N) / T(N - 1))``, bits per element forced by the tree count."""
    return math.log2(growth_ratio(N, table))


# -- closed form ------------------------------------------------------------


def _mul(a, b, n):
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a[:n + 1]):
        if x:
            for j, y in enumerate(b[:n + 1 - i]):
                out[i + j] += x * y
    return out


def _sqrt(s, n):
    # r^2 = s with r[0] = 1 (needs s[0] = 1)
    r = [Fraction(0)] * (n + 1)
    r[0] = Fraction(1)
    for k in range(1, n + 1):
        acc = sum((r[i] * r[k - i] for i in range(1, k)), Fraction(0))
        r[k] = (s[k] - acc) / 2
    return r


def series_coefficients(N):
    """First ``N + 1`` coefficients of ``(1 - sqrt(1 - 4x(1 - x^2))) / (2x(1 - x^2))``.

    Exact rational power-series arithmetic; no floats.
    """
    n = N + 1  # one extra term is consumed by the division by x
    s = [Fraction(0)] * (n + 1)
    s[0] = Fraction(1)
    s[1] = Fraction(-4)
    if n >= 3:
        s[3] = Fraction(4)
    r = _sqrt(s, n)
    num = [-c for c in r]
    num[0] += 1  # 1 - sqrt(...), constant term vanishes
    shifted = num[1:] + [Fraction(0)]  # divide by x
    inv = [Fraction(1 if k % 2 == 0 else 0) for k in range(N + 1)]  # 1 / (1 - x^2)
    out = _mul(shifted, inv, N)
    return [c / 2 for c in out]


# -- trees ------------------------------------------------------------------


@dataclass(frozen=True)
class MssTree:
    """One node; ``label`` is a drop ``(i, j)`` or None, empty subtrees are None."""

    flavor: str
    label: tuple | None
    children: tuple = ()

    def key(self):
        return tree_key(self)

    def nodes(self):
        yield self
        for ch in self.children:
            if ch is not None:
                yield from ch.nodes()


def tree_key(tree) -> str:
    """Canonical string of a tree (None is the empty tree)."""
    if tree is None:
        return "-"
    tag = "G" if tree.flavor == "general" else "R"
    lab = "e" if tree.label is None else f"{tree.label[0]},{tree.label[1]}"
    inner = "".join(tree_key(c) for c in tree.children)
    return f"{tag}[{lab}]({inner})"


def _drop(idx, i, j):
    ans = idx.query(i, j).as_tuple()
    return None if ans is None else (ans[0] - 1, ans[1])


def extract_mss_tree(idx, i0=1, j0=None, flavor="general"):
    """MSS-tree of ``[i0, j0]``; ``idx`` answers ``query(i, j)`` with ``as_tuple()``.

    The array behind ``idx`` is expected to start with 0.
    """
    if flavor not in ("general", "restricted"):
        raise ValueError(f"unknown flavor {flavor!r}")
    j0 = idx.n if j0 is None else j0
    if flavor == "general":
        return _general(idx, i0, j0)
    return _restricted(idx, i0, j0)


def _general(idx, i0, j0):
    if i0 > j0:
        return None
    if i0 == j0:
        return MssTree("general", (i0, i0))
    d = _drop(idx, i0, j0)
    if d is None:
        return MssTree("general", None)
    i, j = d
    return MssTree("general", d, (_general(idx, i0, i - 1),
                                  _restricted(idx, i, j - 1),
                                  _general(idx, j + 1, j0)))


def _restricted(idx, i0, j0):
    if i0 >= j0:
        return None
    if i0 == j0 - 1:
        return MssTree("restricted", (i0, j0))
    d = _drop(idx, i0, j0)
    if d is None:  # cannot happen when the range starts at its strict minimum
        return MssTree("restricted", None)
    _, j = d
    return MssTree("restricted", d, (_restricted(idx, i0, j - 1),
                                     _general(idx, j + 1, j0)))


class _Answer:
    __slots__ = ("t",)

    def __init__(self, t):
        self.t = t

    def as_tuple(self):
        return self.t


class _OracleIndex:
    """All window answers of a small array, precomputed by brute force."""

    def __init__(self, values):
        from .oracle import naive_all_windows

        self.n = len(values)
        self.lo, self.hi = naive_all_windows(values)

    def query(self, i, j):
        lo = int(self.lo[i, j])
        return _Answer(None if lo == 0 else (lo, int(self.hi[i, j])))


def count_distinct_trees(n, value_set=range(-3, 4)):
    """Distinct general MSS-trees over all arrays ``[0, v2, ..., vn]`` with ``v`` from ``value_set``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > MAX_ENUM_N:
        raise LimitError(f"exhaustive enumeration is limited to n <= {MAX_ENUM_N}")
    vals = sorted(set(int(v) for v in value_set))
    seen = set()
    for tail in itertools.product(vals, repeat=n - 1):
        seen.add(tree_key(extract_mss_tree(_OracleIndex((0,) + tail))))
    return len(seen)
