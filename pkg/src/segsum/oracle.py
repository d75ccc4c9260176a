"""Brute-force reference answers, written straight from the definitions.

Nothing here imports the production modules.

Tie rule for segment answers: among the maximum-sum subranges, keep the
ones that cannot be trimmed without losing sum (every proper prefix and
every proper suffix has positive sum), then return the one with the
largest right endpoint.  Such "tight" maximum subranges are pairwise
disjoint, so this picks the rightmost shortest answer.  The rule lives in
:func:`is_tight` and :func:`segment_key` only.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class OracleAnswer:
    kind: str  # "empty" or "range"
    lo: int = 0
    hi: int = 0

    def as_tuple(self):
        return None if self.kind == "empty" else (self.lo, self.hi)


EMPTY = OracleAnswer("empty")


def is_tight(C, lo, hi):
    """No proper prefix or suffix of ``[lo, hi]`` has a non-positive sum.

    ``C`` is the prefix-sum list with ``C[0] = 0``.
    """
    inner = C[lo:hi]
    return not inner or (min(inner) > C[lo - 1] and max(inner) < C[hi])


def segment_key(total, hi, width):
    """Scalar key ordering segments by (sum, right endpoint); ``width > hi``."""
    return total * width + hi


def _check(n, i, j):
    if not 1 <= i <= j <= n:
        raise IndexError(f"bad range [{i}, {j}] for length {n}")


def naive_rmaxssq(A, i, j):
    """Best subrange of ``A[i..j]`` (1-based) by direct enumeration."""
    A = [int(v) for v in A]
    _check(len(A), i, j)
    C = [0]
    for v in A:
        C.append(C[-1] + v)
    best = None
    for lo in range(i, j + 1):
        for hi in range(lo, j + 1):
            if not is_tight(C, lo, hi):
                continue
            cand = (C[hi] - C[lo - 1], hi, lo)
            if best is None or cand[:2] > best[:2]:
                best = cand
    if best[0] <= 0:
        return EMPTY
    return OracleAnswer("range", best[2], best[1])


def naive_all_windows(A):
    """Answers for every window at once.

    Returns ``(lo, hi)`` int arrays of shape ``(n + 1, n + 1)``; entry
    ``[i, j]`` is the answer for window ``[i, j]`` and ``(0, 0)`` means empty.
    Vectorised form of :func:`naive_rmaxssq` for the large suites.
    """
    a = np.asarray(A, dtype=np.int64)
    n = a.size
    w = n + 1
    c = np.concatenate(([0], np.cumsum(a)))
    lo = np.arange(1, n + 1)[:, None]
    hi = np.arange(1, n + 1)[None, :]
    # inner[lo, hi] covers C[lo..hi-1]; built by running min/max along hi
    big = np.iinfo(np.int64).max
    inner = hi - 1 >= lo
    vals = np.broadcast_to(c[hi - 1], (n, n))
    inner_min = np.minimum.accumulate(np.where(inner, vals, big), axis=1)
    inner_max = np.maximum.accumulate(np.where(inner, vals, -big), axis=1)
    tight = (hi >= lo) & (inner_min > c[lo - 1]) & (inner_max < c[hi])
    total = c[hi] - c[lo - 1]
    neg = np.iinfo(np.int64).min
    key = np.where(tight, segment_key(total, hi, w), neg)
    start = np.broadcast_to(lo, key.shape)
    # best over starts >= i, then over ends <= j; carry the start along
    best_key = key.copy()
    best_lo = start.copy()
    for r in range(n - 2, -1, -1):
        take = best_key[r + 1] > best_key[r]
        best_key[r] = np.where(take, best_key[r + 1], best_key[r])
        best_lo[r] = np.where(take, best_lo[r + 1], best_lo[r])
    for col in range(1, n):
        take = best_key[:, col - 1] > best_key[:, col]
        best_key[:, col] = np.where(take, best_key[:, col - 1], best_key[:, col])
        best_lo[:, col] = np.where(take, best_lo[:, col - 1], best_lo[:, col])
    ok = (best_key != neg) & (best_key // w > 0) & (lo <= hi)
    out_lo = np.zeros((n + 1, n + 1), np.int64)
    out_hi = np.zeros((n + 1, n + 1), np.int64)
    out_lo[1:, 1:] = np.where(ok, best_lo, 0)
    out_hi[1:, 1:] = np.where(ok, best_key % w, 0)
    return out_lo, out_hi


def naive_rmq(B, i, j, mode="max"):
    """Rightmost maximum (or minimum) of ``B[i..j]``, 1-based."""
    _check(len(B), i, j)
    best = i
    for k in range(i, j + 1):
        if (B[k - 1] >= B[best - 1]) if mode == "max" else (B[k - 1] <= B[best - 1]):
            best = k
    return best


def naive_kcover_all(A, kmax=None):
    """Best total using at most k disjoint segments, for k = 0..kmax."""
    a = np.asarray(A, dtype=np.int64)
    kmax = a.size if kmax is None else kmax
    neg = np.iinfo(np.int64).min // 4
    closed = np.zeros(kmax + 1, np.int64)
    opened = np.full(kmax + 1, neg, np.int64)
    for x in a:
        new_open = opened.copy()
        new_open[1:] = np.maximum(opened[1:], closed[:-1]) + x
        closed = np.maximum(closed, opened)
        opened = new_open
    return np.maximum(closed, opened)


def naive_kcover(A, k):
    if k < 0:
        raise ValueError("k must be non-negative")
    return int(naive_kcover_all(A, k)[k])


def naive_arrays(A):
    """(LeftVis, P, D, Q) from the definitions, for an array with ``A[1] = 0``.

    Arrays are 1-based with slot 0 unused.
    """
    a = [int(v) for v in A]
    N = len(a)
    C = [0] * (N + 1)
    for k in range(1, N + 1):
        C[k] = C[k - 1] + a[k - 1]
    lv = [0] * (N + 1)
    P = [0] * (N + 1)
    D = [0] * (N + 1)
    Q = [0] * (N + 1)
    for i in range(1, N + 1):
        lv[i] = max((j for j in range(1, i) if C[j] >= C[i]), default=0)
        best = lv[i] + 1
        for k in range(lv[i] + 1, i + 1):
            if C[k] <= C[best]:
                best = k
        P[i] = best
        D[i] = C[i] - C[P[i]] if P[i] < i else 0
    for x in range(1, N + 1):
        if P[x] == x:
            continue
        for ell in range(P[x] - 1, 0, -1):
            if any(C[e] - C[ell] > D[x] for e in range(ell + 1, P[x] + 1)):
                Q[x] = ell
                break
    return (np.array(lv), np.array(P), np.array(D), np.array(Q))
