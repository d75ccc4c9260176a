"""Linear-time construction of the arrays behind the segment index.

Internal indexing is 1-based over ``N = n + 1`` positions: position 1 holds
a zero sentinel and position ``k + 1`` holds user value ``k``.  All arrays
returned here have length ``N + 1`` with slot 0 unused (0), except ``c``
whose slot 0 is the empty prefix sum.

The single left-to-right pass keeps a falling staircase of ranges; each
range owns a rising staircase (linked through ``below``) whose bottom is the
range minimum.  A second stack keeps the falling staircase of range spans,
which points straight at the range that holds the left sibling of the
newest candidate.  Sibling scans delete what they pass over, so the total
number of stack operations stays linear.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate

import numpy as np
from numba import njit

from .errors import ValueOverflowError
from .onepage import edge_order
from .rmq import RmqEncoding

LIMIT = 1 << 62  # |prefix sum| bound keeping every difference inside int64


@dataclass(frozen=True)
class PreparedArray:
    """Sentinel-prefixed values; ``a[k - 1]`` is internal position ``k``."""

    a: np.ndarray
    offset: int = 1

    @property
    def n(self):
        return self.a.size - 1


@dataclass(frozen=True)
class BuildArrays:
    leftvis: np.ndarray
    p: np.ndarray
    d: np.ndarray
    q: np.ndarray
    ops: int


def prepare(user_values) -> PreparedArray:
    """Prepend the zero sentinel and check that all prefix sums stay in range."""
    try:
        vals = np.asarray(user_values, dtype=np.int64)
    except OverflowError as exc:
        raise ValueOverflowError("value does not fit a signed 64-bit integer") from exc
    if vals.ndim != 1:
        raise ValueError("expected a 1-d sequence of integers")
    if vals.size == 0:
        raise ValueError("input array is empty")
    big = int(np.abs(vals).max()) if vals.min() > np.iinfo(np.int64).min else LIMIT
    if big * vals.size >= LIMIT:
        # slow exact path, only for inputs that could get near the bound
        for k, s in enumerate(accumulate(int(v) for v in vals)):
            if not -LIMIT < s < LIMIT:
                raise ValueOverflowError(f"prefix sum at position {k + 1} exceeds 2^62")
    return PreparedArray(np.concatenate((np.zeros(1, np.int64), vals)))


def cumulative(pa: PreparedArray) -> np.ndarray:
    """``c[0] = 0`` and ``c[k]`` = sum of internal positions ``1..k``."""
    c = np.zeros(pa.a.size + 1, np.int64)
    np.cumsum(pa.a, out=c[1:])
    return c


@njit(cache=True)
def _left_vis(c):
    N = c.shape[0] - 1
    out = np.zeros(N + 1, np.int64)
    stack = np.empty(N, np.int64)
    top = 0
    for i in range(1, N + 1):
        while top > 0 and c[stack[top - 1]] < c[i]:
            top -= 1
        out[i] = stack[top - 1] if top > 0 else 0
        stack[top] = i
        top += 1
    return out


def left_vis_all(c) -> np.ndarray:
    """Nearest ``j < i`` with ``c[j] >= c[i]`` (0 if none) for every ``i``."""
    return _left_vis(np.asarray(c, dtype=np.int64))


def left_min_all(c, leftvis) -> np.ndarray:
    """Rightmost minimum of ``c`` over ``(leftvis[i], i]``, via a min-RMQ encoding."""
    c = np.asarray(c, dtype=np.int64)
    N = c.size - 1
    enc = RmqEncoding(c[1:], "min")
    out = np.zeros(N + 1, np.int64)
    idx = np.arange(1, N + 1)
    out[1:] = enc.query_many(np.asarray(leftvis)[1:] + 1, idx)
    return out


def candidate_scores(c, p) -> np.ndarray:
    c = np.asarray(c, dtype=np.int64)
    p = np.asarray(p, dtype=np.int64)
    idx = np.arange(p.size)
    d = np.where(p < idx, c[idx] - c[p], 0)
    d[0] = 0
    return d


@njit(cache=True)
def staircase(c):
    """One pass computing (leftvis, p, q, ops)."""
    N = c.shape[0] - 1
    leftvis = np.zeros(N + 1, np.int64)
    p = np.zeros(N + 1, np.int64)
    q = np.zeros(N + 1, np.int64)
    below = np.zeros(N + 1, np.int64)
    # falling staircase of ranges
    r_end = np.empty(N, np.int64)
    r_top = np.empty(N, np.int64)
    r_bot = np.empty(N, np.int64)
    r_minv = np.empty(N, np.int64)
    rs = 0
    # falling staircase of spans: (range slot, span)
    sp_rng = np.empty(N, np.int64)
    sp_val = np.empty(N, np.int64)
    ss = 0
    ops = 0
    for i in range(1, N + 1):
        ci = c[i]
        top = i
        bot = i
        mn = ci
        while rs > 0 and c[r_end[rs - 1]] < ci:
            rs -= 1
            ops += 1
            lt = r_top[rs]
            while lt != 0 and c[lt] >= mn:
                lt = below[lt]
                ops += 1
            if lt != 0:
                below[bot] = lt
                bot = r_bot[rs]
                mn = r_minv[rs]
        leftvis[i] = r_end[rs - 1] if rs > 0 else 0
        r_end[rs] = i
        r_top[rs] = top
        r_bot[rs] = bot
        r_minv[rs] = mn
        rs += 1
        ops += 1  # one record serves as both range boundary and riser
        p[i] = bot
        span = ci - mn
        while ss > 0 and sp_val[ss - 1] <= span:
            ss -= 1
            ops += 1
        sp_rng[ss] = rs - 1
        sp_val[ss] = span
        ss += 1
        ops += 1
        if bot != i and ss >= 2:
            k = sp_rng[ss - 2]
            mx = c[r_end[k]]
            e = r_top[k]
            while mx - c[e] <= span:
                e = below[e]
                ops += 1
            r_top[k] = e
            q[i] = e
    return leftvis, p, q, ops


def q_array(c, p=None) -> np.ndarray:
    """Left-sibling array; ``p`` is accepted for symmetry and cross-checked."""
    lv, pp, q, _ = staircase(np.asarray(c, dtype=np.int64))
    if p is not None and not np.array_equal(np.asarray(p), pp):
        raise ValueError("P array does not belong to these cumulative sums")
    return q


def build_arrays(c) -> BuildArrays:
    c = np.asarray(c, dtype=np.int64)
    lv, p, q, ops = staircase(c)
    return BuildArrays(lv, p, candidate_scores(c, p), q, int(ops))


def emit_graphs(p, q):
    """Candidate edges ``(p[x], x)`` and sibling edges ``(q[x], p[x])`` as (m, 2) arrays.

    Edges come sorted by left endpoint, then by right endpoint.
    """
    p = np.asarray(p, dtype=np.int64)
    q = np.asarray(q, dtype=np.int64)
    x = np.arange(p.size)
    cand = (p < x) & (x > 0)
    g = np.stack((p[cand], x[cand]), axis=1)
    sib = q != 0
    h = np.stack((q[sib], p[sib]), axis=1)
    n = p.size
    g = g[edge_order(g[:, 0], g[:, 1], n, False)]
    h = h[edge_order(h[:, 0], h[:, 1], n, False)]
    return g, h
