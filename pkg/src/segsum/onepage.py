"""Succinct one-page (nested) multigraphs.

Vertex ``u`` is written as the pair ``()`` followed by ``S_u = )^x (^y``,
where ``x`` counts edges from smaller labels and ``y`` edges to larger
labels.  Every edge is a matched parenthesis pair, so the whole encoding is
a balanced sequence of ``2(n + m)`` bits and degree/neighbour/order reduce
to rank, select and matching.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from . import bits as B
from .errors import NestingError, NotFoundError, RangeError


@njit(cache=True, _nrt=False, inline="always")
def bounds(bv, n, u):
    """0-based start of u's ``()`` pair and end (exclusive) of ``S_u``."""
    vs = B.select_pair(bv, u)
    se = B.select_pair(bv, u + 1) if u < n else bv[1]
    return vs, se


@njit(cache=True, _nrt=False)
def degree(bv, n, u):
    vs, se = bounds(bv, n, u)
    return se - vs - 2


@njit(cache=True, _nrt=False)
def indegree(bv, n, u):
    vs, se = bounds(bv, n, u)
    return B.rank0(bv, se) - B.rank0(bv, vs + 2)


@njit(cache=True, _nrt=False, inline="always")
def vertex_of(bv, q):
    return B.rank_pairs(bv, q + 1)


@njit(cache=True, _nrt=False)
def neighbour(bv, n, u, i):
    # both runs of S_u are ordered by decreasing partner when read left to right
    vs, se = bounds(bv, n, u)
    x = B.rank0(bv, se) - B.rank0(bv, vs + 2)
    if i <= x:
        q = B.find_open(bv, vs + 2 + x - i)
    else:
        q = B.find_close(bv, se - (i - x))
    return vertex_of(bv, q)


@njit(cache=True, _nrt=False)
def order(bv, n, u, v):
    """Smallest i with neighbour(u, i) == v, or -1."""
    if u == v:
        return -1
    vs, se = bounds(bv, n, u)
    x = B.rank0(bv, se) - B.rank0(bv, vs + 2)
    wvs, wse = bounds(bv, n, v)
    wx = B.rank0(bv, wse) - B.rank0(bv, wvs + 2)
    wy = wse - wvs - 2 - wx
    if v > u and wx == 1:
        q = B.find_open(bv, wvs + 2)
        if vs + 2 + x <= q < se:
            return x + (se - q)
        return -1
    if v < u and wy == 1:
        q = B.find_close(bv, wse - 1)
        if vs + 2 <= q < vs + 2 + x:
            return vs + 2 + x - q
        return -1
    lo = 1
    hi = se - vs - 2
    while lo < hi:
        mid = (lo + hi) >> 1
        if neighbour(bv, n, u, mid) < v:
            lo = mid + 1
        else:
            hi = mid
    if hi >= 1 and neighbour(bv, n, u, lo) == v:
        return lo
    return -1


@njit(cache=True)
def _decode(bv, n, m):
    out = np.empty((m, 2), np.int64)
    e = 0
    for u in range(1, n + 1):
        vs, se = bounds(bv, n, u)
        x = B.rank0(bv, se) - B.rank0(bv, vs + 2)
        for q in range(se - 1, vs + 1 + x, -1):
            out[e, 0] = u
            out[e, 1] = vertex_of(bv, B.find_close(bv, q))
            e += 1
    return out


@njit(cache=True)
def _crossing(a, b):
    # edges sorted by (a asc, b desc); returns indices of a crossing pair or (-1, -1)
    stack = np.empty(a.shape[0], np.int64)
    top = 0
    for k in range(a.shape[0]):
        while top > 0 and b[stack[top - 1]] <= a[k]:
            top -= 1
        if top > 0 and b[stack[top - 1]] < b[k]:
            return stack[top - 1], k
        stack[top] = k
        top += 1
    return -1, -1


def normalize_edges(n, edges):
    """Validate vertex labels and return edges as (lo, hi) int64 columns."""
    e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if e.size and (e.min() < 1 or e.max() > n):
        bad = e[(e < 1).any(axis=1) | (e > n).any(axis=1)][0]
        raise RangeError(f"edge {tuple(int(v) for v in bad)} has a vertex outside [1, {n}]")
    if (e[:, 0] == e[:, 1]).any():
        loop = e[e[:, 0] == e[:, 1]][0]
        raise ValueError(f"self-loop at vertex {int(loop[0])}")
    return np.minimum(e[:, 0], e[:, 1]), np.maximum(e[:, 0], e[:, 1])


@njit(cache=True)
def edge_order(lo, hi, n, hi_desc):
    """Permutation sorting edges by lo, then hi; linear (two counting sorts)."""
    m = lo.shape[0]
    cnt = np.zeros(n + 2, np.int64)
    for k in range(m):
        cnt[n + 1 - hi[k] if hi_desc else hi[k]] += 1
    for v in range(1, n + 2):
        cnt[v] += cnt[v - 1]
    tmp = np.empty(m, np.int64)
    for k in range(m - 1, -1, -1):
        key = n + 1 - hi[k] if hi_desc else hi[k]
        cnt[key] -= 1
        tmp[cnt[key]] = k
    cnt[:] = 0
    for k in range(m):
        cnt[lo[k]] += 1
    for v in range(1, n + 2):
        cnt[v] += cnt[v - 1]
    out = np.empty(m, np.int64)
    for t in range(m - 1, -1, -1):
        k = tmp[t]
        cnt[lo[k]] -= 1
        out[cnt[lo[k]]] = k
    return out


def find_crossing(lo, hi, n=None):
    """Return a crossing pair of edges, or None when the edge set is nested."""
    if lo.size == 0:
        return None
    n = int(hi.max()) if n is None else n
    order_ = edge_order(lo, hi, n, True)
    a, b = lo[order_], hi[order_]
    i, j = _crossing(a, b)
    if i < 0:
        return None
    return (int(a[i]), int(b[i])), (int(a[j]), int(b[j]))


def check_nesting(n, edges):
    """Raise :class:`NestingError` if two edges cross."""
    lo, hi = normalize_edges(n, edges)
    hit = find_crossing(lo, hi, n)
    if hit is not None:
        raise NestingError(*hit)
    return lo, hi


@njit(cache=True)
def _encode(indeg, outdeg):
    total = 0
    for u in range(indeg.shape[0]):
        total += 2 + indeg[u] + outdeg[u]
    out = np.zeros(total, np.uint8)
    p = 0
    for u in range(indeg.shape[0]):
        out[p] = 1
        p += 2 + indeg[u]
        for _ in range(outdeg[u]):
            out[p] = 1
            p += 1
    return out


def encode_degrees(indeg, outdeg):
    """Parenthesis bits for the given per-vertex in/out degrees (uint8 array)."""
    return _encode(np.asarray(indeg, dtype=np.int64), np.asarray(outdeg, dtype=np.int64))


class OnePageGraph:
    """Nested multigraph on vertices ``1..n`` stored in ``2(n + m)`` parenthesis bits.

    Vertex lookups use the positions of ``()`` pairs; the in/out split inside
    each ``S_u`` is recovered with rank over closing parentheses, so no
    separate marker vectors are stored.
    """

    def __init__(self, n, edges=(), *, validate=True):
        n = int(n)
        if n < 1:
            raise RangeError("graph needs at least one vertex")
        if validate:
            lo, hi = check_nesting(n, edges)
        else:
            lo, hi = normalize_edges(n, edges)
        indeg = np.bincount(hi, minlength=n + 1)[1:]
        outdeg = np.bincount(lo, minlength=n + 1)[1:]
        self._init(n, lo.size, B.PairedParens(encode_degrees(indeg, outdeg)))

    def _init(self, n, m, bp):
        self.n = n
        self.m = m
        self.bp = bp
        self._bv = bp._bv

    @classmethod
    def from_words(cls, n, bp_bits, m_bits):
        """Rebuild from raw words (used by deserialization)."""
        self = cls.__new__(cls)
        bp = B.PairedParens.from_words(bp_bits, m_bits)
        if bp.pair_count() != n or m_bits < 2 * n:
            raise ValueError("parenthesis sequence does not describe the vertex count")
        self._init(n, (m_bits - 2 * n) // 2, bp)
        if n and B.select_pair(self._bv, 1) != 0:
            raise ValueError("sequence does not start with a vertex")
        return self

    def _check(self, u):
        if not 1 <= u <= self.n:
            raise RangeError(f"vertex {u} outside [1, {self.n}]")

    def degree(self, u):
        self._check(u)
        return int(degree(self._bv, self.n, u))

    def indegree(self, u):
        self._check(u)
        return int(indegree(self._bv, self.n, u))

    def outdegree(self, u):
        return self.degree(u) - self.indegree(u)

    def neighbour(self, u, i):
        d = self.degree(u)
        if not 1 <= i <= d:
            raise RangeError(f"neighbour rank {i} outside [1, {d}] for vertex {u}")
        return int(neighbour(self._bv, self.n, u, i))

    def neighbours(self, u):
        return [self.neighbour(u, i) for i in range(1, self.degree(u) + 1)]

    def order(self, u, v):
        self._check(u)
        self._check(v)
        i = int(order(self._bv, self.n, u, v))
        if i < 0:
            raise NotFoundError(f"no edge ({u}, {v})")
        return i

    def edges(self):
        """Edge list as an (m, 2) array of (lo, hi), sorted by lo then hi."""
        return _decode(self._bv, self.n, self.m)

    def size_in_bits(self):
        return self.bp.size_in_bits()

    def __eq__(self, other):
        return isinstance(other, OnePageGraph) and self.n == other.n and self.bp == other.bp

    def __hash__(self):
        return hash((self.n, hash(self.bp)))

