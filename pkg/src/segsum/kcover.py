"""Maximum-score k-covers through the transformation tree.

The root of the tree is the best segment of the whole array.  Its left and
right children are the trees of the parts outside it, and its middle child
is the tree of the negated segment: picking a middle node splits its parent
interval at the most negative stretch inside.  Weights never grow from a
parent to a child, so the best k-cover is the set of the k heaviest nodes
(ties go to the shallower node, then to the earlier one) and selection
replaces sorting.

Nodes are kept in flat arrays; child slots use -1 for "absent".
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from . import index as X
from .build import cumulative, prepare
from .errors import RangeError
from .index import build_index

LEFT, MIDDLE, RIGHT = 0, 1, 2


# -- construction ----------------------------------------------------------


@njit(cache=True)
def _build_tree(pos, neg, c, n):
    # pos / neg: argument tuples of the index over A and over -A
    cap = n + 1
    weight = np.zeros(cap, np.int64)
    lo = np.zeros(cap, np.int64)
    hi = np.zeros(cap, np.int64)
    sign = np.zeros(cap, np.int8)
    parent = np.full(cap, -1, np.int64)
    child = np.full((cap, 3), -1, np.int64)
    depth = np.zeros(cap, np.int64)
    # pending subproblems: sign, i, j, parent, slot, depth
    st = np.empty((3 * cap + 3, 6), np.int64)
    st[0, 0] = 1
    st[0, 1] = 1
    st[0, 2] = n
    st[0, 3] = -1
    st[0, 4] = 0
    st[0, 5] = 0
    top = 1
    count = 0
    while top > 0:
        top -= 1
        s = st[top, 0]
        i = st[top, 1]
        j = st[top, 2]
        par = st[top, 3]
        if s > 0:
            a, b = X._query(pos[0], pos[1], pos[2], pos[3], pos[4], i, j)
        else:
            a, b = X._query(neg[0], neg[1], neg[2], neg[3], neg[4], i, j)
        if a == 0:
            continue
        v = count
        count += 1
        weight[v] = s * (c[b + 1] - c[a])  # c is over internal positions
        lo[v] = a
        hi[v] = b
        sign[v] = s
        parent[v] = par
        depth[v] = st[top, 5]
        if par >= 0:
            child[par, st[top, 4]] = v
        d = st[top, 5] + 1
        # pushed in reverse so the left part is built first
        if b < j:
            st[top, 0] = s
            st[top, 1] = b + 1
            st[top, 2] = j
            st[top, 3] = v
            st[top, 4] = 2
            st[top, 5] = d
            top += 1
        if a < b:
            st[top, 0] = -s
            st[top, 1] = a
            st[top, 2] = b
            st[top, 3] = v
            st[top, 4] = 1
            st[top, 5] = d
            top += 1
        if i < a:
            st[top, 0] = s
            st[top, 1] = i
            st[top, 2] = a - 1
            st[top, 3] = v
            st[top, 4] = 0
            st[top, 5] = d
            top += 1
    return (weight[:count].copy(), lo[:count].copy(), hi[:count].copy(), sign[:count].copy(),
            parent[:count].copy(), child[:count].copy(), depth[:count].copy())


# -- selection -------------------------------------------------------------


@njit(cache=True, _nrt=False, inline="always")
def _before(w, dep, x, y):
    """Strict tie order: heavier, then shallower, then built earlier."""
    if w[x] != w[y]:
        return w[x] > w[y]
    if dep[x] != dep[y]:
        return dep[x] < dep[y]
    return x < y


@njit(cache=True, _nrt=False)
def _small_sort(a, l, r, w, dep):
    for t in range(l + 1, r):
        v = a[t]
        u = t - 1
        while u >= l and _before(w, dep, v, a[u]):
            a[u + 1] = a[u]
            u -= 1
        a[u + 1] = v


@njit(cache=True)
def _select(a, l, r, k, w, dep, cnt):
    """Rearrange ``a[l:r]`` so its first ``k`` slots hold the top-k, the k-th last.

    Median-of-medians pivots keep the work linear; ``cnt[0]`` accumulates
    the number of element visits.
    """
    while True:
        size = r - l
        if size <= 5:
            cnt[0] += size
            _small_sort(a, l, r, w, dep)
            return
        # medians of groups of five gathered at the front
        m = 0
        for g in range(l, r, 5):
            e = min(g + 5, r)
            _small_sort(a, g, e, w, dep)
            med = g + (e - g - 1) // 2
            a[med], a[l + m] = a[l + m], a[med]
            m += 1
        cnt[0] += size
        _select(a, l, l + m, (m + 1) // 2, w, dep, cnt)
        pm = l + (m + 1) // 2 - 1
        piv = a[pm]
        a[pm], a[r - 1] = a[r - 1], a[pm]
        p = l
        for t in range(l, r - 1):
            if _before(w, dep, a[t], piv):
                a[t], a[p] = a[p], a[t]
                p += 1
        a[p], a[r - 1] = a[r - 1], a[p]
        cnt[0] += size
        rank = p - l + 1
        if rank == k:
            return
        if k < rank:
            r = p
        else:
            k -= rank
            l = p + 1


def select_top(ids, k, weight, depth):
    """Top-``k`` of ``ids`` in tie order (unordered except the k-th is last)."""
    a = np.array(ids, dtype=np.int64)
    k = min(int(k), a.size)
    if k < 1:
        return a[:0]
    _select(a, 0, a.size, k, weight, depth, np.zeros(1, np.int64))
    return a[:k]


# -- interval reconstruction ----------------------------------------------


@njit(cache=True)
def _intervals(lo, hi, sign, child, w, dep, thr, k, cnt):
    """Disjoint covered intervals of the parent-closed set ranked up to ``thr``.

    In-order walk (left, open, middle, close, right) yields interval
    boundaries sorted by position; the innermost open node decides coverage.
    """
    out = np.empty((k, 2), np.int64)
    if k == 0:
        return out
    work = np.empty((2 * k + 2, 2), np.int64)
    work[0, 0] = 0
    work[0, 1] = 0
    wt = 1
    signs = np.empty(k + 1, np.int8)
    ns = 0
    covered = False
    start = 0
    e = 0
    while wt > 0:
        wt -= 1
        v = work[wt, 0]
        state = work[wt, 1]
        nxt = -1
        if state == 0:
            cnt[0] += 1
            work[wt, 1] = 1
            wt += 1
            nxt = child[v, 0]
        elif state == 1:
            signs[ns] = sign[v]
            ns += 1
            now = sign[v] > 0
            if now != covered:
                if now:
                    start = lo[v]
                else:
                    out[e, 0] = start
                    out[e, 1] = lo[v] - 1
                    e += 1
                covered = now
            work[wt, 1] = 2
            wt += 1
            nxt = child[v, 1]
        else:
            ns -= 1
            now = ns > 0 and signs[ns - 1] > 0
            if now != covered:
                if covered:
                    out[e, 0] = start
                    out[e, 1] = hi[v]
                    e += 1
                else:
                    start = hi[v] + 1
                covered = now
            nxt = child[v, 2]
        if nxt >= 0:
            cnt[0] += 1
            if nxt == thr or _before(w, dep, nxt, thr):
                work[wt, 0] = nxt
                work[wt, 1] = 0
                wt += 1
    return out[:e]


# -- public types ----------------------------------------------------------


@dataclass(frozen=True)
class KCoverAnswer:
    k_requested: int
    k_achieved: int
    score: int
    intervals: list
    touched: int = field(default=0, compare=False)

    def __str__(self):
        lines = [f"score={self.score}"]
        lines += [f"{a} {b}" for a, b in self.intervals]
        return "\n".join(lines)


class TransformationTree:
    """Heap-ordered ternary tree of segment gains; node 0 is the root.

    ``lo``/``hi`` are user positions of each node's segment and ``sign``
    is +1 for an added interval, -1 for a removed stretch.
    """

    def __init__(self, n, weight, lo, hi, sign, parent, child, depth):
        self.n = int(n)
        self.weight = weight
        self.lo = lo
        self.hi = hi
        self.sign = sign
        self.parent = parent
        self.child = child
        self.depth = depth

    @classmethod
    def build(cls, values):
        pa = prepare(values)
        c = cumulative(pa)
        n = pa.n
        pos = build_index(pa.a[1:])
        neg = build_index(-pa.a[1:])
        parts = _build_tree(pos._args, neg._args, c, n)
        return cls(n, *parts)

    def __len__(self):
        return self.weight.size

    @property
    def seq(self):
        return np.arange(len(self))

    def children(self, v):
        """(left, middle, right) ids, None for absent slots."""
        return tuple(None if x < 0 else int(x) for x in self.child[v])

    def edges(self):
        """(parent, child) id pairs."""
        v = np.nonzero(self.parent >= 0)[0]
        return np.stack((self.parent[v], v), axis=1)

    def heap_ok(self):
        e = self.edges()
        return bool((self.weight[e[:, 0]] >= self.weight[e[:, 1]]).all())

    def order_key(self, v):
        return (-int(self.weight[v]), int(self.depth[v]), int(v))

    def _answer(self, k, ids, thr, cnt):
        if ids.size == 0:
            return KCoverAnswer(k, 0, 0, [], int(cnt[0]))
        iv = _intervals(self.lo, self.hi, self.sign, self.child, self.weight, self.depth,
                        thr, ids.size, cnt)
        score = sum(int(w) for w in self.weight[ids])
        cnt[0] += ids.size
        return KCoverAnswer(k, int(iv.shape[0]), score,
                            [(int(a), int(b)) for a, b in iv], int(cnt[0]))


def _check_k(k):
    if int(k) < 1:
        raise RangeError(f"k must be at least 1, got {k}")
    return int(k)


def build_tree(values) -> TransformationTree:
    return TransformationTree.build(values)


def max_kcover(tree: TransformationTree, k) -> KCoverAnswer:
    """Best cover with at most ``k`` intervals, by linear-time selection over all nodes."""
    k = _check_k(k)
    cnt = np.zeros(1, np.int64)
    m = len(tree)
    kk = min(k, m)
    if kk == 0:
        return KCoverAnswer(k, 0, 0, [], 0)
    a = np.arange(m, dtype=np.int64)
    _select(a, 0, m, kk, tree.weight, tree.depth, cnt)
    return tree._answer(k, a[:kk], a[kk - 1], cnt)


@dataclass(frozen=True)
class MultiKIndex:
    """``levels[i]`` holds the top ``min(2^i, nodes)`` ids, the weakest one last."""

    levels: tuple

    def __len__(self):
        return len(self.levels)


def preprocess_levels(tree: TransformationTree) -> MultiKIndex:
    m = len(tree)
    if m == 0:
        return MultiKIndex(())
    top = int(np.ceil(np.log2(m))) if m > 1 else 0
    a = np.arange(m, dtype=np.int64)
    # move the weakest node last so every stored level ends with its threshold
    cnt = np.zeros(1, np.int64)
    worst = 0
    for v in range(1, m):
        if _before(tree.weight, tree.depth, worst, v):
            worst = v
    a[worst], a[m - 1] = a[m - 1], a[worst]
    levels = [a]
    for i in range(top - 1, -1, -1):
        b = levels[-1].copy()
        size = min(1 << i, m)
        _select(b, 0, b.size, size, tree.weight, tree.depth, cnt)
        levels.append(b[:size].copy())
    return MultiKIndex(tuple(reversed(levels)))


def query_k(mk: MultiKIndex, tree: TransformationTree, k) -> KCoverAnswer:
    """Same answer as :func:`max_kcover`, touching O(k) nodes."""
    k = _check_k(k)
    cnt = np.zeros(1, np.int64)
    if not mk.levels:
        return KCoverAnswer(k, 0, 0, [], 0)
    kk = min(k, len(tree))
    i = kk.bit_length() - 1
    if mk.levels[i].size == kk:
        ids = mk.levels[i]
    else:
        ids = mk.levels[i + 1].copy()
        cnt[0] += ids.size
        _select(ids, 0, ids.size, kk, tree.weight, tree.depth, cnt)
        ids = ids[:kk]
    return tree._answer(k, ids, ids[-1], cnt)


def all_k(tree: TransformationTree, mk: MultiKIndex | None = None, kmax=None):
    """Answers for ``k = 1..kmax`` (default: node count, at least 1)."""
    mk = preprocess_levels(tree) if mk is None else mk
    kmax = max(len(tree), 1) if kmax is None else kmax
    return [query_k(mk, tree, k) for k in range(1, kmax + 1)]


# -- direct greedy iteration ----------------------------------------------


def greedy_scores(values, kmax):
    """Scores of the covers made by repeatedly applying the best single step.

    Each step either adds the best segment inside a gap or removes the most
    negative stretch inside a chosen interval, found with range queries over
    ``A`` and ``-A``.  Quadratic in ``kmax``; meant for checking.
    """
    pa = prepare(values)
    a = pa.a[1:]
    c = np.concatenate(([0], np.cumsum(a)))
    n = a.size
    pos = build_index(a)
    neg = build_index(-a)
    cover = []
    scores = [0]
    for _ in range(kmax):
        best = None
        gaps_lo = [1] + [b + 1 for _, b in cover]
        gaps_hi = [lo - 1 for lo, _ in cover] + [n]
        for g, (i, j) in enumerate(zip(gaps_lo, gaps_hi)):
            if i > j:
                continue
            ans = pos.query(i, j)
            if ans.kind == "range":
                gain = int(c[ans.hi] - c[ans.lo - 1])
                if best is None or gain > best[0]:
                    best = (gain, "add", g, ans.lo, ans.hi)
        for t, (i, j) in enumerate(cover):
            ans = neg.query(i, j)
            if ans.kind == "range":
                gain = -int(c[ans.hi] - c[ans.lo - 1])
                if best is None or gain > best[0]:
                    best = (gain, "split", t, ans.lo, ans.hi)
        if best is None:
            break
        gain, kind, t, x, y = best
        if kind == "add":
            cover.insert(t, (x, y))
        else:
            i, j = cover[t]
            cover[t:t + 1] = [r for r in ((i, x - 1), (y + 1, j)) if r[0] <= r[1]]
        scores.append(scores[-1] + gain)
    return scores
