"""Rank/select bit vectors and balanced-parenthesis navigation.

Bits are stored LSB-first in ``uint64`` words: bit ``p`` (0-based) lives in
``words[p >> 6]`` at offset ``p & 63``.  Counting directories are two-level
(superblocks of 8192 bits holding absolute counts, blocks of 1024 bits
holding counts relative to their superblock).  Balanced-parenthesis
sequences additionally carry per-block and per-superblock minimum excess
plus a sparse table over superblock minima, which is what makes
``find_match`` and range-minimum-excess queries run in a bounded number of
steps.

Kernels work on a single flat tuple (see :func:`_pack`) with 0-based
positions; the classes below expose the 1-based public API.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from .errors import CapabilityError, NotFoundError, RangeError

SB_SHIFT = 13
BLK_SHIFT = 10
SAMPLE_SHIFT = 12
SB_BITS = 1 << SB_SHIFT
BLK_BITS = 1 << BLK_SHIFT
WORDS_PER_BLK = BLK_BITS >> 6
BLKS_PER_SB = SB_BITS >> BLK_SHIFT

_I16_MAX = np.iinfo(np.int16).max
_I32_MAX = np.iinfo(np.int32).max

# selector kinds for the generic select kernel
ONES = 1
ZEROS = 0
PAIRS = 2


def _byte_tables():
    mn = np.empty(256, np.int8)
    arg = np.empty(256, np.int8)
    exc = np.empty(256, np.int8)
    for v in range(256):
        e, best, pos = 0, 99, 0
        for t in range(8):
            e += 1 if (v >> t) & 1 else -1
            if e <= best:
                best, pos = e, t + 1
        mn[v], arg[v], exc[v] = best, pos, e
    return mn, arg, exc


# per byte: minimum prefix excess, rightmost step reaching it, total excess
TBL_MIN, TBL_ARG, TBL_EXC = _byte_tables()


# --------------------------------------------------------------------------
# word-level helpers


@njit(cache=True, _nrt=False, inline="always")
def popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + (
        (x >> np.uint64(2)) & np.uint64(0x3333333333333333)
    )
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True, _nrt=False, inline="always")
def _ctz(x):
    return popcount((x & (~x + np.uint64(1))) - np.uint64(1))


@njit(cache=True, _nrt=False, inline="always")
def _pair_word(words, w):
    # bit q set iff bits q, q+1 read "10", i.e. an empty pair "()"
    x = words[w]
    nxt = words[w + 1] if w + 1 < words.shape[0] else np.uint64(0)
    return x & ~((x >> np.uint64(1)) | (nxt << np.uint64(63)))


@njit(cache=True, _nrt=False, inline="always")
def _word(words, w, kind):
    if kind == ONES:
        return words[w]
    if kind == ZEROS:
        return ~words[w]
    return _pair_word(words, w)


@njit(cache=True, _nrt=False, inline="always")
def get_bit(words, p):
    return np.int64((words[p >> 6] >> np.uint64(p & 63)) & np.uint64(1))


@njit(cache=True, _nrt=False, inline="always")
def _byte(words, p):
    return np.int64((words[p >> 6] >> np.uint64(p & 63)) & np.uint64(0xFF))


# --------------------------------------------------------------------------
# rank / select


@njit(cache=True, _nrt=False, inline="always")
def _rank(words, sb_cnt, blk_cnt, p, kind):
    r = np.int64(sb_cnt[p >> SB_SHIFT]) + np.int64(blk_cnt[p >> BLK_SHIFT])
    w = (p >> BLK_SHIFT) * WORDS_PER_BLK
    end = p >> 6
    while w < end:
        r += popcount(_word(words, w, kind))
        w += 1
    rem = p & 63
    if rem:
        mask = (np.uint64(1) << np.uint64(rem)) - np.uint64(1)
        r += popcount(_word(words, end, kind) & mask)
    return r


@njit(cache=True, _nrt=False, inline="always")
def rank1(bv, p):
    """Ones among bits ``[0, p)``."""
    return _rank(bv[0], bv[2], bv[3], p, ONES)


@njit(cache=True, _nrt=False, inline="always")
def rank0(bv, p):
    return p - _rank(bv[0], bv[2], bv[3], p, ONES)


@njit(cache=True, _nrt=False, inline="always")
def rank_pairs(bv, p):
    """Number of "()" pairs starting inside ``[0, p)``."""
    return _rank(bv[0], bv[10], bv[11], p, PAIRS)


@njit(cache=True, _nrt=False, inline="always")
def _sb_before(sb_cnt, s, kind):
    if kind == ZEROS:
        return s * SB_BITS - np.int64(sb_cnt[s])
    return np.int64(sb_cnt[s])


@njit(cache=True, _nrt=False, inline="always")
def _blk_before(blk_cnt, b, kind):
    if kind == ZEROS:
        return (b & (BLKS_PER_SB - 1)) * BLK_BITS - np.int64(blk_cnt[b])
    return np.int64(blk_cnt[b])


@njit(cache=True, _nrt=False)
def _select(words, sb_cnt, blk_cnt, samples, k, kind):
    t = (k - 1) >> SAMPLE_SHIFT
    lo = np.int64(samples[t])
    hi = np.int64(samples[t + 1])
    while lo < hi:
        mid = (lo + hi + 1) >> 1
        if _sb_before(sb_cnt, mid, kind) < k:
            lo = mid
        else:
            hi = mid - 1
    s = lo
    base = _sb_before(sb_cnt, s, kind)
    b = s * BLKS_PER_SB
    bend = min(b + BLKS_PER_SB, blk_cnt.shape[0])
    while b + 1 < bend and base + _blk_before(blk_cnt, b + 1, kind) < k:
        b += 1
    r = base + _blk_before(blk_cnt, b, kind)
    w = b * WORDS_PER_BLK
    x = _word(words, w, kind)
    c = popcount(x)
    while r + c < k:
        r += c
        w += 1
        x = _word(words, w, kind)
        c = popcount(x)
    need = k - r
    while need > 1:
        x &= x - np.uint64(1)
        need -= 1
    return w * 64 + _ctz(x)


@njit(cache=True, _nrt=False, inline="always")
def select1(bv, k):
    """0-based position of the k-th one (k >= 1)."""
    return _select(bv[0], bv[2], bv[3], bv[4], k, ONES)


@njit(cache=True, _nrt=False, inline="always")
def select0(bv, k):
    return _select(bv[0], bv[2], bv[3], bv[5], k, ZEROS)


@njit(cache=True, _nrt=False, inline="always")
def select_pair(bv, k):
    """0-based position of the '(' of the k-th "()" pair."""
    return _select(bv[0], bv[10], bv[11], bv[12], k, PAIRS)


# --------------------------------------------------------------------------
# excess search.  E(l) is the excess after the first l bits; E(0) = 0.


@njit(cache=True, _nrt=False, inline="always")
def excess(bv, l):
    return 2 * rank1(bv, l) - l


@njit(cache=True, _nrt=False, inline="always")
def _blk_start_excess(bv, j):
    ones = np.int64(bv[2][j >> (SB_SHIFT - BLK_SHIFT)]) + np.int64(bv[3][j])
    return 2 * ones - (j << BLK_SHIFT)


@njit(cache=True, _nrt=False)
def _scan_min(words, lo, hi, e, best_val, best_pos):
    # rightmost minimum of E over lengths (lo, hi], given E(lo) = e
    p = lo
    while p < hi and (p & 7) != 0:
        e += 1 if get_bit(words, p) else -1
        p += 1
        if e <= best_val:
            best_val = e
            best_pos = p
    while p + 8 <= hi:
        v = _byte(words, p)
        mv = e + TBL_MIN[v]
        if mv <= best_val:
            best_val = mv
            best_pos = p + TBL_ARG[v]
        e += TBL_EXC[v]
        p += 8
    while p < hi:
        e += 1 if get_bit(words, p) else -1
        p += 1
        if e <= best_val:
            best_val = e
            best_pos = p
    return best_val, best_pos


@njit(cache=True, _nrt=False)
def _scan_first(words, lo, hi, e, target):
    p = lo
    while p < hi and (p & 7) != 0:
        e += 1 if get_bit(words, p) else -1
        p += 1
        if e <= target:
            return p
    while p + 8 <= hi:
        v = _byte(words, p)
        if e + TBL_MIN[v] <= target:
            break
        e += TBL_EXC[v]
        p += 8
    while p < hi:
        e += 1 if get_bit(words, p) else -1
        p += 1
        if e <= target:
            return p
    return -1


@njit(cache=True, _nrt=False)
def _scan_last(words, lo, hi, e, target):
    found = -1
    p = lo
    while p < hi and (p & 7) != 0:
        e += 1 if get_bit(words, p) else -1
        p += 1
        if e <= target:
            found = p
    while p + 8 <= hi:
        v = _byte(words, p)
        if e + TBL_MIN[v] <= target:
            for _ in range(8):
                e += 1 if get_bit(words, p) else -1
                p += 1
                if e <= target:
                    found = p
        else:
            e += TBL_EXC[v]
            p += 8
    while p < hi:
        e += 1 if get_bit(words, p) else -1
        p += 1
        if e <= target:
            found = p
    return found


@njit(cache=True, _nrt=False)
def _sparse_argmin(sb_min, sparse, s1, s2):
    n = s2 - s1 + 1
    k = 0
    while (2 << k) <= n:
        k += 1
    c1 = np.int64(sparse[k, s1])
    c2 = np.int64(sparse[k, s2 - (1 << k) + 1])
    return c2 if sb_min[c2] <= sb_min[c1] else c1


@njit(cache=True, _nrt=False)
def _sparse_first(sb_min, sparse, s0, target):
    nsb = sb_min.shape[0]
    s = s0
    for k in range(sparse.shape[0] - 1, -1, -1):
        if s + (1 << k) <= nsb and sb_min[sparse[k, s]] > target:
            s += 1 << k
    return s if s < nsb else -1


@njit(cache=True, _nrt=False)
def _sparse_last(sb_min, sparse, s0, target):
    s = s0
    for k in range(sparse.shape[0] - 1, -1, -1):
        lo = s - (1 << k) + 1
        if lo >= 0 and sb_min[sparse[k, lo]] > target:
            s -= 1 << k
    return s


@njit(cache=True, _nrt=False)
def range_min(bv, a, b):
    """Rightmost length in ``[a, b]`` minimising E; returns (length, value)."""
    words = bv[0]
    best_val = excess(bv, a)
    best_pos = a
    if a == b:
        return best_pos, best_val
    ba = a >> BLK_SHIFT
    bb = (b - 1) >> BLK_SHIFT
    if ba == bb:
        best_val, best_pos = _scan_min(words, a, b, best_val, best_val, best_pos)
        return best_pos, best_val
    best_val, best_pos = _scan_min(
        words, a, (ba + 1) << BLK_SHIFT, best_val, best_val, best_pos
    )
    return _range_min_long(bv, a, b, ba, bb, best_val, best_pos)


@njit(cache=True, _nrt=False)
def _range_min_long(bv, a, b, ba, bb, best_val, best_pos):
    words, blk_min, sb_min, sb_arg, sparse = bv[0], bv[6], bv[7], bv[8], bv[9]
    win_blk = -1
    j = ba + 1
    while j < bb and (j & (BLKS_PER_SB - 1)) != 0:
        v = _blk_start_excess(bv, j) + blk_min[j]
        if v <= best_val:
            best_val = v
            win_blk = j
        j += 1
    if j < bb:
        s1 = j >> (SB_SHIFT - BLK_SHIFT)
        s2 = (bb >> (SB_SHIFT - BLK_SHIFT)) - 1
        if s1 <= s2:
            s = _sparse_argmin(sb_min, sparse, s1, s2)
            v = np.int64(sb_min[s])
            if v <= best_val:
                best_val = v
                best_pos = (s << SB_SHIFT) + np.int64(sb_arg[s])
                win_blk = -1
            j = (s2 + 1) << (SB_SHIFT - BLK_SHIFT)
        while j < bb:
            v = _blk_start_excess(bv, j) + blk_min[j]
            if v <= best_val:
                best_val = v
                win_blk = j
            j += 1
    eb = _blk_start_excess(bv, bb)
    v3, p3 = _scan_min(words, bb << BLK_SHIFT, b, eb, best_val, -1)
    if p3 >= 0:
        return p3, v3
    if win_blk >= 0:
        lo = win_blk << BLK_SHIFT
        eb = _blk_start_excess(bv, win_blk)
        best_val, best_pos = _scan_min(words, lo, lo + BLK_BITS, eb, best_val, -1)
    return best_pos, best_val


@njit(cache=True, _nrt=False)
def fwd_search(bv, start, target):
    """Smallest length l > start with E(l) <= target, or -1."""
    words, m, blk_min, sb_min, sparse = bv[0], bv[1], bv[6], bv[7], bv[9]
    nblk = blk_min.shape[0]
    j = start >> BLK_SHIFT
    hi = min((j + 1) << BLK_SHIFT, m)
    if start < hi:
        l = _scan_first(words, start, hi, excess(bv, start), target)
        if l >= 0:
            return l
    j += 1
    while j < nblk and (j & (BLKS_PER_SB - 1)) != 0:
        eb = _blk_start_excess(bv, j)
        if eb + blk_min[j] <= target:
            return _scan_first(words, j << BLK_SHIFT, min((j + 1) << BLK_SHIFT, m), eb, target)
        j += 1
    if j >= nblk:
        return -1
    s = _sparse_first(sb_min, sparse, j >> (SB_SHIFT - BLK_SHIFT), target)
    if s < 0:
        return -1
    j = s << (SB_SHIFT - BLK_SHIFT)
    while j < nblk:
        eb = _blk_start_excess(bv, j)
        if eb + blk_min[j] <= target:
            return _scan_first(words, j << BLK_SHIFT, min((j + 1) << BLK_SHIFT, m), eb, target)
        j += 1
    return -1


@njit(cache=True, _nrt=False)
def bwd_search(bv, start, target):
    """Largest length l <= start with E(l) <= target, or -1."""
    words, blk_min, sb_min, sparse = bv[0], bv[6], bv[7], bv[9]
    if start == 0:
        return 0 if target >= 0 else -1
    j0 = (start - 1) >> BLK_SHIFT
    l = _scan_last(words, j0 << BLK_SHIFT, start, _blk_start_excess(bv, j0), target)
    if l >= 0:
        return l
    first = (j0 >> (SB_SHIFT - BLK_SHIFT)) << (SB_SHIFT - BLK_SHIFT)
    j = j0 - 1
    while j >= first:
        eb = _blk_start_excess(bv, j)
        if eb + blk_min[j] <= target:
            return _scan_last(words, j << BLK_SHIFT, (j + 1) << BLK_SHIFT, eb, target)
        j -= 1
    s0 = (j0 >> (SB_SHIFT - BLK_SHIFT)) - 1
    if s0 >= 0:
        s = _sparse_last(sb_min, sparse, s0, target)
        if s >= 0:
            j = ((s + 1) << (SB_SHIFT - BLK_SHIFT)) - 1
            while j >= 0:
                eb = _blk_start_excess(bv, j)
                if eb + blk_min[j] <= target:
                    return _scan_last(words, j << BLK_SHIFT, (j + 1) << BLK_SHIFT, eb, target)
                j -= 1
    return 0 if target >= 0 else -1


@njit(cache=True, _nrt=False)
def find_close(bv, p):
    """0-based position of the ')' matching the '(' at bit p."""
    e = excess(bv, p)
    return fwd_search(bv, p + 1, e) - 1


@njit(cache=True, _nrt=False)
def find_open(bv, p):
    """0-based position of the '(' matching the ')' at bit p."""
    e = excess(bv, p + 1)
    return bwd_search(bv, p, e)


@njit(cache=True, _nrt=False)
def find_match(bv, p):
    if get_bit(bv[0], p):
        return find_close(bv, p)
    return find_open(bv, p)


# --------------------------------------------------------------------------
# batch kernels (used by tests and benches; same code paths as single calls)


@njit(cache=True, _nrt=False)
def _rank_many(bv, kind, pos, out):
    for t in range(pos.shape[0]):
        if kind == ONES:
            out[t] = rank1(bv, pos[t])
        elif kind == ZEROS:
            out[t] = rank0(bv, pos[t])
        else:
            out[t] = rank_pairs(bv, pos[t])


@njit(cache=True, _nrt=False)
def _select_many(bv, kind, ks, out):
    for t in range(ks.shape[0]):
        if kind == ONES:
            out[t] = select1(bv, ks[t])
        elif kind == ZEROS:
            out[t] = select0(bv, ks[t])
        else:
            out[t] = select_pair(bv, ks[t])


@njit(cache=True, _nrt=False)
def _match_all(bv, out):
    for p in range(bv[1]):
        out[p] = find_match(bv, p)


@njit(cache=True, _nrt=False)
def _range_min_many(bv, a, b, out):
    for t in range(a.shape[0]):
        out[t] = range_min(bv, a[t], b[t])[0]


# --------------------------------------------------------------------------
# directory construction


def _as_words(bits):
    """Pack a 0/1 sequence into padded uint64 words; returns (words, m)."""
    if isinstance(bits, str):
        arr = np.frombuffer(bits.encode("ascii"), np.uint8) - ord("0")
    else:
        arr = np.asarray(bits, dtype=np.uint8)
    if arr.size and arr.max() > 1:
        raise ValueError("bit values must be 0 or 1")
    m = int(arr.size)
    nw = ((m >> BLK_SHIFT) + 1) * WORDS_PER_BLK
    packed = np.zeros(nw * 8, np.uint8)
    packed[: (m + 7) // 8] = np.packbits(arr, bitorder="little")
    return packed.view("<u8").astype(np.uint64), m


def _pad_words(words, m):
    nw = ((m >> BLK_SHIFT) + 1) * WORDS_PER_BLK
    out = np.zeros(nw, np.uint64)
    k = min(nw, words.shape[0])
    out[:k] = words[:k]
    if m & 63:
        out[m >> 6] &= np.uint64((1 << (m & 63)) - 1)
    out[(m + 63) >> 6:] = 0
    return out


def _count_dirs(counts_per_word, m):
    blk = counts_per_word.reshape(-1, WORDS_PER_BLK).sum(axis=1)
    cum = np.zeros(blk.size + 1, np.int64)
    np.cumsum(blk, out=cum[1:])
    nsb = (m >> SB_SHIFT) + 1
    sb = cum[: nsb * BLKS_PER_SB : BLKS_PER_SB].copy()
    rel = cum[:-1] - np.repeat(sb, BLKS_PER_SB)[: blk.size]
    if cum[-1] >= 2**32:
        raise ValueError("bit vector too long for 32-bit directories")
    return sb.astype(np.uint32), rel.astype(np.uint16), cum[-1]


def _samples(before, total):
    # before[s] = items strictly before superblock s
    t = (int(total) + (1 << SAMPLE_SHIFT) - 1) >> SAMPLE_SHIFT
    ks = np.arange(t, dtype=np.int64) * (1 << SAMPLE_SHIFT) + 1
    first = np.searchsorted(before, ks, side="left") - 1
    return np.append(first, before.size - 1).astype(np.uint32)


def _excess_dirs(words, m):
    nblk = (m >> BLK_SHIFT) + 1
    nsb = (m >> SB_SHIFT) + 1
    bits = np.unpackbits(words.view(np.uint8), bitorder="little")[:m]
    steps = np.ones(nsb * SB_BITS, np.int32)
    steps[:m] = 2 * bits.astype(np.int32) - 1
    E = np.cumsum(steps, dtype=np.int32)  # E[l-1] = excess after l bits
    start = np.concatenate(([0], E[BLK_BITS - 1 :: BLK_BITS]))[:nblk]
    blk = E[: nblk * BLK_BITS].reshape(nblk, BLK_BITS).min(axis=1) - start
    blk = blk.astype(np.int16)
    blk[np.arange(nblk) * BLK_BITS >= m] = _I16_MAX
    per_sb = E.reshape(nsb, SB_BITS)
    arg = SB_BITS - 1 - np.argmin(per_sb[:, ::-1], axis=1)
    sb_min = per_sb[np.arange(nsb), arg].astype(np.int32)
    sb_min[np.arange(nsb) * SB_BITS >= m] = _I32_MAX
    sb_arg = (arg + 1).astype(np.uint16)
    if nsb > np.iinfo(np.uint16).max:
        raise ValueError("sequence too long for 16-bit sparse table")
    levels = [np.arange(nsb, dtype=np.int64)]
    span = 1
    while 2 * span <= nsb:
        prev = levels[-1]
        right = np.concatenate((prev[span:], prev[nsb - span :]))
        take_right = sb_min[right] <= sb_min[prev]
        take_right[nsb - span :] = False
        levels.append(np.where(take_right, right, prev))
        span *= 2
    sparse = np.stack(levels).astype(np.uint16)
    return blk, sb_min, sb_arg, sparse, E


_E_U32 = np.zeros(0, np.uint32)
_E_U16 = np.zeros(0, np.uint16)
_E_I16 = np.zeros(0, np.int16)
_E_I32 = np.zeros(0, np.int32)
_E_SPARSE = np.zeros((1, 0), np.uint16)


def _pack(words, m, *, ones=True, zeros=True, parens=False, pairs=False):
    """Build the flat kernel tuple for ``words`` of logical length ``m``.

    Layout: (words, m, sb_rank, blk_rank, sel1, sel0, blk_min, sb_min,
    sb_arg, sparse, pair_sb, pair_blk, sel_pair).  Unused parts are empty
    arrays so every structure shares one kernel signature.
    """
    sb_rank, blk_rank, total = _count_dirs(np.bitwise_count(words).astype(np.int64), m)
    nsb = sb_rank.size
    before1 = sb_rank.astype(np.int64)
    sel1 = _samples(before1, total) if ones else _E_U32
    if zeros:
        before0 = np.arange(nsb, dtype=np.int64) * SB_BITS - before1
        sel0 = _samples(before0, m - total)
    else:
        sel0 = _E_U32
    if parens:
        blk_min, sb_min, sb_arg, sparse, _ = _excess_dirs(words, m)
    else:
        blk_min, sb_min, sb_arg, sparse = _E_I16, _E_I32, _E_U16, _E_SPARSE
    if pairs:
        nxt = np.concatenate((words[1:], np.zeros(1, np.uint64)))
        pw = words & ~((words >> np.uint64(1)) | (nxt << np.uint64(63)))
        pair_sb, pair_blk, npairs = _count_dirs(np.bitwise_count(pw).astype(np.int64), m)
        sel_pair = _samples(pair_sb.astype(np.int64), npairs)
    else:
        pair_sb, pair_blk, sel_pair = _E_U32, _E_U16, _E_U32
    return (
        words, np.int64(m), sb_rank, blk_rank, sel1, sel0,
        blk_min, sb_min, sb_arg, sparse, pair_sb, pair_blk, sel_pair,
    )


def _aux_bits(bv):
    return (bv[0].nbytes * 8 - int(bv[1])) + 64 + sum(a.nbytes * 8 for a in bv[2:])


# --------------------------------------------------------------------------
# public classes


class RankSelectBitVector:
    """Static bit vector with rank and select.

    Positions are 1-based: ``rank(b, pos)`` counts the b-bits among
    positions ``1..pos`` and ``select(b, k)`` returns the position of the
    k-th b-bit.
    """

    _flags = dict(ones=True, zeros=True)

    def __init__(self, bits=(), *, _words=None, _m=None):
        if _words is None:
            words, m = _as_words(bits)
        else:
            words, m = _pad_words(_words, _m), _m
        self._bv = _pack(words, m, **self._flags)
        self._m = m
        self._ones = int(rank1(self._bv, m)) if m else 0

    @classmethod
    def from_words(cls, words, m):
        return cls(_words=np.asarray(words, dtype=np.uint64), _m=int(m))

    def __len__(self):
        return self._m

    @property
    def words(self):
        """Packed words trimmed to ``ceil(len / 64)`` entries."""
        return self._bv[0][: (self._m + 63) >> 6]

    def __getitem__(self, pos):
        if not 1 <= pos <= self._m:
            raise RangeError(f"position {pos} outside [1, {self._m}]")
        return int(get_bit(self._bv[0], pos - 1))

    def to_numpy(self):
        raw = np.unpackbits(self._bv[0].view(np.uint8), bitorder="little")
        return raw[: self._m].copy()

    def __str__(self):
        return "".join("1" if b else "0" for b in self.to_numpy())

    def __eq__(self, other):
        return (
            isinstance(other, RankSelectBitVector)
            and self._m == other._m
            and np.array_equal(self._bv[0], other._bv[0])
        )

    def __hash__(self):
        return hash((self._m, self._bv[0].tobytes()))

    def count(self, b):
        return self._ones if b else self._m - self._ones

    def rank(self, b, pos):
        if not 0 <= pos <= self._m:
            raise RangeError(f"rank position {pos} outside [0, {self._m}]")
        r = int(rank1(self._bv, pos))
        return r if b else pos - r

    def select(self, b, k):
        if not 1 <= k <= self.count(b):
            raise NotFoundError(f"no {k}-th {int(bool(b))}-bit (have {self.count(b)})")
        fn = select1 if b else select0
        return int(fn(self._bv, k)) + 1

    def rank_many(self, b, positions):
        pos = np.asarray(positions, dtype=np.int64)
        if pos.size and (pos.min() < 0 or pos.max() > self._m):
            raise RangeError("rank position out of range")
        out = np.empty(pos.size, np.int64)
        _rank_many(self._bv, ONES if b else ZEROS, pos, out)
        return out

    def select_many(self, b, ks):
        ks = np.asarray(ks, dtype=np.int64)
        if ks.size and (ks.min() < 1 or ks.max() > self.count(b)):
            raise NotFoundError("select argument out of range")
        out = np.empty(ks.size, np.int64)
        _select_many(self._bv, ONES if b else ZEROS, ks, out)
        return out + 1

    def raw_bits(self):
        return self._m

    def aux_bits(self):
        return _aux_bits(self._bv)

    def size_in_bits(self):
        return self.raw_bits() + self.aux_bits()


class BalancedParenthesisSequence(RankSelectBitVector):
    """Balanced parentheses (1 = '(', 0 = ')') with matching and excess queries.

    Construction rejects unbalanced input.
    """

    _flags = dict(ones=True, zeros=True, parens=True)

    def __init__(self, bits=(), **kw):
        super().__init__(bits, **kw)
        if self._m and (
            2 * self._ones != self._m or self._bv[7][: (self._m >> SB_SHIFT) + 1].min() < 0
        ):
            raise ValueError("parenthesis sequence is not balanced")
        if self._m & 1:
            raise ValueError("parenthesis sequence is not balanced")

    def excess(self, pos):
        """Opens minus closes among positions ``1..pos``."""
        if not 0 <= pos <= self._m:
            raise RangeError(f"position {pos} outside [0, {self._m}]")
        return int(excess(self._bv, pos))

    def find_match(self, pos):
        if not 1 <= pos <= self._m:
            raise RangeError(f"position {pos} outside [1, {self._m}]")
        return int(find_match(self._bv, pos - 1)) + 1

    def match_all(self):
        """1-based matches for every position, as an array."""
        out = np.empty(self._m, np.int64)
        _match_all(self._bv, out)
        return out + 1

    def min_excess(self, lo, hi):
        """Rightmost ``l`` in ``[lo, hi]`` minimising ``excess(l)``."""
        if not 0 <= lo <= hi <= self._m:
            raise RangeError(f"bad excess range [{lo}, {hi}]")
        return int(range_min(self._bv, lo, hi)[0])

    def min_excess_many(self, lo, hi):
        lo = np.asarray(lo, dtype=np.int64)
        hi = np.asarray(hi, dtype=np.int64)
        if lo.size and (lo.min() < 0 or hi.max() > self._m or (lo > hi).any()):
            raise RangeError("bad excess range in batch")
        out = np.empty(lo.size, np.int64)
        _range_min_many(self._bv, lo, hi, out)
        return out


class _NoSelect:
    def select(self, b, k):
        raise CapabilityError("select directories were not built for this sequence")

    select_many = select


class PairedParens(_NoSelect, BalancedParenthesisSequence):
    """Parentheses with ``()``-pair rank/select; used by one-page graphs."""

    _flags = dict(ones=False, zeros=False, parens=True, pairs=True)

    def pair_rank(self, pos):
        return int(rank_pairs(self._bv, pos))

    def pair_count(self):
        return int(rank_pairs(self._bv, self._m))


class ShapeParens(BalancedParenthesisSequence):
    """Parentheses with select over opens only; used by RMQ shapes."""

    _flags = dict(ones=True, zeros=False, parens=True)

    def select(self, b, k):
        if not b:
            raise CapabilityError("select0 directory was not built")
        return super().select(b, k)

    def select_many(self, b, ks):
        if not b:
            raise CapabilityError("select0 directory was not built")
        return super().select_many(b, ks)
