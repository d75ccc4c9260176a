"""Range maximum / minimum encodings in 2n + o(n) bits.

The shape of the array's Cartesian tree is written as parentheses while a
stack sweeps left to right: each element closes one ``)`` per popped entry
and then opens a ``(``.  Popping on ties (``<=`` for max, ``>=`` for min)
makes the leftover stack record the rightmost extremum, which is what the
queries return.  The values themselves are discarded after construction.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from . import bits as B
from .errors import RangeError


@njit(cache=True)
def _shape_bits(values, is_max):
    n = values.shape[0]
    out = np.zeros(2 * n, np.uint8)
    stack = np.empty(n, np.int64)
    top = 0
    p = 0
    for i in range(n):
        v = values[i]
        if is_max:
            while top > 0 and values[stack[top - 1]] <= v:
                top -= 1
                p += 1
        else:
            while top > 0 and values[stack[top - 1]] >= v:
                top -= 1
                p += 1
        out[p] = 1
        p += 1
        stack[top] = i
        top += 1
    return out


@njit(cache=True, _nrt=False)
def query(bv, i, j):
    """1-based index of the rightmost extremum in ``[i, j]``."""
    oi = B.select1(bv, i)
    oj = B.select1(bv, j)
    r = B.range_min(bv, oi, oj + 1)[0]
    return B.rank1(bv, r + 1)


@njit(cache=True, _nrt=False)
def _query_many(bv, lo, hi, out):
    for t in range(lo.shape[0]):
        out[t] = query(bv, lo[t], hi[t])


class RmqEncoding:
    """Rightmost range-max (``mode="max"``) or range-min encoding of an array."""

    def __init__(self, values=None, mode="max", *, _shape=None):
        if mode not in ("max", "min"):
            raise ValueError(f"mode must be 'max' or 'min', not {mode!r}")
        self.mode = mode
        if _shape is None:
            vals = np.asarray(values, dtype=np.int64)
            if vals.ndim != 1 or vals.size == 0:
                raise ValueError("RMQ encoding needs a non-empty 1-d array")
            _shape = B.ShapeParens(_shape_bits(vals, mode == "max"))
        self.shape = _shape
        self.n = len(_shape) // 2
        self._bv = _shape._bv

    @classmethod
    def from_words(cls, words, m_bits, mode):
        return cls(mode=mode, _shape=B.ShapeParens.from_words(words, m_bits))

    def query(self, i, j):
        if not 1 <= i <= j <= self.n:
            raise RangeError(f"bad range [{i}, {j}] for length {self.n}")
        return int(query(self._bv, i, j))

    def query_many(self, lo, hi):
        lo = np.asarray(lo, dtype=np.int64)
        hi = np.asarray(hi, dtype=np.int64)
        if lo.size and (lo.min() < 1 or hi.max() > self.n or (lo > hi).any()):
            raise RangeError("bad range in batch")
        out = np.empty(lo.size, np.int64)
        _query_many(self._bv, lo, hi, out)
        return out

    def size_in_bits(self):
        return self.shape.size_in_bits()

    def __eq__(self, other):
        return isinstance(other, RmqEncoding) and self.mode == other.mode and self.shape == other.shape

    def __hash__(self):
        return hash((self.mode, hash(self.shape)))
