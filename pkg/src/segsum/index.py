"""Range maximum-sum segment index.

Four encodings answer every query without touching the input values:

* ``rmax_d``: rightmost range-max over candidate scores (user positions),
* ``rmin_c``: rightmost range-min over prefix sums (internal positions),
* ``g``: the candidate graph, edges ``(P[x], x)``,
* ``h``: the left-sibling multigraph, edges ``(Q[x], P[x])``,

plus an optional range-max over the values themselves for the
largest-non-positive fallback.  Internally position 1 is a zero sentinel,
so internal index = user index + 1.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass

import crc32c
import numpy as np
from numba import njit

from . import onepage as G
from . import rmq as R
from .build import build_arrays, cumulative, emit_graphs, prepare
from .errors import CapabilityError, FormatError, RangeError
from .onepage import OnePageGraph
from .rmq import RmqEncoding

MAGIC = b"SGSM"
VERSION = 1
FLAG_NONEMPTY = 1
_HEADER = struct.Struct("<4sBBQ")


@dataclass(frozen=True)
class SegmentAnswer:
    """``kind`` is "empty", "range", or "nonpositive" (single largest value)."""

    kind: str
    lo: int = 0
    hi: int = 0

    def as_tuple(self):
        return None if self.kind == "empty" else (self.lo, self.hi)

    def __str__(self):
        return "empty" if self.kind == "empty" else f"{self.lo} {self.hi}"


EMPTY = SegmentAnswer("empty")


@njit(cache=True, _nrt=False)
def left_min(gbv, N, x):
    # a candidate has exactly one incoming edge; everything else is a non-candidate
    if G.indegree(gbv, N, x) >= 1:
        return G.neighbour(gbv, N, x, 1)
    return x


@njit(cache=True, _nrt=False)
def left_sib(gbv, hbv, N, t, x):
    """Left sibling of candidate ``(t, x)``; 0 when undefined."""
    i = G.indegree(hbv, N, t) - (G.order(gbv, N, t, x) - G.indegree(gbv, N, t)) + 1
    if i > 0:
        return G.neighbour(hbv, N, t, i)
    return 0


@njit(cache=True, _nrt=False)
def _query(dbv, cbv, gbv, hbv, N, ui, uj):
    # returns user (lo, hi); lo == 0 means empty
    x = R.query(dbv, ui, uj) + 1
    p = left_min(gbv, N, x)
    if p == x:
        return 0, 0
    i = ui + 1
    if p + 1 >= i:
        return p, x - 1
    t = R.query(cbv, i - 1, x - 1)
    if x == uj + 1:
        return t, x - 1
    y = R.query(dbv, x, uj) + 1
    py = left_min(gbv, N, y)
    if py == y or left_sib(gbv, hbv, N, py, y) >= t:
        return t, x - 1
    return py, y - 1


@njit(cache=True, _nrt=False)
def _query_many(dbv, cbv, gbv, hbv, N, lo, hi, out_lo, out_hi):
    for k in range(lo.shape[0]):
        a, b = _query(dbv, cbv, gbv, hbv, N, lo[k], hi[k])
        out_lo[k] = a
        out_hi[k] = b


class RMaxSSQIndex:
    """Encoding index answering maximum-sum segment queries on ranges.

    Build with :meth:`build`; the input values are dropped afterwards.
    """

    def __init__(self, n, rmax_d, rmin_c, g, h, rmax_a=None):
        self.n = int(n)
        self.rmax_d = rmax_d
        self.rmin_c = rmin_c
        self.g = g
        self.h = h
        self.rmax_a = rmax_a
        self._args = (rmax_d._bv, rmin_c._bv, g._bv, h._bv, np.int64(self.n + 1))

    @classmethod
    def build(cls, values, *, with_nonempty=False):
        pa = prepare(values)
        c = cumulative(pa)
        arrays = build_arrays(c)
        N = c.size - 1
        ge, he = emit_graphs(arrays.p, arrays.q)
        rmax_d = RmqEncoding(arrays.d[2:], "max")
        rmin_c = RmqEncoding(c[1:], "min")
        try:
            g = OnePageGraph(N, ge)
            h = OnePageGraph(N, he)
        except ValueError as exc:  # nesting is guaranteed; a failure is a bug
            raise AssertionError(f"internal consistency: {exc}") from exc
        rmax_a = RmqEncoding(pa.a[1:], "max") if with_nonempty else None
        return cls(N - 1, rmax_d, rmin_c, g, h, rmax_a)

    # -- queries ----------------------------------------------------------

    def _check_range(self, i, j):
        if not 1 <= i <= j <= self.n:
            raise RangeError(f"bad range [{i}, {j}] for length {self.n}")

    def query(self, i, j) -> SegmentAnswer:
        self._check_range(i, j)
        lo, hi = _query(*self._args, i, j)
        return EMPTY if lo == 0 else SegmentAnswer("range", int(lo), int(hi))

    def query_many(self, lo, hi):
        """Batch form: arrays of answers with ``lo == 0`` marking empty ones."""
        lo = np.asarray(lo, dtype=np.int64)
        hi = np.asarray(hi, dtype=np.int64)
        if lo.shape != hi.shape:
            raise ValueError("lo and hi differ in shape")
        if lo.size and (lo.min() < 1 or hi.max() > self.n or (lo > hi).any()):
            raise RangeError("bad range in batch")
        out_lo = np.empty(lo.size, np.int64)
        out_hi = np.empty(lo.size, np.int64)
        _query_many(*self._args, lo, hi, out_lo, out_hi)
        return out_lo, out_hi

    def query_nonempty(self, i, j) -> SegmentAnswer:
        if self.rmax_a is None:
            raise CapabilityError("index was built without the non-empty variant")
        ans = self.query(i, j)
        if ans.kind == "range":
            return ans
        k = self.rmax_a.query(i, j)
        return SegmentAnswer("nonpositive", k, k)

    def left_min(self, x):
        """P[x] for internal position ``x`` in ``[1, n + 1]``."""
        N = self.n + 1
        if not 1 <= x <= N:
            raise RangeError(f"position {x} outside [1, {N}]")
        return int(left_min(self.g._bv, N, x))

    def left_sib(self, x):
        """Q[x] for an internal candidate position ``x``; None when undefined."""
        t = self.left_min(x)
        if t == x:
            raise ValueError(f"position {x} is not a candidate")
        q = int(left_sib(self.g._bv, self.h._bv, self.n + 1, t, x))
        return q or None

    # -- size and persistence --------------------------------------------

    def components(self):
        comps = [self.rmax_d.shape, self.rmin_c.shape, self.g.bp, self.h.bp]
        if self.rmax_a is not None:
            comps.append(self.rmax_a.shape)
        return comps

    def size_in_bits(self):
        return sum(c.size_in_bits() for c in self.components())

    def serialize(self) -> bytes:
        flags = FLAG_NONEMPTY if self.rmax_a is not None else 0
        parts = [_HEADER.pack(MAGIC, VERSION, flags, self.n)]
        for comp in self.components():
            parts.append(struct.pack("<Q", len(comp)))
            parts.append(comp.words.astype("<u8").tobytes())
        body = b"".join(parts)
        return body + struct.pack("<I", crc32c.crc32c(body))

    @classmethod
    def deserialize(cls, data) -> "RMaxSSQIndex":
        data = bytes(data)
        if len(data) < _HEADER.size + 4:
            raise FormatError("truncated", f"{len(data)} bytes is shorter than the header")
        magic, version, flags, n = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise FormatError("bad-magic", f"magic {magic!r} is not {MAGIC!r}")
        if version != VERSION:
            raise FormatError("unsupported-version", f"version {version} (expected {VERSION})")
        if flags & ~FLAG_NONEMPTY:
            raise FormatError("unsupported-version", f"unknown flag bits {flags:#x}")
        ncomp = 5 if flags & FLAG_NONEMPTY else 4
        pos = _HEADER.size
        raw = []
        for _ in range(ncomp):
            if pos + 8 > len(data) - 4:
                raise FormatError("truncated", "missing component header")
            (m,) = struct.unpack_from("<Q", data, pos)
            nbytes = ((m + 63) >> 6) * 8
            pos += 8
            if pos + nbytes > len(data) - 4:
                raise FormatError("truncated", "component payload cut short")
            raw.append((np.frombuffer(data, "<u8", (m + 63) >> 6, pos).astype(np.uint64), m))
            pos += nbytes
        if pos != len(data) - 4:
            raise FormatError("corrupt", "trailing bytes after the last component")
        (crc,) = struct.unpack_from("<I", data, pos)
        if crc != crc32c.crc32c(data[:pos]):
            raise FormatError("checksum", "CRC32C mismatch")
        N = n + 1
        lengths = [m for _, m in raw]
        want = [2 * n, 2 * N]
        if n < 1 or lengths[:2] != want or (ncomp == 5 and lengths[4] != 2 * n):
            raise FormatError("corrupt", f"component lengths {lengths} do not fit n={n}")
        try:
            rmax_d = RmqEncoding.from_words(*raw[0], "max")
            rmin_c = RmqEncoding.from_words(*raw[1], "min")
            g = OnePageGraph.from_words(N, *raw[2])
            h = OnePageGraph.from_words(N, *raw[3])
            rmax_a = RmqEncoding.from_words(*raw[4], "max") if ncomp == 5 else None
        except ValueError as exc:
            raise FormatError("corrupt", str(exc)) from exc
        return cls(n, rmax_d, rmin_c, g, h, rmax_a)

    def __eq__(self, other):
        return isinstance(other, RMaxSSQIndex) and self.serialize() == other.serialize()

    def __hash__(self):
        return hash(self.serialize())


def build_index(values, *, with_nonempty=False) -> RMaxSSQIndex:
    return RMaxSSQIndex.build(values, with_nonempty=with_nonempty)
