"""Succinct range maximum-sum segment queries, k-covers and MSS-tree counting."""
from .bits import BalancedParenthesisSequence, RankSelectBitVector
from .errors import (CapabilityError, FormatError, LimitError, NestingError, NotFoundError,
                     RangeError, SegsumError, ValueOverflowError)
from .index import RMaxSSQIndex, SegmentAnswer, build_index
from .kcover import (KCoverAnswer, MultiKIndex, TransformationTree, build_tree, max_kcover,
                     preprocess_levels, query_k)
from .mss import MssCountTable, MssTree, count_distinct_trees, count_tables, extract_mss_tree, growth_estimate
from .onepage import OnePageGraph
from .rmq import RmqEncoding

__all__ = [
    "BalancedParenthesisSequence", "CapabilityError", "FormatError", "KCoverAnswer", "LimitError",
    "MssCountTable", "MssTree", "MultiKIndex", "NestingError", "NotFoundError", "OnePageGraph",
    "RMaxSSQIndex", "RangeError", "RankSelectBitVector", "RmqEncoding", "SegmentAnswer",
    "SegsumError", "TransformationTree", "ValueOverflowError", "build_index", "build_tree",
    "count_distinct_trees", "count_tables", "extract_mss_tree", "growth_estimate", "max_kcover",
    "preprocess_levels", "query_k",
]
