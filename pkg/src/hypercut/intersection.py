"""Partition-transversal matrices, subset-inclusion matrices, and their
exact ranks.

A(t,k,v) has one row per partition of {1..t} with block sizes v and one
column per k-subset in colex order; an entry is 1 exactly when the subset
picks one element from every block.  B(t,h,k) records containment of
k-subsets in h-subsets.  Row and column orders are fixed so that exported
matrices are byte-stable.
"""

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .combinat import (
    binomial,
    colex_subsets,
    enumerate_partitions,
    partition_count,
    rank_of_tuple,
)
from .linalg import ExactMatrix, exact_rank


@lru_cache(maxsize=32)
def build_A_array(t: int, k: int, v: tuple) -> np.ndarray:
    """The transversal incidence matrix as a 0/1 uint8 array.

    Same row/column layout as build_A; this is the carrier the heavy
    rank and solving paths use.
    """
    v = tuple(v)
    ncols = binomial(t, k)
    nrows = partition_count(t, v)
    a = np.zeros((nrows, ncols), dtype=np.uint8)
    for i, part in enumerate(enumerate_partitions(t, v)):
        row = a[i]
        for choice in product(*part.blocks):
            row[rank_of_tuple(sorted(choice))] = 1
    return a


def build_A(t: int, k: int, v) -> ExactMatrix:
    """Exact 0/1 matrix: rows = canonical partition stream, columns =
    colex k-subsets, entry 1 iff the subset is a transversal."""
    v = tuple(v)
    if len(v) != k:
        raise ValueError(f"size vector {v} has {len(v)} blocks, expected k={k}")
    arr = build_A_array(t, k, v)
    return ExactMatrix([[Fraction(int(x)) for x in row] for row in arr])


def build_B(t: int, h: int, k: int) -> ExactMatrix:
    """Inclusion matrix: rows = h-subsets, columns = k-subsets (both in
    colex order), entry 1 iff the column subset is contained in the row
    subset.  Requires t > h >= k >= 2."""
    if not t > h >= k >= 2:
        raise ValueError(f"need t > h >= k >= 2, got t={t} h={h} k={k}")
    cols = list(colex_subsets(t, k))
    data = []
    for hs in colex_subsets(t, h):
        hset = set(hs)
        data.append([Fraction(int(set(c) <= hset)) for c in cols])
    return ExactMatrix(data)


def build_B_array(t: int, h: int, k: int) -> np.ndarray:
    if not t > h >= k >= 2:
        raise ValueError(f"need t > h >= k >= 2, got t={t} h={h} k={k}")
    cols = list(colex_subsets(t, k))
    a = np.zeros((binomial(t, h), binomial(t, k)), dtype=np.uint8)
    for i, hs in enumerate(colex_subsets(t, h)):
        hset = set(hs)
        for j, c in enumerate(cols):
            if set(c) <= hset:
                a[i, j] = 1
    return a


def predicted_rank(t: int, k: int, v) -> int | None:
    """Rank predicted for A(t,k,v): binomial(t,k)-t+1 for constant v,
    binomial(t,k) otherwise; None when some block size is below k (the
    degenerate regime carries no prediction)."""
    v = tuple(v)
    if any(s < k for s in v):
        return None
    if all(s == v[0] for s in v):
        return binomial(t, k) - t + 1
    return binomial(t, k)


def rank_regime(t: int, k: int, v) -> str:
    """How solid the prediction is for these parameters.

    "proven" marks parameter ranges with a complete argument (all
    non-degenerate unbalanced vectors; balanced k=2 for every t; balanced
    k=3 for t >= 12).  Balanced k=3 below t=12 is "unguaranteed"; balanced
    k >= 4 has no explicit threshold and is reported as "empirical".
    """
    v = tuple(v)
    if any(s < k for s in v):
        return "degenerate"
    if not all(s == v[0] for s in v):
        return "proven"
    if k == 2:
        return "proven"
    if k == 3:
        return "proven" if t >= 12 else "unguaranteed"
    return "empirical"


@dataclass
class RankReport:
    t: int
    k: int
    v: tuple
    row_count: int
    col_count: int
    computed_rank: int
    predicted_rank: int | None
    match: bool | None
    regime: str
    elapsed_s: float

    def as_dict(self):
        return {
            "t": self.t,
            "k": self.k,
            "v": list(self.v),
            "rows": self.row_count,
            "cols": self.col_count,
            "computed_rank": self.computed_rank,
            "predicted_rank": self.predicted_rank,
            "match": self.match,
            "regime": self.regime,
            "elapsed_s": round(self.elapsed_s, 3),
        }


def verify_rank_theorem(t: int, k: int, v) -> RankReport:
    """Compute the exact rank of A(t,k,v) and compare it with the
    predicted value, when one applies."""
    v = tuple(v)
    if len(v) != k:
        raise ValueError(f"size vector {v} has {len(v)} blocks, expected k={k}")
    start = time.perf_counter()
    arr = build_A_array(t, k, v)
    computed = exact_rank(arr)
    elapsed = time.perf_counter() - start
    predicted = predicted_rank(t, k, v)
    match = None if predicted is None else computed == predicted
    return RankReport(
        t=t,
        k=k,
        v=v,
        row_count=arr.shape[0],
        col_count=arr.shape[1],
        computed_rank=computed,
        predicted_rank=predicted,
        match=match,
        regime=rank_regime(t, k, v),
        elapsed_s=elapsed,
    )
