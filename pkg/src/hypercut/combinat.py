"""Subsets and size-constrained partitions of {1..t}, with exact counting.

Ground sets are 1-based.  k-subsets are ordered colexicographically
(sorted by largest element, ties broken by the next-largest, and so on),
which keeps ranks stable when the ground set grows.  Partitions whose
size vector repeats a block size are treated as unordered among the
equal-size blocks; the canonical representative lists equal-size blocks
by increasing minimum element.
"""

import math
from itertools import product


def binomial(n: int, r: int) -> int:
    """Exact binomial coefficient; 0 whenever r < 0 or r > n."""
    if n < 0:
        raise ValueError(f"binomial: n must be nonnegative, got {n}")
    if r < 0 or r > n:
        return 0
    return math.comb(n, r)


class KSubset:
    """A k-element subset of {1..t}, stored in increasing order."""

    __slots__ = ("elements", "t")

    def __init__(self, elements, t):
        elements = tuple(elements)
        if any(elements[i] >= elements[i + 1] for i in range(len(elements) - 1)):
            raise ValueError(f"subset elements must be strictly increasing: {elements}")
        if elements and not (1 <= elements[0] and elements[-1] <= t):
            raise ValueError(f"subset elements must lie in 1..{t}: {elements}")
        self.elements = elements
        self.t = t

    @property
    def k(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, KSubset)
            and self.elements == other.elements
            and self.t == other.t
        )

    def __hash__(self):
        return hash((self.elements, self.t))

    def __repr__(self):
        return f"KSubset({set(self.elements) or '{}'}, t={self.t})"


class BalancedPartition:
    """A partition of {1..t} into blocks of prescribed sizes."""

    __slots__ = ("blocks", "t")

    def __init__(self, blocks, t):
        blocks = tuple(tuple(sorted(b)) for b in blocks)
        seen = set()
        for b in blocks:
            if not b:
                raise ValueError("empty block in partition")
            for x in b:
                if x in seen:
                    raise ValueError(f"element {x} appears in two blocks")
                seen.add(x)
        if seen != set(range(1, t + 1)):
            raise ValueError(f"blocks do not partition 1..{t}")
        self.blocks = blocks
        self.t = t

    @property
    def sizes(self):
        return tuple(len(b) for b in self.blocks)

    @property
    def k(self):
        return len(self.blocks)

    def __eq__(self, other):
        return (
            isinstance(other, BalancedPartition)
            and self.blocks == other.blocks
            and self.t == other.t
        )

    def __hash__(self):
        return hash((self.blocks, self.t))

    def __repr__(self):
        body = ", ".join(str(set(b)) for b in self.blocks)
        return f"BalancedPartition([{body}], t={self.t})"


def rank_of_tuple(elements) -> int:
    """Colex rank of a sorted tuple of 1-based elements (no bound checks)."""
    r = 0
    for i, c in enumerate(elements):
        r += binomial(c - 1, i + 1)
    return r


def ksubset_rank(s: KSubset) -> int:
    """Colex rank of a k-subset, a bijection onto 0..binomial(t,k)-1."""
    return rank_of_tuple(s.elements)


def unrank_tuple(index: int, t: int, k: int):
    """Sorted 1-based tuple of the k-subset with the given colex rank."""
    if not 0 <= index < binomial(t, k):
        raise ValueError(f"rank {index} out of range for {k}-subsets of 1..{t}")
    out = [0] * k
    r = index
    c = t
    for i in range(k, 0, -1):
        # largest c with binomial(c-1, i) <= r
        while binomial(c - 1, i) > r:
            c -= 1
        out[i - 1] = c
        r -= binomial(c - 1, i)
        c -= 1
    return tuple(out)


def ksubset_unrank(index: int, t: int, k: int) -> KSubset:
    return KSubset(unrank_tuple(index, t, k), t)


def colex_subsets(t: int, k: int):
    """Yield all k-subsets of {1..t} as sorted tuples, in colex order."""
    if k == 0:
        yield ()
        return
    if k > t:
        return

    def rec(top, size):
        if size == 0:
            yield ()
            return
        for c in range(size, top + 1):
            for rest in rec(c - 1, size - 1):
                yield rest + (c,)

    yield from rec(t, k)


def partition_count(t: int, sizes) -> int:
    """Number of partitions of {1..t} with the given block sizes, blocks of
    equal size unordered."""
    _check_sizes(t, sizes)
    count = math.factorial(t)
    for s in sizes:
        count //= math.factorial(s)
    mult = {}
    for s in sizes:
        mult[s] = mult.get(s, 0) + 1
    for c in mult.values():
        count //= math.factorial(c)
    return count


def _check_sizes(t, sizes):
    sizes = tuple(sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError(f"block sizes must be positive: {sizes}")
    if sum(sizes) != t:
        raise ValueError(f"block sizes {sizes} do not sum to t={t}")
    return sizes


def enumerate_partitions(t: int, sizes):
    """Yield every partition of {1..t} with the given block sizes, each
    exactly once, in a fixed depth-first order.

    Blocks keep the positions of the size vector; among empty blocks of
    equal size only the earliest may be opened, which canonicalizes
    equal-size blocks by increasing minimum element.
    """
    sizes = _check_sizes(t, sizes)
    k = len(sizes)
    blocks = [[] for _ in range(k)]

    def rec(e):
        if e > t:
            yield BalancedPartition([tuple(b) for b in blocks], t)
            return
        open_sizes = set()
        for bi in range(k):
            b = blocks[bi]
            if len(b) >= sizes[bi]:
                continue
            if not b:
                if sizes[bi] in open_sizes:
                    continue
                open_sizes.add(sizes[bi])
            b.append(e)
            yield from rec(e + 1)
            b.pop()

    yield from rec(1)


def is_transversal(s: KSubset, p: BalancedPartition) -> bool:
    """True iff the subset meets every block of the partition exactly once."""
    if s.t != p.t:
        raise ValueError(f"ground sets differ: {s.t} vs {p.t}")
    if s.k != p.k:
        raise ValueError(f"subset size {s.k} != number of blocks {p.k}")
    elems = set(s.elements)
    return all(len(elems.intersection(b)) == 1 for b in p.blocks)


def transversal_tuples(blocks):
    """Yield the sorted k-tuples picking one element from each block."""
    for choice in product(*blocks):
        yield tuple(sorted(choice))
