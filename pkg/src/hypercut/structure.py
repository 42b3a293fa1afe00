"""Solution vectors of the exact balanced-cut property, their affine
geometry, and graph-side quotient/cut-norm machinery.

The fractional property asks for edge weights on the complete k-uniform
hypergraph on t vertices whose every balanced k-cut carries total
crossing weight exactly p(t/k)^k; in matrix form, A x = p(t/k)^k 1 for
the balanced transversal matrix A.  The uniform vector and the planted
vectors (weight 2pj/k on a set with j vertices in a chosen half) are
always solutions; the checks here verify, per instance, that they are
the only ones up to affine combinations.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .combinat import (
    binomial,
    colex_subsets,
    enumerate_partitions,
    partition_count,
    rank_of_tuple,
)
from .hypergraphs import (
    WeightedHypergraph,
    as_probability,
    cut_weight,
    membership_counts,
    random_cut,
    transversal_weight,
    CutSpec,
)
from .intersection import build_A_array
from .linalg import (
    SolutionSpace,
    _clear_row,
    _echelon,
    exact_rank,
    solve_affine,
)

_INT64_SAFE = 1 << 60


@dataclass
class SolutionVector:
    """Edge-weight vector on the k-subsets of {1..t}, colex-indexed."""

    t: int
    k: int
    p: Fraction
    entries: list
    provenance: str = "general"          # "uniform-p" | "planted" | "general"
    planted: tuple | None = None

    def __post_init__(self):
        self.p = as_probability(self.p)
        self.entries = [Fraction(x) for x in self.entries]
        if len(self.entries) != binomial(self.t, self.k):
            raise ValueError(
                f"need {binomial(self.t, self.k)} entries, got {len(self.entries)}"
            )


def make_u(t, k, p) -> SolutionVector:
    """The uniform vector: every k-set gets weight p."""
    p = as_probability(p)
    return SolutionVector(
        t, k, p, [p] * binomial(t, k), provenance="uniform-p"
    )


def make_v(t, k, p, a_vertices) -> SolutionVector:
    """The planted vector for the half A: a k-set with j vertices in A
    gets weight 2pj/k."""
    p = as_probability(p)
    if t % 2:
        raise ValueError(f"t must be even, got {t}")
    a_set = frozenset(a_vertices)
    if len(a_set) != t // 2 or not a_set <= set(range(1, t + 1)):
        raise ValueError("A must be a set of t/2 vertices inside 1..t")
    entries = [
        Fraction(2 * len(a_set.intersection(s)), k) * p
        for s in colex_subsets(t, k)
    ]
    return SolutionVector(
        t, k, p, entries, provenance="planted", planted=tuple(sorted(a_set))
    )


def _entries_of(x):
    return x.entries if isinstance(x, SolutionVector) else [Fraction(v) for v in x]


def is_Pstar_solution(x, t=None, k=None, p=None) -> bool:
    """True iff every balanced k-cut of {1..t} sees crossing weight
    exactly p(t/k)^k under the weights x."""
    if isinstance(x, SolutionVector):
        t = x.t if t is None else t
        k = x.k if k is None else k
        p = x.p if p is None else p
    if t is None or k is None or p is None:
        raise ValueError("t, k, p must be given for a bare entry vector")
    p = as_probability(p)
    if t % k:
        raise ValueError(f"t={t} must be divisible by k={k}")
    entries = _entries_of(x)
    if len(entries) != binomial(t, k):
        raise ValueError("entry vector has the wrong length")
    arr = build_A_array(t, k, (t // k,) * k).astype(np.int64)
    ints, den = _clear_row(entries)
    target = p * (t // k) ** k * den
    if target.denominator != 1:
        return False
    maxabs = max((abs(v) for v in ints), default=0)
    if maxabs * (t // k) ** k < _INT64_SAFE:
        prod = arr @ np.array(ints, dtype=np.int64)
        return bool(np.all(prod == int(target)))
    tgt = int(target)
    return all(
        sum(int(a) * v for a, v in zip(row, ints)) == tgt for row in arr
    )


def solution_space(t, k, p) -> SolutionSpace:
    """Exact particular solution and nullspace basis of the balanced-cut
    system A x = p(t/k)^k."""
    p = as_probability(p)
    if t % k:
        raise ValueError(f"t={t} must be divisible by k={k}")
    arr = build_A_array(t, k, (t // k,) * k)
    rhs = [p * (t // k) ** k] * arr.shape[0]
    sol = solve_affine(arr, rhs)
    if not isinstance(sol, SolutionSpace):
        raise AssertionError("balanced-cut system reported infeasible")
    return sol


def _planted_count_matrix(t, k):
    """Columns: for every half A of {1..t}, the colex vector of
    |S intersect A| over k-subsets S."""
    cols = []
    halves = []
    for a_tuple in combinations(range(1, t + 1), t // 2):
        member = np.zeros(t, dtype=bool)
        member[[a - 1 for a in a_tuple]] = True
        cols.append(membership_counts(t, k, member))
        halves.append(a_tuple)
    return np.stack(cols, axis=1), halves


@dataclass
class StructureReport:
    t: int
    k: int
    p: Fraction
    planted_count: int
    uniform_is_solution: bool
    all_planted_are_solutions: bool
    affine_rank_points: int
    system_rank: int
    nullity: int
    nullspace_in_planted_span: bool

    @property
    def passed(self):
        return (
            self.uniform_is_solution
            and self.all_planted_are_solutions
            and self.affine_rank_points == self.t
            and self.nullspace_in_planted_span
        )

    def as_dict(self):
        return {
            "t": self.t,
            "k": self.k,
            "p": str(self.p),
            "planted_count": self.planted_count,
            "uniform_is_solution": self.uniform_is_solution,
            "all_planted_are_solutions": self.all_planted_are_solutions,
            "affine_rank_points": self.affine_rank_points,
            "affine_direction_dim": self.affine_rank_points - 1,
            "system_rank": self.system_rank,
            "nullity": self.nullity,
            "nullspace_in_planted_span": self.nullspace_in_planted_span,
            "passed": self.passed,
        }


def verify_structure_theorem(t, k, p) -> StructureReport:
    """Verify, for one (t,k,p), that the solutions of the balanced-cut
    system are exactly the affine span of the uniform and planted vectors.

    Three computations: (a) the uniform vector and every planted vector
    solve the system; (b) those 1 + C(t, t/2) points have affine rank
    exactly t; (c) every nullspace basis vector lies in the linear span
    of the planted-minus-uniform differences.  Together they pin the
    solution space to the claimed affine subspace.
    """
    p = as_probability(p)
    if p == 0:
        raise ValueError("p must be positive for the structure check")
    if t % k or t % 2:
        raise ValueError(f"need k | t and t even, got t={t} k={k}")
    arr = build_A_array(t, k, (t // k,) * k).astype(np.int64)

    # (a) uniform: row sums must all equal (t/k)^k
    row_sums = arr.sum(axis=1)
    uniform_ok = bool(np.all(row_sums == (t // k) ** k))

    # (a) planted: A @ jvec must be constant (t/2)(t/k)^(k-1); this is
    # the p-cleared form of A v = p(t/k)^k
    jmat, _ = _planted_count_matrix(t, k)
    expected = (t // 2) * (t // k) ** (k - 1)
    planted_ok = bool(np.all(arr @ jmat == expected))

    # (b) affine rank of {u} union planted: differences scale to 2j - k
    diffs = (2 * jmat.T - k).astype(np.int64)
    rank_points = 1 + exact_rank(diffs)

    # (c) nullspace of the system inside span{v - u}
    sol = solution_space(t, k, p)
    rows = [(i, list(r)) for i, r in enumerate(diffs)]
    span = _echelon(rows, diffs.shape[1])
    in_span = True
    for vec in sol.nullspace_basis:
        ints, _ = _clear_row(vec)
        if not span.contains(ints):
            in_span = False
            break

    return StructureReport(
        t=t,
        k=k,
        p=p,
        planted_count=jmat.shape[1],
        uniform_is_solution=uniform_ok,
        all_planted_are_solutions=planted_ok,
        affine_rank_points=rank_points,
        system_rank=sol.system_rank,
        nullity=sol.nullity,
        nullspace_in_planted_span=in_span,
    )


@dataclass
class DensityVector:
    """Per-k-subset cut densities induced by an equipartition into t
    parts: entry at K is the transversal weight among the K-indexed parts
    divided by (n/t)^k."""

    t: int
    k: int
    entries: list
    parts: tuple


def density_vector(h: WeightedHypergraph, parts) -> DensityVector:
    parts = tuple(tuple(sorted(c)) for c in parts)
    t = len(parts)
    if h.n % t:
        raise ValueError(f"{t} parts cannot equipartition {h.n} vertices")
    size = h.n // t
    if any(len(c) != size for c in parts):
        raise ValueError("parts must have equal sizes n/t")
    CutSpec.from_classes(h.n, parts)  # validates disjoint cover
    norm = Fraction(size**h.k)
    entries = []
    for ks in colex_subsets(t, h.k):
        w = transversal_weight(h, [parts[i - 1] for i in ks])
        entries.append(Fraction(w) / norm)
    return DensityVector(t, h.k, entries, parts)


@dataclass
class DeltaReport:
    """Worst normalized deviation of balanced-cut weights from p(n/k)^k."""

    n: int
    k: int
    p: Fraction
    mode: str          # "exhaustive" | "sampled"
    cuts_inspected: int
    delta: Fraction
    seed: int | None = None

    def as_dict(self):
        return {
            "n": self.n,
            "k": self.k,
            "p": str(self.p),
            "mode": self.mode,
            "cuts_inspected": self.cuts_inspected,
            "delta": str(self.delta),
            "delta_float": float(self.delta),
            "seed": self.seed,
        }


_EXHAUSTIVE_CUT_CAP = 200_000


def delta_closeness(h: WeightedHypergraph, p, trials=None, seed=0) -> DeltaReport:
    """Max over balanced k-cuts of |cut weight - p(n/k)^k| / n^k,
    exhaustively when the cut count permits, else over sampled cuts."""
    p = as_probability(p)
    n, k = h.n, h.k
    if n % k:
        raise ValueError(f"k={k} must divide n={n}")
    sizes = (n // k,) * k
    target = p * (n // k) ** k
    worst = Fraction(0)
    if trials is None:
        count = partition_count(n, sizes)
        if count > _EXHAUSTIVE_CUT_CAP:
            raise ValueError(
                f"{count} balanced cuts is past the exhaustive cap; pass trials="
            )
        for part in enumerate_partitions(n, sizes):
            w = transversal_weight(h, part.blocks)
            worst = max(worst, abs(Fraction(w) - target))
        return DeltaReport(n, k, p, "exhaustive", count, worst / n**k)
    gen = np.random.Generator(np.random.Philox(key=seed))
    alpha = (Fraction(1, k),) * k
    for _ in range(trials):
        cut = random_cut(n, alpha, gen)
        w = cut_weight(h, cut)
        worst = max(worst, abs(Fraction(w) - target))
    return DeltaReport(n, k, p, "sampled", trials, worst / n**k, seed=seed)


class WeightedGraph:
    """Symmetric rational weight matrix with zero diagonal."""

    def __init__(self, weights):
        w = [[Fraction(x) for x in row] for row in weights]
        n = len(w)
        if any(len(row) != n for row in w):
            raise ValueError("weight matrix must be square")
        for i in range(n):
            if w[i][i] != 0:
                raise ValueError("diagonal weights must be zero")
            for j in range(i):
                if w[i][j] != w[j][i]:
                    raise ValueError("weight matrix must be symmetric")
        self.n = n
        self.w = w

    def weight(self, u, v):
        """Weight of the pair {u, v}, vertices 1-based."""
        return self.w[u - 1][v - 1]

    def __eq__(self, other):
        return isinstance(other, WeightedGraph) and self.w == other.w


def graph_from_hypergraph(h: WeightedHypergraph) -> WeightedGraph:
    """View a 2-uniform hypergraph as a weighted graph."""
    if h.k != 2:
        raise ValueError(f"need k = 2, got k={h.k}")
    n = h.n
    w = [[Fraction(0)] * n for _ in range(n)]
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            x = Fraction(h.weight_at(rank_of_tuple((u, v))))
            w[u - 1][v - 1] = x
            w[v - 1][u - 1] = x
    return WeightedGraph(w)


def quotient_graph(g: WeightedGraph, parts) -> WeightedGraph:
    """Replace every inter-part weight by its part-pair density
    e(V_i,V_j)/|V_i||V_j| and every intra-part weight by zero."""
    parts = tuple(tuple(sorted(c)) for c in parts)
    t = len(parts)
    if g.n % t:
        raise ValueError(f"{t} parts cannot equipartition {g.n} vertices")
    size = g.n // t
    if any(len(c) != size for c in parts):
        raise ValueError("parts must have equal sizes n/t")
    seen = [x for c in parts for x in c]
    if sorted(seen) != list(range(1, g.n + 1)):
        raise ValueError("parts must partition 1..n")
    part_of = {}
    for i, c in enumerate(parts):
        for x in c:
            part_of[x] = i
    dens = [[Fraction(0)] * t for _ in range(t)]
    for i in range(t):
        for j in range(i + 1, t):
            e = sum(g.weight(u, v) for u in parts[i] for v in parts[j])
            dens[i][j] = dens[j][i] = e / (size * size)
    w = [[Fraction(0)] * g.n for _ in range(g.n)]
    for u in range(1, g.n + 1):
        for v in range(u + 1, g.n + 1):
            pu, pv = part_of[u], part_of[v]
            if pu != pv:
                w[u - 1][v - 1] = w[v - 1][u - 1] = dens[pu][pv]
    return WeightedGraph(w)


_CUT_NORM_CAP = 14


def _int_difference(g1: WeightedGraph, g2: WeightedGraph):
    if g1.n != g2.n:
        raise ValueError(f"graph sizes differ: {g1.n} vs {g2.n}")
    den = 1
    for i in range(g1.n):
        for j in range(g1.n):
            d = (g1.w[i][j] - g2.w[i][j]).denominator
            den = den * d // math.gcd(den, d)
    diff = [
        [int((g1.w[i][j] - g2.w[i][j]) * den) for j in range(g1.n)]
        for i in range(g1.n)
    ]
    return diff, den


def cut_norm(g1: WeightedGraph, g2: WeightedGraph) -> Fraction:
    """Exact cut-norm distance: max over vertex-set pairs (S,T) of the
    ordered-pair weight discrepancy |e1(S,T) - e2(S,T)|, normalized by n^2.

    For each S the maximizing T is read off the signs of the column sums,
    so the search walks the 2^n subsets S with Gray-code updates.  Exact
    mode is capped at n <= 14.
    """
    n = g1.n
    if n > _CUT_NORM_CAP:
        raise ValueError(
            f"exact cut norm capped at n <= {_CUT_NORM_CAP}; "
            "use cut_norm_lower_bound for larger graphs"
        )
    diff, den = _int_difference(g1, g2)
    if n == 0:
        return Fraction(0)
    dmax = max(abs(x) for row in diff for x in row)
    if dmax * n >= _INT64_SAFE:
        return _cut_norm_python(diff, den, n)
    d = np.array(diff, dtype=np.int64)
    colsums = np.zeros(n, dtype=np.int64)
    best = 0
    in_s = [False] * n
    for step in range(1, 1 << n):
        b = (step & -step).bit_length() - 1
        if in_s[b]:
            colsums -= d[b]
        else:
            colsums += d[b]
        in_s[b] = not in_s[b]
        pos = int(colsums[colsums > 0].sum())
        neg = -int(colsums[colsums < 0].sum())
        if pos > best:
            best = pos
        if neg > best:
            best = neg
    return Fraction(best, den * n * n)


def _cut_norm_python(diff, den, n):
    colsums = [0] * n
    best = 0
    in_s = [False] * n
    for step in range(1, 1 << n):
        b = (step & -step).bit_length() - 1
        row = diff[b]
        if in_s[b]:
            colsums = [c - x for c, x in zip(colsums, row)]
        else:
            colsums = [c + x for c, x in zip(colsums, row)]
        in_s[b] = not in_s[b]
        pos = sum(c for c in colsums if c > 0)
        neg = -sum(c for c in colsums if c < 0)
        best = max(best, pos, neg)
    return Fraction(best, den * n * n)


def cut_norm_lower_bound(g1: WeightedGraph, g2: WeightedGraph,
                         seed=0, restarts=16) -> Fraction:
    """Certified lower bound on the cut-norm distance by alternating
    sign maximization from random starts; exact arithmetic, but only a
    bound, for graphs past the exact-mode cap."""
    n = g1.n
    diff, den = _int_difference(g1, g2)
    d = [row[:] for row in diff]
    gen = np.random.Generator(np.random.Philox(key=seed))
    best = 0
    for _ in range(restarts):
        s = gen.random(n) < 0.5
        for _ in range(64):
            cols = [sum(d[i][j] for i in range(n) if s[i]) for j in range(n)]
            val_pos = sum(c for c in cols if c > 0)
            val_neg = -sum(c for c in cols if c < 0)
            tsel = [c > 0 for c in cols] if val_pos >= val_neg else [c < 0 for c in cols]
            rows = [sum(d[i][j] for j in range(n) if tsel[j]) for i in range(n)]
            sign = 1 if val_pos >= val_neg else -1
            new_s = [sign * r > 0 for r in rows]
            val = abs(sum(r for r, keep in zip(rows, new_s) if keep))
            if list(new_s) == list(s):
                break
            s = new_s
        best = max(best, val)
    return Fraction(best, den * n * n)


def write_vector_file(path, t, k, p, entries):
    """Text format: header "t k p", then "rank num/den" per nonzero entry."""
    entries = [Fraction(x) for x in entries]
    with open(path, "w") as fh:
        p = Fraction(p)
        fh.write(f"{t} {k} {p.numerator}/{p.denominator}\n")
        for r, x in enumerate(entries):
            if x:
                fh.write(f"{r} {x.numerator}/{x.denominator}\n")


def read_vector_file(path):
    """Returns (t, k, p, entries)."""
    with open(path) as fh:
        t_s, k_s, p_s = fh.readline().split()
        t, k = int(t_s), int(k_s)
        entries = [Fraction(0)] * binomial(t, k)
        for line in fh:
            if line.strip():
                r_s, val = line.split()
                entries[int(r_s)] = Fraction(val)
    return t, k, Fraction(p_s), entries


def write_graph(g: WeightedGraph, path):
    """Text format: header "n", then the strict upper triangle row by row."""
    with open(path, "w") as fh:
        fh.write(f"{g.n}\n")
        for i in range(g.n - 1):
            fh.write(" ".join(_fmt(x) for x in g.w[i][i + 1 :]) + "\n")


def read_graph(path) -> WeightedGraph:
    with open(path) as fh:
        n = int(fh.readline())
        w = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n - 1):
            parts = fh.readline().split()
            if len(parts) != n - i - 1:
                raise ValueError("graph file row width mismatch")
            for off, s in enumerate(parts):
                x = Fraction(s)
                w[i][i + 1 + off] = x
                w[i + 1 + off][i] = x
    return WeightedGraph(w)


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
