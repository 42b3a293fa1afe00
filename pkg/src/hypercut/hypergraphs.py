"""Random and exact weighted k-uniform hypergraphs, with cut statistics.

Edge weights live in a dense vector indexed by the colex rank of the
k-subset.  Indicator hypergraphs keep the vector as a numpy uint8 array
and derive a per-edge vertex table for vectorized statistics; fractional
hypergraphs keep exact rationals.

Sampling is driven by the Philox counter-based generator (numpy's
implementation, 64-bit key): the i-th uniform drawn under a seed decides
the k-set of colex rank i, so a fixed seed reproduces the same hypergraph
bit for bit and the decision for one edge never depends on another.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from .combinat import binomial, colex_subsets, rank_of_tuple

_MAX_WEIGHTS = 2 * 10**7


def as_probability(p) -> Fraction:
    p = p if isinstance(p, Fraction) else Fraction(str(p)) if isinstance(p, float) else Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError(f"probability {p} outside [0, 1]")
    return p


@dataclass
class HypergraphOrigin:
    """How a hypergraph was produced; lets the checkers compute the exact
    per-edge Bernoulli variance of a statistic."""

    kind: str                      # "gnp" | "ckp"
    p: Fraction
    planted: tuple | None = None   # the half with boosted density, 1-based


class WeightedHypergraph:
    """k-uniform hypergraph on {1..n} with colex-indexed edge weights."""

    def __init__(self, n, k, mode, weights, origin=None):
        if mode not in ("indicator", "fractional"):
            raise ValueError(f"unknown mode {mode!r}")
        m = binomial(n, k)
        if len(weights) != m:
            raise ValueError(f"weight vector length {len(weights)} != C({n},{k})")
        if mode == "indicator":
            weights = np.asarray(weights, dtype=np.uint8)
            if weights.max(initial=0) > 1:
                raise ValueError("indicator weights must be 0/1")
        else:
            weights = [Fraction(w) for w in weights]
        self.n = n
        self.k = k
        self.mode = mode
        self.weights = weights
        self.origin = origin
        self._verts = None

    @property
    def is_indicator(self):
        return self.mode == "indicator"

    def weight_at(self, rank):
        w = self.weights[rank]
        return int(w) if self.is_indicator else w

    def total_weight(self):
        if self.is_indicator:
            return int(self.weights.sum(dtype=np.int64))
        return sum(self.weights, Fraction(0))

    def edge_ranks(self):
        if not self.is_indicator:
            raise ValueError("edge_ranks needs an indicator hypergraph")
        return np.nonzero(self.weights)[0]

    def vertex_table(self):
        """(edges, k) array of 0-based vertices of the realized edges."""
        if self._verts is None:
            self._verts = unrank_table(self.edge_ranks(), self.n, self.k)
        return self._verts


def unrank_table(ranks, n, k):
    """Vectorized colex unrank: ranks -> (len, k) array of 0-based vertices,
    columns in increasing order."""
    ranks = np.asarray(ranks, dtype=np.int64)
    out = np.empty((len(ranks), k), dtype=np.int32)
    r = ranks.copy()
    for i in range(k, 0, -1):
        table = np.array([math.comb(m, i) for m in range(n + 1)], dtype=np.int64)
        c = np.searchsorted(table, r, side="right") - 1
        out[:, i - 1] = c
        r -= table[c]
    return out


def membership_counts(n, k, member):
    """For every k-subset of {1..n} in colex order, how many of its
    elements satisfy the 0-based membership mask."""
    member = np.asarray(member)
    jv = member.astype(np.int64)
    for m in range(2, k + 1):
        parts = [jv[: math.comb(c, m - 1)] + int(member[c]) for c in range(m - 1, n)]
        jv = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
    return jv


def _philox(seed):
    return np.random.Generator(np.random.Philox(key=seed))


def _check_scale(n, k):
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    if binomial(n, k) > _MAX_WEIGHTS:
        raise ValueError(f"C({n},{k}) weights is past the dense-storage budget")


def sample_gnp(n, k, p, seed) -> WeightedHypergraph:
    """Each k-subset becomes an edge independently with probability p."""
    p = as_probability(p)
    _check_scale(n, k)
    u = _philox(seed).random(binomial(n, k))
    w = (u < float(p)).astype(np.uint8)
    return WeightedHypergraph(n, k, "indicator", w, HypergraphOrigin("gnp", p))


def sample_ckp(n, k, p, seed, shuffle=False):
    """Planted-bipartition hypergraph: a k-set with j vertices in the
    planted half A appears with probability 2pj/k.

    Returns (hypergraph, (A, B)).  By default A = {1..n/2}; with
    shuffle=True a seed-driven permutation hides the planted half, and the
    returned (A, B) reflect it.
    """
    p = as_probability(p)
    if n % 2:
        raise ValueError(f"n must be even, got {n}")
    if p > Fraction(1, 2):
        raise ValueError(f"construction needs p <= 1/2, got {p}")
    _check_scale(n, k)
    gen = _philox(seed)
    u = gen.random(binomial(n, k))
    if shuffle:
        a_vertices = tuple(sorted(int(x) + 1 for x in gen.permutation(n)[: n // 2]))
    else:
        a_vertices = tuple(range(1, n // 2 + 1))
    member = np.zeros(n, dtype=bool)
    member[[a - 1 for a in a_vertices]] = True
    jv = membership_counts(n, k, member)
    thresh = np.array([float(Fraction(2 * j, k) * p) for j in range(k + 1)])
    w = (u < thresh[jv]).astype(np.uint8)
    b_vertices = tuple(x for x in range(1, n + 1) if not member[x - 1])
    h = WeightedHypergraph(
        n, k, "indicator", w, HypergraphOrigin("ckp", p, planted=a_vertices)
    )
    return h, (a_vertices, b_vertices)


def exact_ckp_weights(n, k, p, a_vertices) -> WeightedHypergraph:
    """The expectation of the planted construction as an exact fractional
    hypergraph: weight 2pj/k on every k-set with j vertices in A."""
    p = as_probability(p)
    if n % 2:
        raise ValueError(f"n must be even, got {n}")
    if p > Fraction(1, 2):
        raise ValueError(f"construction needs p <= 1/2, got {p}")
    a_set = frozenset(a_vertices)
    if len(a_set) != n // 2 or not a_set <= set(range(1, n + 1)):
        raise ValueError("A must be a set of n/2 vertices inside 1..n")
    _check_scale(n, k)
    weights = [
        Fraction(2 * len(a_set.intersection(s)), k) * p for s in colex_subsets(n, k)
    ]
    return WeightedHypergraph(
        n, k, "fractional", weights,
        HypergraphOrigin("ckp", p, planted=tuple(sorted(a_set))),
    )


def edge_weight_within(h: WeightedHypergraph, vertices):
    """Total weight of the k-sets entirely inside the given vertex set."""
    u = sorted(set(vertices))
    if u and not (1 <= u[0] and u[-1] <= h.n):
        raise ValueError("vertices outside 1..n")
    if len(u) < h.k:
        return 0
    if h.is_indicator:
        mask = np.zeros(h.n, dtype=bool)
        mask[[x - 1 for x in u]] = True
        verts = h.vertex_table()
        if len(verts) == 0:
            return 0
        return int(np.all(mask[verts], axis=1).sum())
    total = Fraction(0)
    for s in combinations(u, h.k):
        total += h.weights[rank_of_tuple(s)]
    return total


def _class_vector(n, classes):
    cls = np.full(n, -1, dtype=np.int64)
    for idx, c in enumerate(classes):
        for x in c:
            if not 1 <= x <= n:
                raise ValueError(f"vertex {x} outside 1..{n}")
            if cls[x - 1] != -1:
                raise ValueError(f"vertex {x} appears in two classes")
            cls[x - 1] = idx
    return cls


def transversal_weight(h: WeightedHypergraph, classes):
    """Total weight of k-sets picking exactly one vertex from each of the
    k given disjoint classes."""
    classes = [tuple(sorted(c)) for c in classes]
    if len(classes) != h.k:
        raise ValueError(f"need exactly k={h.k} classes, got {len(classes)}")
    cls = _class_vector(h.n, classes)
    if h.is_indicator:
        verts = h.vertex_table()
        if len(verts) == 0:
            return 0
        ec = cls[verts]
        covered = np.all(ec >= 0, axis=1)
        ecs = np.sort(ec, axis=1)
        distinct = np.all(np.diff(ecs, axis=1) > 0, axis=1)
        return int((covered & distinct).sum())
    total = Fraction(0)
    for choice in product(*classes):
        total += h.weights[rank_of_tuple(tuple(sorted(choice)))]
    return total


@dataclass
class CutSpec:
    """Partition of {1..n} into r classes with prescribed size fractions."""

    n: int
    classes: tuple
    alpha: tuple

    def __post_init__(self):
        self.classes = tuple(tuple(sorted(c)) for c in self.classes)
        cls = _class_vector(self.n, self.classes)
        if np.any(cls < 0):
            raise ValueError("classes do not cover 1..n")
        self.alpha = tuple(Fraction(a) for a in self.alpha)
        for c, a in zip(self.classes, self.alpha):
            if Fraction(len(c)) != a * self.n:
                raise ValueError(
                    f"class of size {len(c)} does not match fraction {a} of n={self.n}"
                )

    @classmethod
    def from_classes(cls, n, classes):
        classes = tuple(tuple(sorted(c)) for c in classes)
        return cls(n, classes, tuple(Fraction(len(c), n) for c in classes))

    @property
    def r(self):
        return len(self.classes)


def cut_weight(h: WeightedHypergraph, cut: CutSpec):
    """Total weight of edges meeting every class of the cut in at most one
    vertex; for r classes and k-uniform edges this means the k vertices
    land in k distinct classes."""
    if cut.n != h.n:
        raise ValueError(f"cut on {cut.n} vertices, hypergraph on {h.n}")
    if cut.r < h.k:
        raise ValueError(f"cut has {cut.r} classes, fewer than k={h.k}")
    if h.is_indicator:
        cls = _class_vector(h.n, cut.classes)
        verts = h.vertex_table()
        if len(verts) == 0:
            return 0
        ecs = np.sort(cls[verts], axis=1)
        distinct = np.all(np.diff(ecs, axis=1) > 0, axis=1)
        return int(distinct.sum())
    total = Fraction(0)
    for chosen in combinations(cut.classes, h.k):
        total += transversal_weight(h, chosen)
    return total


def inclusion_exclusion_cut(h: WeightedHypergraph, classes):
    """The transversal weight of k disjoint classes computed only from
    edge_weight_within on unions of classes, by inclusion-exclusion."""
    classes = [tuple(sorted(c)) for c in classes]
    if len(classes) != h.k:
        raise ValueError(f"need exactly k={h.k} classes")
    _class_vector(h.n, classes)  # validates disjointness
    k = h.k
    total = 0
    for m in range(k, 0, -1):
        sign = (-1) ** (k - m)
        for chosen in combinations(classes, m):
            union = [x for c in chosen for x in c]
            total += sign * edge_weight_within(h, union)
    return total


@dataclass
class TypeZVector:
    """Positive rational per class, summing to r/2: the fraction of each
    class drawn from the planted half, scaled by r."""

    z: tuple

    def __post_init__(self):
        self.z = tuple(Fraction(x) for x in self.z)
        if any(x <= 0 for x in self.z):
            raise ValueError("all entries must be positive")
        if sum(self.z) != Fraction(len(self.z), 2):
            raise ValueError(f"entries must sum to r/2 = {Fraction(len(self.z), 2)}")

    @property
    def r(self):
        return len(self.z)


def type_z_inner_sum(r, k, j, z):
    """s_{r,k,j}: over all k-subsets K of the classes and j-subsets J of K,
    the product of z inside J and (1-z) on K-J."""
    zs = list(z.z) if isinstance(z, TypeZVector) else [Fraction(x) for x in z]
    if len(zs) != r:
        raise ValueError(f"z has {len(zs)} entries, expected r={r}")
    total = Fraction(0)
    for kset in combinations(range(r), k):
        for jset in combinations(kset, j):
            term = Fraction(1)
            jset = set(jset)
            for i in kset:
                term *= zs[i] if i in jset else 1 - zs[i]
            total += term
    return total


def type_z_density(r, k, p, z) -> Fraction:
    """Expected edge density of a type-z balanced r-cut of the planted
    construction; identically p whenever the entries of z sum to r/2."""
    if not r >= k >= 2:
        raise ValueError(f"need r >= k >= 2, got r={r} k={k}")
    p = as_probability(p)
    if not isinstance(z, TypeZVector):
        z = TypeZVector(tuple(z))
    if z.r != r:
        raise ValueError(f"z has {z.r} entries, expected r={r}")
    acc = Fraction(0)
    for j in range(1, k + 1):
        acc += Fraction(2 * j, k) * p * type_z_inner_sum(r, k, j, z)
    return acc / binomial(r, k)


def monomial_coefficients(r, k, p) -> dict:
    """Multilinear expansion of sum_j (2pj/k) s_{r,k,j} in z_1..z_r.

    Returns {frozenset J: coefficient} for every J of size at most k,
    including the vanishing ones.  Desk scale: r <= 7.
    """
    if not r >= k >= 2:
        raise ValueError(f"need r >= k >= 2, got r={r} k={k}")
    if r > 7:
        raise ValueError(f"symbolic expansion capped at r <= 7, got r={r}")
    p = as_probability(p)
    coeffs = {}
    for size in range(k + 1):
        for j_set in combinations(range(1, r + 1), size):
            coeffs[frozenset(j_set)] = Fraction(0)
    for j in range(1, k + 1):
        scale = Fraction(2 * j, k) * p
        for kset in combinations(range(1, r + 1), k):
            for jset in combinations(kset, j):
                rest = [i for i in kset if i not in jset]
                for tset_size in range(len(rest) + 1):
                    for tset in combinations(rest, tset_size):
                        key = frozenset(jset) | frozenset(tset)
                        coeffs[key] += scale * (-1) ** tset_size
    return coeffs


def _transversal_profile(classes, planted):
    """Counts N_j of transversal k-sets with exactly j planted vertices,
    as the coefficients of prod_i (b_i + a_i x)."""
    planted = set(planted)
    poly = [1]
    for c in classes:
        a = sum(1 for x in c if x in planted)
        b = len(c) - a
        new = [0] * (len(poly) + 1)
        for d, coef in enumerate(poly):
            new[d] += coef * b
            new[d + 1] += coef * a
        poly = new
    return poly


def _cut_variance(h: WeightedHypergraph, classes):
    """Exact sampling variance of the cut weight under the generating
    model, or None when the model is unknown."""
    if not h.is_indicator:
        return Fraction(0)  # deterministic weights
    origin = h.origin
    if origin is None:
        return None
    k = h.k
    total = Fraction(0)
    p = origin.p
    for chosen in combinations(classes, k):
        sizes_prod = 1
        for c in chosen:
            sizes_prod *= len(c)
        if origin.kind == "gnp":
            total += sizes_prod * p * (1 - p)
        elif origin.kind == "ckp":
            prof = _transversal_profile(chosen, origin.planted)
            for j, nj in enumerate(prof):
                q = Fraction(2 * j, k) * p
                total += nj * q * (1 - q)
        else:
            return None
    return total


def _within_variance(h: WeightedHypergraph, u_sorted):
    if not h.is_indicator:
        return Fraction(0)
    origin = h.origin
    if origin is None:
        return None
    p = origin.p
    k = h.k
    m = binomial(len(u_sorted), k)
    if origin.kind == "gnp":
        return m * p * (1 - p)
    if origin.kind == "ckp":
        ua = len(set(u_sorted) & set(origin.planted))
        ub = len(u_sorted) - ua
        total = Fraction(0)
        for j in range(k + 1):
            q = Fraction(2 * j, k) * p
            total += binomial(ua, j) * binomial(ub, k - j) * q * (1 - q)
        return total
    return None


def _within_tolerance(dev, variance, sigmas):
    """Exact comparison |dev| <= sigmas * sqrt(variance)."""
    return dev * dev <= Fraction(sigmas) ** 2 * variance


def _zscore(dev, variance):
    if variance == 0:
        return 0.0 if dev == 0 else float("inf")
    return float(abs(dev)) / math.sqrt(float(variance))


@dataclass
class CutTrial:
    deviation: Fraction
    z: float
    passed: bool


@dataclass
class CutStatsReport:
    """Monte Carlo check that cuts of a given shape carry weight p times
    the transversal count."""

    n: int
    k: int
    alpha: tuple
    p: Fraction
    trials: int
    seed: int
    sigmas: int
    target: Fraction
    variance_model: str
    results: list = field(default_factory=list)

    @property
    def passed(self):
        return all(t.passed for t in self.results)

    @property
    def max_z(self):
        return max((t.z for t in self.results), default=0.0)

    def max_norm_deviation(self):
        return max(
            (float(abs(t.deviation)) / self.n**self.k for t in self.results),
            default=0.0,
        )

    def mean_norm_deviation(self):
        if not self.results:
            return 0.0
        return sum(
            float(abs(t.deviation)) / self.n**self.k for t in self.results
        ) / len(self.results)

    def as_dict(self):
        return {
            "n": self.n,
            "k": self.k,
            "alpha": [str(a) for a in self.alpha],
            "p": str(self.p),
            "trials": self.trials,
            "seed": self.seed,
            "sigmas": self.sigmas,
            "target": str(self.target),
            "variance_model": self.variance_model,
            "passed": self.passed,
            "max_z": self.max_z,
            "max_norm_deviation": self.max_norm_deviation(),
            "mean_norm_deviation": self.mean_norm_deviation(),
        }


def random_cut(n, alpha, gen) -> CutSpec:
    """A uniformly random cut with class sizes alpha_i * n."""
    alpha = tuple(Fraction(a) for a in alpha)
    sizes = []
    for a in alpha:
        s = a * n
        if s.denominator != 1 or s <= 0:
            raise ValueError(f"class fraction {a} of n={n} is not a positive integer")
        sizes.append(int(s))
    if sum(sizes) != n:
        raise ValueError("class fractions do not sum to 1")
    perm = gen.permutation(n)
    classes = []
    at = 0
    for s in sizes:
        classes.append(tuple(sorted(int(x) + 1 for x in perm[at : at + s])))
        at += s
    return CutSpec(n, tuple(classes), alpha)


def check_P_alpha(h, alpha, p, trials, seed, sigmas=3) -> CutStatsReport:
    """Sample random cuts of shape alpha and compare each cut weight with
    p times the number of class-transversal k-sets.

    The pass threshold is sigmas standard deviations, with the variance
    taken from the exact per-edge Bernoulli parameters when the
    hypergraph's generating model is known, and from Bernoulli(p) edges
    otherwise (reported in variance_model).
    """
    p = as_probability(p)
    alpha = tuple(Fraction(a) for a in alpha)
    if sum(alpha) != 1:
        raise ValueError("class fractions must sum to 1")
    if len(alpha) < h.k:
        raise ValueError(f"need at least k={h.k} classes")
    gen = _philox(seed)
    sizes = [int(a * h.n) for a in alpha]
    target_count = 0
    for chosen in combinations(sizes, h.k):
        prod_sizes = 1
        for s in chosen:
            prod_sizes *= s
        target_count += prod_sizes
    target = p * target_count
    variance_model = "deterministic" if not h.is_indicator else (
        "exact-per-edge" if h.origin is not None else "bernoulli-p-fallback"
    )
    report = CutStatsReport(
        n=h.n, k=h.k, alpha=alpha, p=p, trials=trials, seed=seed,
        sigmas=sigmas, target=target, variance_model=variance_model,
    )
    for _ in range(trials):
        cut = random_cut(h.n, alpha, gen)
        w = cut_weight(h, cut)
        var = _cut_variance(h, cut.classes)
        if var is None:
            var = target_count * p * (1 - p)
        dev = w - target
        report.results.append(
            CutTrial(dev, _zscore(dev, var), _within_tolerance(dev, var, sigmas))
        )
    return report


@dataclass
class D1Entry:
    size: int
    vertices: tuple | None
    weight: Fraction
    exact_reference: Fraction
    asymptotic_reference: Fraction
    z: float
    passed: bool

    def norm_asymptotic_deviation(self, n, k):
        return float(abs(self.weight - self.asymptotic_reference)) / n**k


@dataclass
class D1Report:
    """Check that vertex subsets span the random-like number of edges.

    Each inspected set U is compared with the exact reference
    p * C(|U|, k); the asymptotic reference p |U|^k / k! is reported
    alongside, but pass/fail uses the exact one, since at finite n the
    gap between the two already exceeds the sampling noise.
    """

    n: int
    k: int
    p: Fraction
    sizes: tuple
    trials: int
    seed: int
    sigmas: int
    variance_model: str
    entries: list = field(default_factory=list)

    @property
    def passed(self):
        return all(e.passed for e in self.entries)

    @property
    def max_z(self):
        return max((e.z for e in self.entries), default=0.0)

    def as_dict(self):
        return {
            "n": self.n,
            "k": self.k,
            "p": str(self.p),
            "sizes": list(self.sizes),
            "trials": self.trials,
            "seed": self.seed,
            "sigmas": self.sigmas,
            "variance_model": self.variance_model,
            "passed": self.passed,
            "max_z": self.max_z,
            "max_norm_asymptotic_deviation": max(
                (e.norm_asymptotic_deviation(self.n, self.k) for e in self.entries),
                default=0.0,
            ),
        }


def d1_entry(h, p, vertices, sigmas, keep_vertices=False) -> D1Entry:
    u = tuple(sorted(set(vertices)))
    e = edge_weight_within(h, u)
    exact_ref = p * binomial(len(u), h.k)
    asym_ref = p * Fraction(len(u) ** h.k, math.factorial(h.k))
    var = _within_variance(h, u)
    if var is None:
        var = binomial(len(u), h.k) * p * (1 - p)
    dev = e - exact_ref
    return D1Entry(
        size=len(u),
        vertices=u if keep_vertices else None,
        weight=e if isinstance(e, Fraction) else Fraction(e),
        exact_reference=exact_ref,
        asymptotic_reference=asym_ref,
        z=_zscore(dev, var),
        passed=_within_tolerance(dev, var, sigmas),
    )


def check_D1(h, p, sizes=(), trials=0, seed=0, sigmas=3, explicit_sets=()) -> D1Report:
    """Sample random vertex subsets of the given sizes (plus any explicit
    sets) and test their internal edge weight against the random-like
    reference."""
    p = as_probability(p)
    gen = _philox(seed)
    variance_model = "deterministic" if not h.is_indicator else (
        "exact-per-edge" if h.origin is not None else "bernoulli-p-fallback"
    )
    report = D1Report(
        n=h.n, k=h.k, p=p, sizes=tuple(sizes), trials=trials, seed=seed,
        sigmas=sigmas, variance_model=variance_model,
    )
    for size in sizes:
        if not 1 <= size <= h.n:
            raise ValueError(f"subset size {size} outside 1..{h.n}")
        for _ in range(trials):
            u = [int(x) + 1 for x in gen.choice(h.n, size=size, replace=False)]
            report.entries.append(d1_entry(h, p, u, sigmas))
    for u in explicit_sets:
        report.entries.append(d1_entry(h, p, u, sigmas, keep_vertices=True))
    return report


def write_hypergraph(h: WeightedHypergraph, path):
    """Text format: header "n k mode"; then one colex edge rank per line
    (indicator) or "rank num/den" per nonzero weight (fractional)."""
    with open(path, "w") as fh:
        fh.write(f"{h.n} {h.k} {h.mode}\n")
        if h.is_indicator:
            for r in h.edge_ranks():
                fh.write(f"{int(r)}\n")
        else:
            for r, w in enumerate(h.weights):
                if w:
                    fh.write(f"{r} {w.numerator}/{w.denominator}\n")


def read_hypergraph(path) -> WeightedHypergraph:
    with open(path) as fh:
        n_s, k_s, mode = fh.readline().split()
        n, k = int(n_s), int(k_s)
        m = binomial(n, k)
        if mode == "indicator":
            w = np.zeros(m, dtype=np.uint8)
            for line in fh:
                if line.strip():
                    w[int(line)] = 1
        else:
            w = [Fraction(0)] * m
            for line in fh:
                if line.strip():
                    r_s, val = line.split()
                    w[int(r_s)] = Fraction(val)
    return WeightedHypergraph(n, k, mode, w)
