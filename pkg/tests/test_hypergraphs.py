import random
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from hypercut.combinat import binomial, colex_subsets, rank_of_tuple
from hypercut.hypergraphs import (
    CutSpec,
    TypeZVector,
    WeightedHypergraph,
    check_D1,
    check_P_alpha,
    cut_weight,
    d1_entry,
    edge_weight_within,
    exact_ckp_weights,
    inclusion_exclusion_cut,
    membership_counts,
    monomial_coefficients,
    read_hypergraph,
    sample_ckp,
    sample_gnp,
    transversal_weight,
    type_z_density,
    type_z_inner_sum,
    unrank_table,
    write_hypergraph,
)

P14 = Fraction(1, 4)


def complete_hypergraph(n, k):
    return WeightedHypergraph(n, k, "indicator", np.ones(binomial(n, k), np.uint8))


def empty_hypergraph(n, k):
    return WeightedHypergraph(n, k, "indicator", np.zeros(binomial(n, k), np.uint8))


def test_membership_counts_and_unrank_table():
    n, k = 9, 3
    member = np.zeros(n, dtype=bool)
    member[[0, 3, 4]] = True  # vertices 1, 4, 5
    jv = membership_counts(n, k, member)
    subs = list(colex_subsets(n, k))
    assert len(jv) == len(subs)
    for rank, s in enumerate(subs):
        assert jv[rank] == len({1, 4, 5} & set(s))
    tbl = unrank_table(np.arange(len(subs)), n, k)
    assert [tuple(row + 1) for row in tbl] == subs


def test_gnp_extremes():
    assert sample_gnp(10, 3, 0, 5).total_weight() == 0
    assert sample_gnp(10, 3, 1, 5).total_weight() == binomial(10, 3)


def test_gnp_determinism_and_seed_sensitivity():
    h1 = sample_gnp(20, 3, Fraction(3, 10), 42)
    h2 = sample_gnp(20, 3, Fraction(3, 10), 42)
    h3 = sample_gnp(20, 3, Fraction(3, 10), 43)
    assert np.array_equal(h1.weights, h2.weights)
    assert not np.array_equal(h1.weights, h3.weights)


def test_gnp_edge_count_concentration():
    # binomial mean and spread at n=40, k=3, p=3/10
    m = binomial(40, 3)
    mean = 0.3 * m
    sigma = (m * 0.3 * 0.7) ** 0.5
    for seed in range(10):
        edges = sample_gnp(40, 3, Fraction(3, 10), seed).total_weight()
        assert abs(edges - mean) < 3 * sigma


def test_gnp_bad_probability():
    with pytest.raises(ValueError):
        sample_gnp(10, 3, Fraction(3, 2), 0)


def test_ckp_empty_inside_B():
    for seed in (0, 3, 11):
        h, (a, b) = sample_ckp(16, 3, P14, seed)
        assert edge_weight_within(h, b) == 0
        assert a == tuple(range(1, 9))


def test_ckp_inside_A_density():
    # inside A every k-set is Bernoulli(2p)
    h, (a, _) = sample_ckp(60, 3, P14, 2)
    ca = binomial(30, 3)
    mean, sigma = 0.5 * ca, (ca * 0.25) ** 0.5
    assert abs(edge_weight_within(h, a) - mean) < 3 * sigma


def test_ckp_k2_densities():
    h, (a, b) = sample_ckp(100, 2, P14, 9)
    ea = edge_weight_within(h, a)
    eb = edge_weight_within(h, b)
    cross = h.total_weight() - ea - eb
    ca = binomial(50, 2)
    assert eb == 0
    assert abs(ea / ca - 0.5) < 3 * (0.5 * 0.5 / ca) ** 0.5
    assert abs(cross / 2500 - 0.25) < 3 * (0.25 * 0.75 / 2500) ** 0.5


def test_ckp_validation():
    with pytest.raises(ValueError):
        sample_ckp(11, 3, P14, 0)
    with pytest.raises(ValueError):
        sample_ckp(12, 3, Fraction(2, 3), 0)


def test_ckp_shuffle_moves_planted_half():
    h, (a, b) = sample_ckp(16, 3, P14, 5, shuffle=True)
    assert len(a) == len(b) == 8
    assert edge_weight_within(h, b) == 0
    assert h.origin.planted == a


def test_ckp_reproducible():
    h1, _ = sample_ckp(14, 3, P14, 77)
    h2, _ = sample_ckp(14, 3, P14, 77)
    assert np.array_equal(h1.weights, h2.weights)


def test_exact_ckp_weight_values():
    n, k = 8, 3
    a = tuple(range(1, 5))
    h = exact_ckp_weights(n, k, P14, a)
    # brute-force total: sum over subsets of 2p|S cap A|/k
    brute = sum(
        Fraction(2 * len(set(a) & set(s)), k) * P14
        for s in combinations(range(1, n + 1), k)
    )
    assert h.total_weight() == brute == P14 * binomial(n, k)
    for s in combinations(range(5, 9), 3):       # inside B
        assert h.weights[rank_of_tuple(s)] == 0
    for s in combinations(range(1, 5), 3):       # inside A: j = k
        assert h.weights[rank_of_tuple(s)] == 2 * P14
    assert edge_weight_within(h, a) == 2 * P14 * binomial(4, 3)


def test_edge_weight_within_basics():
    h = complete_hypergraph(8, 3)
    assert edge_weight_within(h, (1, 2)) == 0
    assert edge_weight_within(h, range(1, 9)) == binomial(8, 3)
    with pytest.raises(ValueError):
        edge_weight_within(h, (0, 1, 2))


def test_cut_weight_complete_graph_balanced():
    h = complete_hypergraph(10, 2)
    cut = CutSpec.from_classes(10, [tuple(range(1, 6)), tuple(range(6, 11))])
    assert cut_weight(h, cut) == 25


def test_cut_weight_exact_ckp_balanced_cuts():
    n, k = 12, 3
    h = exact_ckp_weights(n, k, P14, tuple(range(1, 7)))
    target = P14 * (n // k) ** k
    rng = random.Random(3)
    verts = list(range(1, n + 1))
    for _ in range(12):
        rng.shuffle(verts)
        cut = CutSpec.from_classes(n, [verts[0:4], verts[4:8], verts[8:12]])
        assert cut_weight(h, cut) == target


def test_cut_weight_concentrated_is_zero():
    n, k = 9, 3
    w = np.zeros(binomial(n, k), np.uint8)
    for s in combinations(range(1, 4), 3):   # all edges inside class one
        w[rank_of_tuple(s)] = 1
    h = WeightedHypergraph(n, k, "indicator", w)
    cut = CutSpec.from_classes(n, [(1, 2, 3), (4, 5, 6), (7, 8, 9)])
    assert cut_weight(h, cut) == 0


def test_cut_weight_more_classes_than_k():
    # r > k: edges crossing = vertices in pairwise distinct classes
    h = complete_hypergraph(8, 2)
    cut = CutSpec.from_classes(8, [(1, 2), (3, 4), (5, 6), (7, 8)])
    # pairs not inside a class: C(8,2) - 4
    assert cut_weight(h, cut) == binomial(8, 2) - 4


def test_cutspec_validation():
    with pytest.raises(ValueError):
        CutSpec.from_classes(6, [(1, 2, 3), (3, 4, 5)])
    with pytest.raises(ValueError):
        CutSpec.from_classes(6, [(1, 2, 3), (4, 5)])
    with pytest.raises(ValueError):
        CutSpec(6, ((1, 2, 3), (4, 5, 6)), (Fraction(1, 3), Fraction(2, 3)))


def test_inclusion_exclusion_k2_identity():
    h = sample_gnp(10, 2, Fraction(1, 2), 4)
    a, b = (1, 3, 5), (2, 4, 6, 8)
    lhs = inclusion_exclusion_cut(h, [a, b])
    ew = edge_weight_within
    assert lhs == ew(h, a + b) - ew(h, a) - ew(h, b)
    assert lhs == transversal_weight(h, [a, b])


def test_inclusion_exclusion_empty():
    h = empty_hypergraph(9, 3)
    assert inclusion_exclusion_cut(h, [(1, 2), (3, 4), (5, 6)]) == 0


def test_inclusion_exclusion_matches_direct_on_random_instances():
    rng = random.Random(1234)
    for trial in range(100):
        k = rng.choice([2, 3, 4])
        n = rng.randint(k * 2, 14)
        h = sample_gnp(n, k, Fraction(rng.randint(1, 9), 10), trial)
        verts = list(range(1, n + 1))
        rng.shuffle(verts)
        sizes = [rng.randint(1, 2 + (n - 2 * k) // k) for _ in range(k)]
        classes, at = [], 0
        for s in sizes:
            s = min(s, len(verts) - at - (k - len(classes) - 1))
            classes.append(tuple(verts[at : at + s]))
            at += s
        assert all(classes)
        assert inclusion_exclusion_cut(h, classes) == transversal_weight(h, classes)


def test_inclusion_exclusion_fractional():
    h = exact_ckp_weights(10, 3, P14, tuple(range(1, 6)))
    classes = [(1, 2), (3, 7, 8), (9, 10)]
    assert inclusion_exclusion_cut(h, classes) == transversal_weight(h, classes)


def test_type_z_vector_validation():
    TypeZVector((Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)))
    with pytest.raises(ValueError):
        TypeZVector((Fraction(1, 2), Fraction(1, 4)))  # sums to 3/4, not 1
    with pytest.raises(ValueError):
        TypeZVector((Fraction(3, 2), Fraction(-1, 2), Fraction(1, 2)))


def test_type_z_density_balanced_r3_k2():
    z = (Fraction(1, 2),) * 3
    p = P14
    # the displayed three-class expansion, term by term
    z1 = z2 = z3 = Fraction(1, 2)
    expand = Fraction(1, 3) * (
        2 * p * (z1 * z2 + z1 * z3 + z2 * z3)
        + p * (z1 * (1 - z2) + (1 - z1) * z2 + z1 * (1 - z3)
               + (1 - z1) * z3 + z2 * (1 - z3) + (1 - z2) * z3)
    )
    assert type_z_density(3, 2, p, z) == expand == p


def test_type_z_inner_sum_twelve_terms():
    z1, z2, z3, z4 = Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)
    z = TypeZVector((z1, z2, z3, z4))
    display = (
        z1 * z2 * (1 - z3) + z1 * (1 - z2) * z3 + (1 - z1) * z2 * z3
        + z1 * z2 * (1 - z4) + z1 * (1 - z2) * z4 + (1 - z1) * z2 * z4
        + z1 * z3 * (1 - z4) + z1 * (1 - z3) * z4 + (1 - z1) * z3 * z4
        + z2 * z3 * (1 - z4) + z2 * (1 - z3) * z4 + (1 - z2) * z3 * z4
    )
    assert type_z_inner_sum(4, 3, 2, z) == display


def test_type_z_density_always_p():
    rng = random.Random(2718)
    for r in range(2, 7):
        for k in range(2, r + 1):
            for _ in range(10):
                raw = [Fraction(rng.randint(1, 30), rng.randint(1, 30))
                       for _ in range(r)]
                scale = Fraction(r, 2) / sum(raw)
                z = TypeZVector(tuple(x * scale for x in raw))
                assert type_z_density(r, k, P14, z) == P14


def test_monomial_coefficients():
    for r, k in [(3, 2), (4, 3)]:
        coeffs = monomial_coefficients(r, k, P14)
        assert coeffs[frozenset()] == 0
        for j_set, c in coeffs.items():
            if len(j_set) >= 2:
                assert c == 0
            elif len(j_set) == 1:
                assert c == binomial(r - 1, k - 1) * Fraction(2, k) * P14


def test_monomial_reconstruction_matches_density():
    r, k = 5, 3
    coeffs = monomial_coefficients(r, k, P14)
    rng = random.Random(5)
    raw = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(r)]
    z = tuple(x * Fraction(r, 2) / sum(raw) for x in raw)
    value = Fraction(0)
    for j_set, c in coeffs.items():
        term = c
        for i in j_set:
            term *= z[i - 1]
        value += term
    assert value == type_z_density(r, k, P14, z) * binomial(r, k)


def test_check_P_alpha_exact_construction_zero_deviation():
    h = exact_ckp_weights(12, 3, P14, tuple(range(1, 7)))
    rep = check_P_alpha(h, (Fraction(1, 3),) * 3, P14, trials=8, seed=1)
    assert rep.passed
    assert rep.variance_model == "deterministic"
    assert all(t.deviation == 0 for t in rep.results)


def test_check_P_alpha_complete_hypergraph_fails():
    n, k = 12, 3
    h = complete_hypergraph(n, k)
    alpha = (Fraction(1, 3),) * 3
    rep = check_P_alpha(h, alpha, P14, trials=4, seed=0)
    assert not rep.passed
    expected = (1 - P14) * Fraction(64, 12**3)  # (1-p) * sum of alpha products
    assert all(abs(t.deviation) == expected * n**k for t in rep.results)


def test_check_P_alpha_sampled_ckp_passes():
    h, _ = sample_ckp(60, 3, Fraction(3, 10), 8)
    rep = check_P_alpha(h, (Fraction(1, 3),) * 3, Fraction(3, 10),
                        trials=20, seed=8)
    assert rep.variance_model == "exact-per-edge"
    assert rep.passed


def test_check_D1_empty_zero_p_exact():
    h = empty_hypergraph(12, 3)
    h.origin = None
    rep = check_D1(h, Fraction(0), sizes=(6, 9), trials=4, seed=0)
    assert rep.passed
    assert rep.max_z == 0.0


def test_check_D1_separation_on_planted_half():
    h, (a, _) = sample_ckp(60, 3, P14, 12)
    rep = check_D1(h, P14, sizes=(), trials=0, seed=0, explicit_sets=(a,))
    assert not rep.passed
    assert rep.max_z > 10
    # while G(n,p) at the same size passes
    g = sample_gnp(60, 3, P14, 12)
    rep2 = check_D1(g, P14, sizes=(30,), trials=5, seed=3)
    assert rep2.passed


def test_d1_entry_references():
    h = complete_hypergraph(9, 3)
    e = d1_entry(h, Fraction(1, 2), tuple(range(1, 7)), sigmas=3)
    assert e.weight == binomial(6, 3)
    assert e.exact_reference == Fraction(1, 2) * binomial(6, 3)
    assert e.asymptotic_reference == Fraction(1, 2) * Fraction(6**3, 6)


def test_hypergraph_io_roundtrip(tmp_path):
    h1, _ = sample_ckp(12, 3, P14, 3)
    p1 = tmp_path / "h1.hg"
    write_hypergraph(h1, p1)
    back = read_hypergraph(p1)
    assert back.n == 12 and back.k == 3 and back.mode == "indicator"
    assert np.array_equal(back.weights, h1.weights)

    h2 = exact_ckp_weights(8, 2, P14, (1, 2, 3, 4))
    p2 = tmp_path / "h2.hg"
    write_hypergraph(h2, p2)
    back2 = read_hypergraph(p2)
    assert back2.mode == "fractional"
    assert back2.weights == h2.weights


def test_weight_vector_length_validated():
    with pytest.raises(ValueError):
        WeightedHypergraph(6, 2, "indicator", np.zeros(10, np.uint8))
    with pytest.raises(ValueError):
        WeightedHypergraph(6, 2, "tropical", np.zeros(15, np.uint8))
