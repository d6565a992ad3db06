import math
import random
from fractions import Fraction

import pytest

import oracles
from afmlab.errors import InvalidParameter, ResourceExhausted, TooLarge
from afmlab.graph import cartesian_with_clique, disjoint_union, empty_graph, from_edge_list, make_named
from afmlab.partition import (
    IndependenceEvaluator,
    hom_count,
    occupancy_fraction,
    stack_rows,
    vertex_marginals,
    z2,
    z2_bruteforce,
    z_alpha,
    z_alpha_bruteforce,
    z_bruteforce,
    z_recurrence,
    zq,
    zq_bruteforce,
)
from afmlab.spectral import WeightedModel, blow_up_hardcore, looped_clique

K3_MODEL = WeightedModel(3, ((0, 1, 1), (1, 0, 1), (1, 1, 0)))


def test_bruteforce_examples():
    assert z_bruteforce(make_named("clique", 3), [1, 2, 3]) == 7
    assert z_bruteforce(empty_graph(5), [1] * 5) == 32
    assert z_bruteforce(make_named("cycle", 6), [0] * 6) == 1


def test_recurrence_examples():
    assert z_recurrence(make_named("path_edges", 2), [1, 1, 1]) == 5
    assert z_recurrence(make_named("cycle", 5), [1] * 5) == 11
    for d in range(6):
        lam = Fraction(3, 7)
        assert z_recurrence(make_named("clique", d + 1), [lam] * (d + 1)) == 1 + (d + 1) * lam
    assert z_recurrence(empty_graph(0), []) == 1


def test_recurrence_matches_subset_oracle():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(1, 11)
        edges = oracles.random_edges(rng, n, rng.random())
        acts = [oracles.random_fraction(rng) for _ in range(n)]
        assert z_recurrence(from_edge_list(n, edges), acts) == oracles.z_subsets(n, edges, acts)


def test_negative_activities_are_polynomial():
    g = make_named("path_edges", 2)
    assert z_recurrence(g, [-1, Fraction(1, 2), 2]) == oracles.z_subsets(3, [(0, 1), (1, 2)], [-1, Fraction(1, 2), 2])


def test_memo_cap():
    with pytest.raises(ResourceExhausted):
        IndependenceEvaluator(make_named("cycle", 20), [1] * 20, capacity=8).z()


def test_z_alpha():
    k2 = make_named("clique", 2)
    assert z_alpha(k2, 1, 2) == 5
    c5 = make_named("cycle", 5)
    assert z_alpha(c5, 3, 1) == z_recurrence(c5, [3] * 5)
    assert z_alpha(c5, 0, 7) == 1
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(1, 9)
        edges = oracles.random_edges(rng, n, 0.5)
        g = from_edge_list(n, edges)
        lam, alpha = oracles.random_fraction(rng), oracles.random_fraction(rng)
        assert z_alpha(g, lam, alpha) == z_alpha_bruteforce(g, lam, alpha) == oracles.crossing_z(n, edges, lam, alpha)
    with pytest.raises(InvalidParameter):
        z_alpha(k2, -1, 1)


def test_z2_examples():
    assert z2(make_named("clique", 2), [1, 1], [1, 1]) == 7
    assert z2(make_named("path_edges", 2), [1] * 3, [1] * 3) == 17
    lam, mu = Fraction(2, 3), Fraction(5, 4)
    for d in range(1, 6):
        want = d * (d - 1) * lam * mu + d * (lam + mu) + 1
        assert z2(make_named("clique", d), [lam] * d, [mu] * d) == want
    assert z2_bruteforce(make_named("path_edges", 2), [1] * 3, [1] * 3) == 17


def test_zq():
    k3 = make_named("clique", 3)
    assert zq(k3, [[1] * 3] * 3) == 34
    g = make_named("cycle", 5)
    acts = [Fraction(k, 3) for k in range(5)]
    assert zq(g, [acts]) == z_recurrence(g, acts)
    assert zq(g, [[0] * 5] * 4) == 1
    rng = random.Random(2)
    for _ in range(10):
        n = rng.randint(1, 5)
        edges = oracles.random_edges(rng, n, 0.5)
        rows = [[oracles.random_fraction(rng) for _ in range(n)] for _ in range(rng.randint(1, 3))]
        assert zq(from_edge_list(n, edges), rows) == oracles.zq_tuples(n, edges, rows)
    with pytest.raises(InvalidParameter):
        zq(k3, [])
    with pytest.raises(TooLarge):
        zq_bruteforce(empty_graph(17), [[1] * 17])


def test_stack_rows_order():
    g = make_named("path_edges", 1)
    assert stack_rows(g, [[1, 2], [3, 4]]) == [1, 2, 3, 4]
    with pytest.raises(InvalidParameter):
        stack_rows(g, [[1]])


def test_hom_examples():
    assert hom_count(make_named("clique", 3), K3_MODEL) == 6
    assert hom_count(make_named("clique", 2), looped_clique(2)) == 7
    assert hom_count(make_named("cycle", 5), K3_MODEL) == 30
    assert hom_count(make_named("clique", 3), looped_clique(3)) == 34


def test_hom_matches_map_oracle():
    rng = random.Random(9)
    for _ in range(25):
        n = rng.randint(1, 6)
        edges = oracles.random_edges(rng, n, rng.random())
        q = rng.randint(1, 4)
        w = [[0] * q for _ in range(q)]
        for i in range(q):
            for j in range(i, q):
                w[i][j] = w[j][i] = oracles.random_fraction(rng, 5, 3)
        h = WeightedModel.from_matrix(w)
        assert hom_count(from_edge_list(n, edges), h) == oracles.hom_maps(n, edges, w)


def test_hom_blow_up_identity():
    rng = random.Random(4)
    for _ in range(10):
        n = rng.randint(1, 7)
        g = from_edge_list(n, oracles.random_edges(rng, n, 0.5))
        p, r = rng.randint(1, 3), rng.randint(1, 3)
        assert hom_count(g, blow_up_hardcore(p, r)) == p**n * z_recurrence(g, [Fraction(r, p)] * n)


def test_hom_guard():
    big = disjoint_union(make_named("clique", 2), from_edge_list(13, [(0, 1), (1, 2), (0, 2), (2, 3)] + [(i, i + 1) for i in range(3, 12)] + [(0, 12)]))
    with pytest.raises(TooLarge):
        hom_count(big, WeightedModel.from_matrix([[1] * 6] * 6))


def test_marginals():
    prof = vertex_marginals(make_named("clique", 3), [1, 1, 1])
    assert prof.marginals == (Fraction(1, 4),) * 3
    assert prof.occupancy_fraction == Fraction(1, 4)
    lam = Fraction(2, 5)
    assert vertex_marginals(empty_graph(1), [lam]).marginals == (lam / (1 + lam),)
    prof = vertex_marginals(make_named("path_edges", 2), [1, 0, 1])
    assert prof.marginals[1] == 0


def test_occupancy_examples():
    assert occupancy_fraction(make_named("clique", 3), 1, [1, 1, 1]) == Fraction(1, 4)
    assert occupancy_fraction(make_named("cycle", 5), 0, [1] * 5) == 0
    assert occupancy_fraction(empty_graph(4), 1, [1] * 4) == Fraction(1, 2)
    with pytest.raises(InvalidParameter):
        occupancy_fraction(empty_graph(2), -1, [1, 1])


def test_occupancy_is_log_derivative():
    g = from_edge_list(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)])
    acts = [0.5, 1.0, 2.0, 0.3, 1.5, 0.7]
    t, h = 1.3, 1e-5
    logz = lambda s: math.log(z_recurrence(g, [s * a for a in acts]))  # noqa: E731
    deriv = t * (logz(t + h) - logz(t - h)) / (2 * h) / g.vertex_count
    assert abs(deriv - occupancy_fraction(g, t, acts)) < 1e-6


def test_product_graph_route_agrees_with_direct_enumeration():
    g = make_named("path_edges", 3)
    rows = [[1, 2, 3, 4], [Fraction(1, 2)] * 4, [0, 1, 0, 1]]
    assert z_recurrence(cartesian_with_clique(g, 3), stack_rows(g, rows)) == zq_bruteforce(g, rows)
