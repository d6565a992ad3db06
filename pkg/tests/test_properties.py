import math
from fractions import Fraction

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from afmlab import bounds, cli, verify
from afmlab.graph import (
    bits,
    cartesian_with_clique,
    disjoint_union,
    enumerate_independent_sets,
    from_edge_list,
    induced_subgraph,
)
from afmlab.partition import (
    hom_count,
    occupancy_fraction,
    stack_rows,
    vertex_marginals,
    z_recurrence,
    zq_bruteforce,
)
from afmlab.spectral import WeightedModel, blow_up_hardcore, eigenvalues, is_antiferromagnetic, looped_clique, walk_homomorphisms

fractions = st.fractions(min_value=0, max_value=10, max_denominator=12)
reals = st.floats(min_value=0, max_value=10, allow_nan=False)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return from_edge_list(n, [p for p, keep in zip(pairs, chosen) if keep])


@st.composite
def graph_with_acts(draw, max_n=9, values=fractions):
    g = draw(graphs(max_n))
    acts = draw(st.lists(values, min_size=g.vertex_count, max_size=g.vertex_count))
    return g, acts


@st.composite
def symmetric_models(draw, max_q=5):
    q = draw(st.integers(1, max_q))
    w = np.zeros((q, q))
    for i in range(q):
        for j in range(i, q):
            w[i, j] = w[j, i] = draw(st.floats(0, 10, allow_nan=False))
    return WeightedModel.from_matrix(w)


# ------------------------------------------------------------------ graphs


@given(graphs(max_n=14))
def test_degree_sum_is_twice_edge_count(g):
    assert sum(g.degree_sequence) == 2 * g.edge_count
    for v in range(g.vertex_count):
        assert not (g.adjacency[v] >> v) & 1
        for u in bits(g.adjacency[v]):
            assert (g.adjacency[u] >> v) & 1


@given(graphs())
def test_product_with_single_colour_is_identity(g):
    assert cartesian_with_clique(g, 1) == g
    assert induced_subgraph(g, g.full_mask) == g


@given(graphs(max_n=10))
def test_independent_sets_are_unique_and_independent(g):
    masks = list(enumerate_independent_sets(g))
    assert len(masks) == len(set(masks))
    for m in masks:
        assert all(g.adjacency[v] & m == 0 for v in bits(m))
    assert len(masks) == len(oracles.independent_sets(g.vertex_count, list(g.edges())))


# --------------------------------------------------------------- partition


@given(graph_with_acts(max_n=12))
def test_recurrence_equals_subset_sum(data):
    g, acts = data
    assert z_recurrence(g, acts) == oracles.z_subsets(g.vertex_count, list(g.edges()), acts)


@given(graph_with_acts(max_n=6), graph_with_acts(max_n=6))
def test_components_multiply(a, b):
    (g1, l1), (g2, l2) = a, b
    assert z_recurrence(disjoint_union(g1, g2), l1 + l2) == z_recurrence(g1, l1) * z_recurrence(g2, l2)


@given(graph_with_acts(), st.data())
def test_increasing_an_activity_never_decreases_z(data, draw):
    g, acts = data
    v = draw.draw(st.integers(0, g.vertex_count - 1))
    bump = draw.draw(st.fractions(min_value=0, max_value=5, max_denominator=6))
    raised = list(acts)
    raised[v] += bump
    assert z_recurrence(g, raised) >= z_recurrence(g, acts)


@settings(max_examples=40)
@given(graphs(max_n=5), st.integers(1, 4), st.data())
def test_bijection_identity(g, q, data):
    n = g.vertex_count
    assume(n * q <= 16)
    rows = [data.draw(st.lists(fractions, min_size=n, max_size=n)) for _ in range(q)]
    assert zq_bruteforce(g, rows) == z_recurrence(cartesian_with_clique(g, q), stack_rows(g, rows))


@given(graph_with_acts())
def test_marginals_bounded(data):
    g, acts = data
    prof = vertex_marginals(g, acts)
    for p, lam in zip(prof.marginals, acts):
        assert 0 <= p <= lam / (1 + lam)
    assert prof.occupancy_fraction == sum(prof.marginals) / g.vertex_count


@settings(max_examples=30)
@given(graph_with_acts(max_n=8, values=st.floats(0.05, 5)), st.floats(0.2, 3))
def test_occupancy_is_scaled_log_derivative(data, t):
    g, acts = data
    h = 1e-5 * t

    def logz(s):
        return math.log(z_recurrence(g, [s * a for a in acts]))

    numeric = t * (logz(t + h) - logz(t - h)) / (2 * h) / g.vertex_count
    assert abs(numeric - float(occupancy_fraction(g, t, acts))) <= 1e-6


# ----------------------------------------------------------------- spectral


@given(symmetric_models(max_q=8))
def test_trace_and_frobenius(h):
    spectrum = eigenvalues(h)
    a = h.float_array()
    tol = 1e-9 * h.q * max(h.max_abs, 1e-300)
    assert abs(math.fsum(spectrum.eigenvalues) - np.trace(a)) <= tol
    assert abs(math.fsum(x * x for x in spectrum.eigenvalues) - float(np.sum(a * a))) <= tol * max(1.0, h.q * h.max_abs)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 8))
def test_blow_ups_and_looped_cliques_are_antiferromagnetic(p, r, q):
    assert is_antiferromagnetic(blow_up_hardcore(p, r))[0]
    assert is_antiferromagnetic(looped_clique(q))[0]


@given(symmetric_models(max_q=5), st.integers(3, 12))
def test_cycle_walks_are_power_sums(h, ell):
    value = walk_homomorphisms("cycle", ell, h)
    power_sum = math.fsum(m**ell for m in eigenvalues(h).eigenvalues)
    scale = (h.q * max(h.max_abs, 1e-300)) ** ell
    assert abs(value - power_sum) <= 1e-8 * max(abs(value), 1e-12 * scale)


@settings(max_examples=30)
@given(graphs(max_n=8), st.integers(1, 3), st.integers(1, 3))
def test_blow_up_hom_identity(g, p, r):
    assert hom_count(g, blow_up_hardcore(p, r)) == p**g.vertex_count * z_recurrence(g, [Fraction(r, p)] * g.vertex_count)


# ------------------------------------------------------------------- bounds


@given(st.integers(1, 6), st.fractions(0, 10, max_denominator=9), st.fractions(0, 10, max_denominator=9))
def test_kernel_identity_exact(d, lam, mu):
    k = bounds.CliqueKernels.at(d, lam, mu)
    assert k.identity_residual() == 0
    assert k.a_from_bc_residual() == 0
    assert k.A >= 1 and k.D >= 1


@given(st.integers(1, 6), st.floats(0.05, 10), st.floats(0.05, 10))
def test_surface_is_concave(d, x, y):
    h = 1e-3

    def f(a, b):
        return bounds.surface(d, a, b)

    fxx = (f(x + h, y) - 2 * f(x, y) + f(x - h, y)) / h**2
    fyy = (f(x, y + h) - 2 * f(x, y) + f(x, y - h)) / h**2
    fxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h * h)
    assert fxx <= 1e-6 and fyy <= 1e-6
    assert fxx * fyy - fxy * fxy >= -1e-6


@given(st.integers(2, 6), reals, reals, reals, reals)
def test_tangent_plane_dominates(d, lam, mu, x, y):
    p = bounds.tangent_plane_point(d, lam, mu)
    assert p.a0 + p.a1 * x + p.a2 * y >= bounds.surface(d, x, y) - 1e-9


@given(st.integers(1, 6), reals, reals)
def test_basic_inequality(d, x, y):
    slack = bounds.basic_ineq_log_slack(d, x, y)
    assert slack >= -1e-12
    if x > 1e-3 or y > 1e-3:
        assert slack > 1e-12


@settings(max_examples=25)
@given(st.integers(2, 6), st.floats(0.01, 0.99))
def test_xi_has_a_single_sign_change(delta, s):
    upper = bounds.xi_delta(delta, s) * 2
    grid = np.geomspace(1 + 1e-9, upper, 10_000)
    vals = np.array([bounds.xi_polynomial(delta, s, x) for x in grid])
    changes = np.count_nonzero(np.diff(np.sign(vals)) != 0)
    assert changes == 1


@settings(max_examples=20)
@given(st.integers(2, 4), reals, reals, reals, reals)
def test_geometric_means_stay_in_the_dual_set(delta, l1, m1, l2, m2):
    p = bounds.tangent_plane_point(delta, l1, m1).geometric_mean(bounds.tangent_plane_point(delta, l2, m2))
    assert bounds.s_membership(p).member


@given(st.integers(1, 5), st.floats(1.0001, 3.0))
def test_chain_inequalities(d, s):
    assume(d > 1 or s < 2 - 1e-3)
    state = bounds.symmetric_chain(d, s)
    assert abs(bounds.h_ratio(d, state.x_d) ** (1 / d) - s) <= 1e-10 * s
    assert min(state.slacks().values()) >= -1e-10


@given(st.integers(1, 6), st.data())
def test_key_lemma_slacks(delta, data):
    ds = data.draw(st.lists(st.integers(1, delta), min_size=delta, max_size=delta))
    lams = data.draw(st.lists(reals, min_size=delta + 1, max_size=delta + 1))
    t = bounds.key_lemma_terms(delta, ds, lams)
    assert min(t.main, t.component, t.amgm) >= -1e-9


# ------------------------------------------------------------------- verify


@given(graph_with_acts(max_n=8, values=reals))
def test_main_bound_and_classifier(data):
    g, acts = data
    rep = verify.check_thm_main(g, acts)
    assert rep.passed
    c = verify.classify_equality(g, acts)
    assert c.consistent


@given(graph_with_acts(max_n=7, values=reals), st.data())
def test_semiproper_bound(data, draw):
    g, lam = data
    mu = draw.draw(st.lists(reals, min_size=g.vertex_count, max_size=g.vertex_count))
    assert verify.check_thm_semiproper(g, lam, mu).passed


@given(graph_with_acts(max_n=7, values=fractions))
def test_reports_reproduce_from_witness(data):
    g, acts = data
    rep = verify.check_thm_main(g, acts)
    w = rep.witness
    replay = [Fraction(x) for x in w["lambda"]]
    assert verify.check_thm_main(from_edge_list(w["n"], [tuple(e) for e in w["edges"]]), replay) == rep


@settings(max_examples=20)
@given(st.integers(0, 2**32), st.integers(0, 500))
def test_explorer_trials_replay(seed, index):
    assert verify.run_trial(seed, index) == verify.run_trial(seed, index)


# ---------------------------------------------------------------------- cli


@given(graphs(max_n=20))
def test_graph_text_round_trip(g):
    assert cli.parse_graph_text(cli.serialize_graph(g)) == g


@given(symmetric_models(max_q=6))
def test_model_text_round_trip(h):
    assert cli.parse_model_text(cli.serialize_model(h)) == h
