import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opinion_partition import (
    agreement_limit,
    builtin_dataset,
    chain_period,
    degree_centrality,
    disagreement_state,
    from_adjacency,
    diversity_energy,
    entropy_diversity,
    inverse_simpson_diversity,
    markov_classify,
    markov_limit,
    markov_trajectory,
    parse_edge_list,
    projected_mode,
    solve_opinions,
    spectral_system,
)
from opinion_partition.dynamics import ProbabilityState
from opinion_partition.errors import DivergentDiversity, LengthMismatch, ValidationError

from conftest import random_connected_graph, random_corpus


def system(name):
    g = builtin_dataset(name)
    return (g, *spectral_system(g, degree_centrality(g)))


def rk4(lbar, x0, tau, dt, steps):
    """Classical 4th-order Runge-Kutta for tau x' = -lbar x; returns every step."""
    f = lambda x: -(lbar @ x) / tau
    out = [x0]
    x = x0
    for _ in range(steps):
        k1 = f(x)
        k2 = f(x + dt / 2 * k1)
        k3 = f(x + dt / 2 * k2)
        k4 = f(x + dt * k3)
        x = x + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        out.append(x)
    return np.array(out)


# -- closed-form solution -------------------------------------------------------

def test_path3_pure_mode():
    _, _, dec = system("path3")
    x0 = np.array([1.0, 0, -1])
    times = np.linspace(0, 3, 7)
    traj = solve_opinions(dec, x0, 1.0, times)
    np.testing.assert_allclose(traj.as_array(), np.exp(-times)[:, None] * x0, atol=1e-14)


def test_consensus_is_fixed():
    g, _, dec = system("karate")
    traj = solve_opinions(dec, np.ones(g.n), 2.0, [0, 1, 10, 100])
    np.testing.assert_allclose(traj.as_array(), 1.0, atol=1e-12)


def test_path3_limit():
    _, _, dec = system("path3")
    np.testing.assert_allclose(agreement_limit(dec, [1, 0, 0]), [0.25] * 3, atol=1e-15)
    late = solve_opinions(dec, [1, 0, 0], 1.0, [60.0]).states[0].x
    np.testing.assert_allclose(late, [0.25] * 3, atol=1e-12)


def test_solve_validation():
    _, _, dec = system("path3")
    with pytest.raises(ValidationError):
        solve_opinions(dec, [1, 0, 0], 0.0, [0])
    with pytest.raises(ValidationError):
        solve_opinions(dec, [1, 0, 0], 1.0, [1, 0.5])
    with pytest.raises(LengthMismatch):
        solve_opinions(dec, [1, 0], 1.0, [0])


def test_closed_form_matches_matrix_exponential():
    scipy_linalg = pytest.importorskip("scipy.linalg")
    rng = np.random.default_rng(3)
    for g in random_corpus(3, 10, 3, 25):
        sys_, dec = spectral_system(g, degree_centrality(g))
        x0 = rng.standard_normal(g.n)
        tau = rng.uniform(0.2, 3)
        for t in (0.0, 0.3, 2.0, 7.0):
            expected = scipy_linalg.expm(-t / tau * sys_.lbar) @ x0
            got = solve_opinions(dec, x0, tau, [t]).states[0].x
            np.testing.assert_allclose(got, expected, atol=1e-10)


def test_closed_form_matches_rk4():
    rng = np.random.default_rng(12)
    for g in random_corpus(12, 5, 3, 15):
        sys_, dec = spectral_system(g, degree_centrality(g))
        x0 = rng.standard_normal(g.n)
        tau = 1.5
        steps = 1000
        ref = rk4(sys_.lbar, x0, tau, 2 * tau / steps, steps)
        got = solve_opinions(dec, x0, tau, np.linspace(0, 2 * tau, steps + 1)).as_array()
        assert np.max(np.abs(got - ref)) <= 1e-8


def test_disagreement_decay_bound_and_agreement_limit():
    rng = np.random.default_rng(4)
    for g in random_corpus(4, 25, 3, 30):
        _, dec = spectral_system(g, degree_centrality(g))
        x0 = rng.standard_normal(g.n)
        tau = rng.uniform(0.5, 2)
        lam2 = dec.eigenvalues[1]
        c = np.sum(np.abs(dec.left_vectors[:, 1:].T @ x0))
        times = np.linspace(0, 5 * tau, 21)
        for st_ in solve_opinions(dec, x0, tau, times).states:
            xd = disagreement_state(dec, st_.x)
            assert np.linalg.norm(xd) <= math.exp(-st_.t * lam2 / tau) * c + 1e-12
        big_t = 40 * tau / lam2
        x_late = solve_opinions(dec, x0, tau, [big_t]).states[0].x
        assert np.linalg.norm(x_late - agreement_limit(dec, x0)) <= 1e-6


# -- disagreement, energy, projected mode ---------------------------------------------

def test_disagreement_examples():
    _, _, dec = system("path3")
    np.testing.assert_allclose(disagreement_state(dec, np.ones(3)), 0, atol=1e-15)
    np.testing.assert_allclose(disagreement_state(dec, [1, 0, -1]), [1, 0, -1], atol=1e-15)
    np.testing.assert_allclose(disagreement_state(dec, [1, 0, 0]), [0.75, -0.25, -0.25], atol=1e-15)


def test_disagreement_equals_sum_of_nonzero_modes():
    rng = np.random.default_rng(8)
    for g in random_corpus(8, 10, 3, 30):
        _, dec = spectral_system(g, degree_centrality(g))
        x = rng.standard_normal(g.n)
        u, v = dec.right_vectors[:, 1:], dec.left_vectors[:, 1:]
        np.testing.assert_allclose(disagreement_state(dec, x), u @ (v.T @ x), atol=1e-10)


def test_energy_examples():
    p3 = builtin_dataset("path3")
    assert diversity_energy(p3, np.ones(3)) == 0
    assert diversity_energy(p3, np.array([1, 0, -1]) / np.sqrt(2)) == pytest.approx(1.0, abs=1e-15)
    assert diversity_energy(parse_edge_list("a b 2"), [1, 0]) == 2


def test_energy_matches_pairwise_sum():
    rng = np.random.default_rng(9)
    for g in random_corpus(9, 10, 3, 20):
        z = rng.standard_normal(g.n)
        a = g.adjacency
        pairwise = 0.5 * sum(a[i, j] * (z[i] - z[j]) ** 2 for i in range(g.n) for j in range(g.n))
        assert diversity_energy(g, z) == pytest.approx(pairwise, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_energy_zero_iff_constant_on_components(seed):
    rng = np.random.default_rng(seed)
    g1 = random_connected_graph(rng, int(rng.integers(2, 8)))
    g2 = random_connected_graph(rng, int(rng.integers(2, 8)))
    n1, n2 = g1.n, g2.n
    a = np.zeros((n1 + n2, n1 + n2))
    a[:n1, :n1] = g1.adjacency
    a[n1:, n1:] = g2.adjacency
    g = from_adjacency(a)
    z = np.r_[np.full(n1, rng.standard_normal()), np.full(n2, rng.standard_normal())]
    assert diversity_energy(g, z) == pytest.approx(0, abs=1e-12)
    z[rng.integers(n1 + n2)] += 1.0
    assert diversity_energy(g, z) > 1e-6


def test_projected_mode_examples():
    _, _, dec = system("path3")
    x0 = [1, 0, -1]
    np.testing.assert_allclose(projected_mode(dec, x0, 1.0, 0.0), x0, atol=1e-15)
    np.testing.assert_allclose(projected_mode(dec, x0, 1.0, math.log(2)), [0.5, 0, -0.5], atol=1e-15)
    np.testing.assert_allclose(projected_mode(dec, np.ones(3), 1.0, 1.0), 0, atol=1e-15)
    # tau scales time.
    np.testing.assert_allclose(projected_mode(dec, x0, 2.0, 2 * math.log(2)), [0.5, 0, -0.5], atol=1e-15)


def test_projected_mode_uses_whole_multiplicity_group():
    g, sys_, dec = system("star4")
    x0 = np.array([0.3, 1.0, -2.0, 0.5])
    y = projected_mode(dec, x0, 1.0, 0.0)
    # Oracle: lambda=1 eigenspace of abar's Laplacian is {centre 0, leaves sum 0}
    # for right vectors; the projection along the other modes must vanish.
    assert abs(y[0]) <= 1e-12
    np.testing.assert_allclose(sys_.lbar @ y, y, atol=1e-12)


# -- diversity indices -----------------------------------------------------------------

def test_entropy_diversity_examples():
    h, d = entropy_diversity(np.array([1, 0, -1]) / np.sqrt(2))
    assert h == pytest.approx(math.log(2), abs=1e-15)
    assert d == pytest.approx(1 / math.log(2), abs=1e-12)
    assert d == pytest.approx(1.4427, abs=5e-5)
    h, d = entropy_diversity([0.5, 0.5, -0.5, -0.5])
    assert h == pytest.approx(math.log(4)) and d == pytest.approx(1 / math.log(4))
    with pytest.raises(DivergentDiversity):
        entropy_diversity([1, 0, 0])
    with pytest.raises(ValidationError):
        entropy_diversity([1, 1, 0])


def test_inverse_simpson_examples():
    assert inverse_simpson_diversity(np.array([1, 0, -1]) / np.sqrt(2)) == pytest.approx(2.0)
    assert inverse_simpson_diversity([1, 0, 0]) == 1.0
    assert inverse_simpson_diversity([0.5, 0.5, -0.5, -0.5]) == pytest.approx(4.0)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=2, max_size=30).filter(lambda v: np.linalg.norm(v) > 1e-3))
def test_inverse_simpson_range(values):
    u = np.array(values) / np.linalg.norm(values)
    d = inverse_simpson_diversity(u)
    assert 1 - 1e-9 <= d <= len(u) + 1e-9


# -- Markov chain ------------------------------------------------------------------------

def test_markov_k3_step():
    _, sys_, _ = system("complete(3)")
    run = markov_trajectory(sys_, [1, 0, 0], 1)
    np.testing.assert_allclose(run.states[1].p, [0, 0.5, 0.5], atol=1e-15)
    assert run.entropies[0] == 0 and math.isinf(run.diversities[0])
    assert run.entropies[1] == pytest.approx(math.log(2))
    assert run.diversities[1] == pytest.approx(1 / math.log(2))


def test_markov_constant_is_fixed():
    _, sys_, _ = system("karate")
    run = markov_trajectory(sys_, np.full(34, 0.3), 20)
    for st_ in run.states:
        np.testing.assert_allclose(st_.p, 0.3, atol=1e-14)


def test_markov_path_oscillates():
    _, sys_, _ = system("path3")
    run = markov_trajectory(sys_, [1, 0, 1], 4)
    for k, st_ in enumerate(run.states):
        assert st_.k == k
        np.testing.assert_allclose(st_.p, [1, 0, 1] if k % 2 == 0 else [0, 1, 0], atol=1e-15)


def test_markov_rejects_out_of_range():
    _, sys_, _ = system("path3")
    with pytest.raises(ValidationError):
        markov_trajectory(sys_, [1.5, 0, 0], 2)
    with pytest.raises(ValidationError):
        ProbabilityState([-0.1, 0.5], 0)


def test_markov_bounds_and_limit():
    rng = np.random.default_rng(21)
    for g in random_corpus(21, 20, 3, 25):
        sys_, _ = spectral_system(g, degree_centrality(g))
        p0 = rng.random(g.n)
        run = markov_trajectory(sys_, p0, 50)
        for st_ in run.states:
            assert st_.p.min() >= p0.min() - 1e-12
            assert st_.p.max() <= p0.max() + 1e-12
        if markov_classify(sys_)["aperiodic"]:
            # Oracle: high matrix power of abar applied to p0.
            far = np.linalg.matrix_power(sys_.abar, 5000) @ p0
            np.testing.assert_allclose(markov_limit(sys_, p0), far, atol=1e-8)


def test_markov_limit_is_not_uniform_in_general():
    _, sys_, _ = system("path3")
    # Consensus value is the rho*h-weighted mean, here (1*1 + 2*0 + 1*0) / 4.
    np.testing.assert_allclose(markov_limit(sys_, [1, 0, 0]), [0.25] * 3)


def test_markov_classify_examples():
    _, k3, _ = system("complete(3)")
    res = markov_classify(k3)
    assert res["irreducible"] and res["aperiodic"]
    np.testing.assert_allclose(np.sort(np.linalg.eigvals(k3.abar).real), [-0.5, -0.5, 1], atol=1e-12)
    _, p3, _ = system("path3")
    assert not markov_classify(p3)["aperiodic"]
    _, kar, _ = system("karate")
    res = markov_classify(kar)
    assert res["aperiodic"] and res["min_eigenvalue"] > -1 + 1e-8


def test_chain_period_small_cases():
    assert chain_period(np.array([[0, 1], [1, 0]])) == 2
    assert chain_period(np.ones((3, 3)) - np.eye(3)) == 1
    cycle4 = np.roll(np.eye(4), 1, axis=1)
    assert chain_period(cycle4) == 4
    with pytest.raises(ValidationError):
        chain_period(np.array([[0, 1], [0, 0]]))


def test_classify_matches_period_oracle_100_graphs():
    nx = pytest.importorskip("networkx")
    rng = np.random.default_rng(99)
    periodic = 0
    for k in range(100):
        n = int(rng.integers(2, 13))
        g = random_connected_graph(rng, n, extra_p=0.0 if k % 3 == 0 else None)
        sys_, _ = spectral_system(g, degree_centrality(g))
        by_eig = markov_classify(sys_)["aperiodic"]
        period = chain_period(sys_.abar.T)
        assert by_eig == (period == 1)
        # Third opinion: an undirected graph has period 2 exactly when bipartite.
        assert period == (2 if nx.is_bipartite(nx.from_numpy_array(g.adjacency)) else 1)
        periodic += period != 1
    assert 10 <= periodic <= 90
