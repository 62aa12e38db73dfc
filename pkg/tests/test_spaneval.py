import itertools
import math

import numpy as np
import pytest

import swnet as sw
from swnet import spaneval as se
from swnet.errors import Disconnected, InvalidParams


def all_digraphs(n):
    slots = [(i + 1, j + 1) for i in range(n) for j in range(n) if i != j]
    for bits in itertools.product([0, 1], repeat=len(slots)):
        yield sw.from_edges(n, [e for e, b in zip(slots, bits) if b])


def test_reflection_invariants():
    g = sw.random_digraph(4, 0.5, 11)
    net = sw.build(4, 1, 2)
    pair = se.build_reflections(net, sw.GraphOracle(g), 0)
    dim = pair.U.shape[0]
    assert np.abs(pair.P_A @ pair.P_A - pair.P_A).max() < 1e-10
    assert np.abs(pair.P_B @ pair.P_B - pair.P_B).max() < 1e-10
    assert np.abs(pair.P_A - pair.P_A.T).max() < 1e-10
    assert np.linalg.norm(pair.U @ pair.U.T - np.eye(dim)) < 1e-9
    assert round(np.trace(pair.P_A)) == net.edge_count + 2
    assert round(np.trace(pair.P_B)) == net.vertex_count + net.edge_count


def test_eigenphases_sign_symmetric_and_fixed_dims():
    g = sw.random_digraph(2, 0.7, 3)
    net = sw.build(2, 1, 1)
    pair = se.build_reflections(net, sw.GraphOracle(g), 0)
    lam = np.linalg.eigvals(pair.U)
    # eigenphases come in conjugate pairs: the spectrum is closed under
    # conjugation (phases at exactly pi are their own partner)
    key = lambda z: (round(z.real, 8), round(z.imag, 8))
    assert sorted(map(key, lam)) == sorted(map(key, np.conj(lam)))
    # fixed space of U splits as (A cap B) + (Aperp cap Bperp)
    dim = pair.U.shape[0]
    rank = lambda M: np.linalg.matrix_rank(M, tol=1e-9)
    both = np.column_stack([pair.P_A, pair.P_B])
    dim_sum = rank(both)
    dim_AB = round(np.trace(pair.P_A) + np.trace(pair.P_B)) - dim_sum
    dim_perp = dim - dim_sum
    n_fixed = int(np.sum(np.abs(lam - 1) < 1e-9))
    assert n_fixed == dim_AB + dim_perp


def test_dense_and_sector_overlap_agree():
    for g in all_digraphs(2):
        for u in (1, 2):
            for ell in (0, 1):
                net = sw.build(2, ell, u)
                for j in range(2):
                    if j == u - 1:
                        continue
                    pair = se.build_reflections(net, sw.GraphOracle(g), j)
                    rep = se.decide_phase_estimation(pair, se.default_psi0(net))
                    mass = se.phase_mass(net, sw.GraphOracle(g), j)
                    assert rep.overlap0 == pytest.approx(mass, abs=1e-9)


def test_decide_phase_estimation_matches_oracle_and_witness_bounds():
    for g in all_digraphs(2):
        for u in (1, 2):
            d = sw.bfs_distances(g, u)
            for ell in (0, 1):
                net = sw.build(2, ell, u)
                for j in range(2):
                    if j == u - 1:
                        continue
                    pair = se.build_reflections(net, sw.GraphOracle(g), j)
                    rep = se.decide_phase_estimation(pair, se.default_psi0(net))
                    want = d[j] <= 2**ell
                    assert rep.accepted == want
                    assert 0.0 <= rep.overlap0 <= 1.0 + 1e-12
                    if want:
                        assert rep.path_len <= 3**ell
                        assert rep.witness_energy <= rep.path_len + 1e-9


def test_overlap_equals_witness_energy_identity():
    # on accepting inputs the fixed-space mass of (|s>-|t>)/sqrt2 equals
    # 2 / (2 E + 4) where E is the optimal on-flow energy: the projection
    # onto the boundary-locked on-flow space is realized by that flow
    for seed in range(10):
        g = sw.random_digraph(4, 0.5, 600 + seed)
        for u in (1, 2):
            d = sw.bfs_distances(g, u)
            for ell in (1, 2):
                net = sw.build(4, ell, u)
                for j in range(4):
                    if j == u - 1 or not d[j] <= 2**ell:
                        continue
                    mass = se.phase_mass(net, sw.GraphOracle(g), j)
                    energy = se.witness_energy(net, sw.GraphOracle(g), j)
                    assert mass == pytest.approx(2 / (2 * energy + 4), abs=1e-9)


def test_dense_route_on_medium_instances():
    for seed in (0, 7):
        g = sw.random_digraph(4, 0.5, seed)
        for u in (1, 3):
            d = sw.bfs_distances(g, u)
            net = sw.build(4, 1, u)
            for j in range(4):
                if j == u - 1:
                    continue
                pair = se.build_reflections(net, sw.GraphOracle(g), j)
                rep = se.decide_phase_estimation(pair, se.default_psi0(net))
                assert rep.accepted == (d[j] <= 2)
                assert rep.overlap0 == pytest.approx(
                    se.phase_mass(net, sw.GraphOracle(g), j), abs=1e-9
                )


def test_psi0_must_be_normalized():
    net = sw.build(2, 0, 1)
    pair = se.build_reflections(net, sw.GraphOracle(sw.complete(2)), 1)
    with pytest.raises(InvalidParams):
        se.decide_phase_estimation(pair, 2.0 * se.default_psi0(net))


def test_witness_energy_examples():
    # a single on-route of length k carries energy exactly k
    g = sw.from_edges(2, [(1, 2)])
    net = sw.build(2, 0, 1)
    assert se.witness_energy(net, sw.GraphOracle(g), 1) == pytest.approx(1.0)
    # disconnected raises
    g0 = sw.from_edges(2, [])
    with pytest.raises(Disconnected):
        se.witness_energy(sw.build(2, 0, 1), sw.GraphOracle(g0), 1)
    # parallel routes halve the energy: complete graph at depth 1, n=2
    g = sw.complete(2)
    net = sw.build(2, 1, 1)
    e_par = se.witness_energy(net, sw.GraphOracle(g), 1)
    ok, path = sw.accepts(net, sw.GraphOracle(g), 1)
    assert ok and e_par < len(path)


def test_decide_length_bounded_examples():
    g = sw.layered_path(4)
    ans, _ = se.decide_length_bounded(g, 1, 2, 1)
    assert ans
    ans, _ = se.decide_length_bounded(g, 1, 4, 2)  # distance 3 > 2
    assert not ans
    ans, _ = se.decide_length_bounded(g, 2, 2, 4)
    assert ans  # u == v short-circuits
    with pytest.raises(InvalidParams):
        se.decide_length_bounded(g, 1, 2, 3)


def test_time_formula_value():
    # (L^(log 3) (2n+1)^(log L) n)^(1/2) at n=4, L=4
    want = math.sqrt(4 ** math.log2(3) * 9**2 * 4)
    assert se.time_formula(4, 4) == pytest.approx(want)


def test_decide_distance_padding():
    g = sw.layered_path(5)
    for L, u, v, want in [(3, 1, 4, True), (3, 1, 5, False), (1, 1, 2, True), (2, 5, 1, False)]:
        for mode in ("exact", "spectral"):
            ans, ledger = se.decide_distance(g, u, v, L, mode=mode)
            assert ans == want, (L, u, v, mode)
            assert ledger.decider_calls == 1
    ans, _ = se.decide_distance(g, 3, 3, 1)
    assert ans


def test_spectral_matches_exact_on_sample():
    for seed in range(12):
        g = sw.random_digraph(4, 0.4, 500 + seed)
        for u in range(1, 5):
            for v in range(1, 5):
                if u == v:
                    continue
                for L in (1, 2, 3, 4):
                    exact, _ = se.decide_distance(g, u, v, L, mode="exact")
                    spectral, _ = se.decide_distance(g, u, v, L, mode="spectral")
                    assert exact == spectral


def test_spectral_cap_falls_back_to_exact(monkeypatch):
    monkeypatch.setattr(se, "SPECTRAL_DIM_CAP", 10)
    g = sw.layered_path(4)
    ans, ledger = se.decide_length_bounded(g, 1, 3, 2, mode="spectral")
    assert ans
    assert ledger.time_steps == pytest.approx(se.time_formula(4, 2))


def test_acceptance_threshold_is_half_witness_mass():
    assert se.acceptance_threshold(0) == pytest.approx(1 / 6)
    assert se.acceptance_threshold(2) == pytest.approx(1 / 22)
