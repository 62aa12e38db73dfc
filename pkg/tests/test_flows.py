from fractions import Fraction

import numpy as np
import pytest

import swnet as sw
from swnet import flows as fl
from swnet.errors import Disconnected, RankDeficient, ZeroZ

TOL = 1e-9


def normalized(v):
    return v / np.linalg.norm(v)


# -- closed forms ------------------------------------------------------------

def test_layer_size_formula():
    assert fl.layer_size(4, (0, 1, 2)) == 4**3
    assert fl.layer_size(2, (0,)) == 2
    assert fl.layer_size(2, (1,)) == 4
    # brute force at n=2, ell=1: layers of sizes 2, 4, 4
    assert fl.sum_inverse_layers(2, 1) == Fraction(1, 2) + Fraction(1, 4) + Fraction(1, 4)


def test_flow_norm_closed_forms_match_integer_vectors():
    for n in (2, 4):
        for ell in (0, 1, 2, 3):
            scale = n**ell
            T = fl.unit_flow(n, ell, 0)
            assert Fraction(int(T @ T), scale * scale) == fl.flow_norm_sq(n, ell)
            S = np.array(fl._sum_unit_flows(n, ell), dtype=object)
            assert Fraction(int(S @ S), scale * scale) == fl.flow_sum_norm_sq(n, ell)
            for x in range(1, n):
                TX = sum(
                    (-1) ** fl._bitdot(x, j) * fl.unit_flow(n, ell, j) for j in range(n)
                )
                assert Fraction(int(TX @ TX), scale * scale) == fl.signed_flow_sum_norm_sq(n, ell)


def test_signed_norm_recurrence_equals_closed_form():
    for n in (2, 4, 8):
        for ell in range(5):
            assert fl.signed_flow_sum_norm_sq(n, ell) == fl.signed_flow_sum_norm_sq_closed(n, ell)


def test_specific_norm_values():
    assert fl.flow_norm_sq(2, 1) == Fraction(3, 2)  # 3/n at n=2
    assert fl.flow_norm_sq(2, 2) == Fraction(33, 12)
    assert fl.flow_sum_norm_sq(2, 1) == 4
    assert fl.sum_inverse_layers(2, 1) == 1


# -- flows and circulations on the network -------------------------------------

def test_unit_flow_divergence():
    for n, ell in [(2, 1), (2, 2), (4, 1), (4, 2)]:
        net = sw.build(n, ell, 1)
        for j in range(n):
            div = fl.divergence(net, fl.unit_flow(n, ell, j))
            assert div[net.source] == n**ell
            assert div[net.sink(j)] == -(n**ell)
            div[net.source] = div[net.sink(j)] = 0
            assert not div.any()


def test_routed_flow_averages_to_unit_flow():
    for n, ell in [(2, 1), (4, 2)]:
        total = sum(fl.routed_flow(n, ell, i, 0) for i in range(n))
        assert (total == fl.unit_flow(n, ell, 0)).all()


def test_circulations_have_zero_divergence_everywhere():
    for n, ell in [(2, 1), (2, 2), (4, 1)]:
        net = sw.build(n, ell, 1)
        for z in range(1, n):
            for x in range(n):
                div = fl.divergence(net, fl.fourier_circulation(n, ell, z, x))
                assert not div.any()


def test_fourier_circulation_rejects_zero_z():
    with pytest.raises(ZeroZ):
        fl.fourier_circulation(2, 1, 0, 1)


def test_circulations_pairwise_orthogonal():
    for n, ell in [(2, 1), (2, 2), (4, 1)]:
        vecs = [
            fl.fourier_circulation(n, ell, z, x).astype(float)
            for z in range(1, n)
            for x in range(n)
        ]
        for a in range(len(vecs)):
            for b in range(a + 1, len(vecs)):
                assert abs(normalized(vecs[a]) @ normalized(vecs[b])) < TOL


def test_routed_vs_circulation_inner_products():
    # <p_ij, psi_zx> = (-1)^(z.i) (c (-1)^(x.j) + c' A_xj) for constants c, c'
    n, ell = 4, 1
    scale = float(n) ** (ell - 1)
    p = {
        (i, j): fl.routed_flow(n, ell, i, j).astype(float) / scale
        for i in range(n)
        for j in range(n)
    }
    for z in range(1, n):
        for x in range(n):
            psi = fl.fourier_circulation(n, ell, z, x).astype(float) / scale
            probe = []
            for i in range(n):
                for j in range(n):
                    sz = (-1) ** fl._bitdot(z, i)
                    sx = (-1) ** fl._bitdot(x, j)
                    axj = sum(
                        (-1) ** fl._bitdot(x, jp) for jp in range(n) if jp != j
                    )
                    probe.append((p[i, j] @ psi, sz * sx, sz * axj))
            probe = np.array(probe)
            coeff, *_ = np.linalg.lstsq(probe[:, 1:], probe[:, 0], rcond=None)
            assert np.abs(probe[:, 1:] @ coeff - probe[:, 0]).max() < TOL


def test_routed_norm_is_three_blocks():
    # <p_ij, p_ij> = 3 c1, with c1 = 1 at depth 1
    p = fl.routed_flow(2, 1, 0, 1).astype(float)
    assert p @ p == pytest.approx(3.0)


def test_optimal_flow_lsq_examples():
    # depth 0: the single edge carries the whole unit
    net = sw.build(4, 0, 1)
    mask = np.ones(4, dtype=bool)
    theta = fl.optimal_flow_lsq(net, mask, 2)
    want = np.zeros(4)
    want[2] = 1.0
    assert np.abs(theta - want).max() < TOL
    # two disjoint parallel routes split the unit evenly
    net = sw.build(2, 1, 1)
    g = sw.complete(2)
    mask = sw.on_edge_mask(net, sw.GraphOracle(g))
    theta = fl.optimal_flow_lsq(net, mask, 0)
    div = fl.divergence(net, theta)
    assert div[net.source] == pytest.approx(1.0)
    assert div[net.sink(0)] == pytest.approx(-1.0)


def test_optimal_flow_lsq_matches_recursion():
    for n, ell in [(2, 1), (2, 2), (4, 1), (4, 2)]:
        net = sw.build(n, ell, 1)
        mask = np.ones(net.edge_count, dtype=bool)
        for j in range(n):
            lsq = fl.optimal_flow_lsq(net, mask, j)
            rec = fl.unit_flow(n, ell, j).astype(float) / float(n) ** ell
            assert np.abs(lsq - rec).max() < TOL


def test_optimal_flow_lsq_disconnected():
    net = sw.build(2, 0, 1)
    g = sw.from_edges(2, [])
    mask = sw.on_edge_mask(net, sw.GraphOracle(g))
    with pytest.raises(Disconnected):
        fl.optimal_flow_lsq(net, mask, 1)  # sink for vertex 2; edge (1,2) is off


def test_flow_decomposition_opt_plus_circulation():
    # any sampled unit flow splits as optimal flow + circulation
    rng = np.random.default_rng(5)
    for n, ell in [(2, 1), (2, 2)]:
        net = sw.build(n, ell, 1)
        mask = np.ones(net.edge_count, dtype=bool)
        opt = fl.optimal_flow_lsq(net, mask, 0)
        circs = np.column_stack(
            [
                fl.fourier_circulation(n, k, z, x).astype(float)
                if k == ell
                else _embed(n, ell, k, b, z, x)
                for k in range(1, ell + 1)
                for b in range((2 * n + 1) ** (ell - k))
                for z in range(1, n)
                for x in range(n)
            ]
        )
        for _ in range(4):
            mix = opt + circs @ rng.normal(size=circs.shape[1])
            resid = mix - opt
            # residual is a circulation: zero divergence
            assert np.abs(fl.divergence(net, resid)).max() < 1e-8
            # and the optimal part is recovered by projecting out circulations
            Q = fl.orthonormalize(circs)
            back = mix - Q @ (Q.T @ mix)
            assert np.abs(back - opt).max() < 1e-8


def _embed(n, ell, k, block, z, x):
    sub = fl.fourier_circulation(n, k, z, x).astype(float)
    out = np.zeros((2 * n + 1) ** ell * n)
    out[block * sub.shape[0] : (block + 1) * sub.shape[0]] = sub
    return out


# -- star states, bases, projectors ---------------------------------------------

def test_star_state_shapes():
    net = sw.build(2, 0, 1)
    s = fl.star_state(net, net.source, signed=False)
    # source star: both edges outgoing plus the boundary slot
    E = net.edge_count
    assert s[2 * E + 2] == 1.0
    assert s[0] == 1.0 and s[2] == 1.0
    minus = fl.star_state(net, net.sink(0), signed=True)
    assert minus[0] == -0.5 and minus[1] == 0.5  # single incoming edge
    # antisymmetric star is orthogonal to every symmetric edge vector
    for e in range(E):
        sym_vec = np.zeros(fl.full_dim(net))
        sym_vec[2 * e] = sym_vec[2 * e + 1] = 1.0
        assert abs(minus @ sym_vec) < TOL


def test_A_basis_dimension_and_signs():
    # root 1: edge 0 carries the always-on (1,1) label, edge 1 queries (1,2)
    g = sw.from_edges(2, [(2, 1)])
    net = sw.build(2, 0, 1)
    cols, mask = fl.build_A_basis(net, sw.GraphOracle(g))
    assert cols.shape[1] == net.edge_count + 2
    assert mask.tolist() == [True, False]
    assert cols[1, 0] == -1.0  # on edge: antisymmetric direction
    assert cols[3, 1] == 1.0  # off edge: symmetric direction


def test_bperp_cardinality_and_orthogonality():
    for n, ell in [(2, 1), (2, 2), (4, 1)]:
        net = sw.build(n, ell, 1)
        Q = fl.build_Bperp_basis(net, 0)
        assert Q.shape[1] == net.edge_count + 4 - net.vertex_count
        gram = Q.T @ Q
        assert np.abs(gram - np.eye(Q.shape[1])).max() < TOL


def test_dimension_lemmas_by_rank():
    # dim F = |E|+2-|V|, dim C = |E|-|V|+1, dim B- = |V|
    for n, ell in [(2, 1), (2, 2)]:
        net = sw.build(n, ell, 1)
        E, V = net.edge_count, net.vertex_count
        Q = fl.build_Bperp_basis(net, 0)
        assert Q.shape[1] - 2 == E + 2 - V  # flows: drop |s>, |t>
        assert Q.shape[1] - 3 == E - V + 1  # circulations: drop the flow too
        stars = np.column_stack(
            [fl.star_state(net, v, signed=True, sink_j=0) for v in range(V)]
        )
        assert np.linalg.matrix_rank(stars, tol=1e-10) == V


def test_projector_properties_and_complement():
    net = sw.build(2, 1, 1)
    g = sw.complete(2)
    cols, _ = fl.build_A_basis(net, sw.GraphOracle(g))
    P = fl.projector(cols)
    assert np.abs(P - P.T).max() < 1e-12
    assert np.abs(P @ P - P).max() < 1e-10
    assert round(np.trace(P)) == net.edge_count + 2
    comp = fl.complement_basis(cols)
    assert comp.shape[1] == fl.full_dim(net) - (net.edge_count + 2)
    assert np.abs(cols.T @ comp).max() < 1e-9
    full = np.eye(4)
    assert fl.complement_basis(full).shape[1] == 0


def test_projector_rank_deficient_raises():
    cols = np.array([[1.0, 2.0], [0.0, 0.0], [1.0, 2.0]])
    with pytest.raises(RankDeficient):
        fl.projector(cols)


def test_projectors_complementary_both_routes():
    # Gram-Schmidt on the cut-space spanning set agrees with I - P(Bperp)
    for n, ell in [(2, 1), (2, 2)]:
        net = sw.build(n, ell, 1)
        for j in range(n):
            P_B = fl.projector(fl.build_B_spanning(net, j), require_full_rank=False)
            Qr = fl.build_Bperp_basis(net, j)
            Qf = np.column_stack(
                [fl.reduced_to_full(net, Qr[:, k]) for k in range(Qr.shape[1])]
            )
            P_perp = fl.projector(Qf)
            assert np.linalg.norm(P_B + P_perp - np.eye(P_B.shape[0])) < 1e-8
