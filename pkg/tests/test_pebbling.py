import math

import pytest

import swnet as sw
from swnet import pebbling as pb
from swnet.errors import BadPath, CapExceeded, IllegalMove


def test_apply_move_rules():
    g = sw.from_edges(3, [(1, 2), (2, 3)])
    c = frozenset({1})
    c = pb.apply_move(c, pb.PebbleMove(pb.PLACE, 1, 2), g)
    assert c == {1, 2}
    c = pb.apply_move(c, pb.PebbleMove(pb.REMOVE, 1, 2), g)
    assert c == {1}
    with pytest.raises(IllegalMove):
        pb.apply_move(frozenset({1}), pb.PebbleMove(pb.PLACE, 1, 3), g)  # no edge
    with pytest.raises(IllegalMove):
        pb.apply_move(frozenset({1, 2}), pb.PebbleMove(pb.PLACE, 1, 2), g)  # occupied
    with pytest.raises(IllegalMove):
        pb.apply_move(frozenset({1}), pb.PebbleMove(pb.REMOVE, 1, 2), g)  # empty
    with pytest.raises(IllegalMove):
        pb.apply_move(frozenset({1}), pb.PebbleMove(pb.PLACE, 2, 3), g)  # no support


@pytest.mark.parametrize("L", [1, 2, 4, 8])
def test_strategy_counts_and_bounds(L):
    g = sw.layered_path(L + 1)
    path = list(range(1, L + 2))
    moves = pb.strategy_moves(g, path)
    assert len(moves) == 3 ** int(math.log2(L))
    final, peak = pb.replay(g, 1, moves)
    assert final == frozenset({1, L + 1})
    assert peak <= int(math.log2(L)) + 2
    # every prefix replays legally: replay raises on any violation
    for cut in range(len(moves)):
        pb.replay(g, 1, moves[:cut])


def test_strategy_rejects_bad_paths():
    g = sw.layered_path(4)
    with pytest.raises(BadPath):
        pb.strategy_moves(g, [1, 3])  # not an edge
    with pytest.raises(BadPath):
        pb.strategy_moves(g, [1, 2, 3, 4])  # length 3 is not a power of two


def test_reachable_configs_no_out_edges():
    g = sw.from_edges(3, [(2, 3)])
    assert pb.reachable_configs(g, 1, 3) == {frozenset({1})}


def test_reachable_configs_cap():
    g = sw.complete(5)
    with pytest.raises(CapExceeded):
        pb.reachable_configs(g, 1, 5, cap=10)


def test_reachable_only_reachable_vertices():
    g = sw.from_edges(4, [(1, 2), (3, 4)])
    cfgs = pb.reachable_configs(g, 1, 4)
    pebbled = set().union(*cfgs)
    assert pebbled == {1, 2}
    # random graphs: every vertex any legal sequence ever pebbles is
    # reachable from the start in the graph
    for seed in range(10):
        g = sw.random_digraph(5, 0.35, 300 + seed)
        dist = sw.bfs_distances(g, 1)
        cfgs = pb.reachable_configs(g, 1, 4)
        for v in set().union(*cfgs):
            assert dist[v - 1] != sw.INF


@pytest.mark.parametrize("ell", [2, 3, 4])
def test_distance_bounds_on_paths(ell):
    g = sw.layered_path(2 ** (ell - 1) + 3)
    dist = sw.bfs_distances(g, 1)
    cfgs = pb.reachable_configs(g, 1, ell)
    # with ell pebbles nothing beyond distance 2^(ell-1) - 1 is pebbled,
    # and a bare {start, v} pair never exceeds 2^(ell-2); both are tight
    assert pb.max_pebbled_distance(cfgs, dist) == 2 ** (ell - 1) - 1
    assert pb.max_pair_distance(cfgs, 1, dist) == 2 ** (ell - 2)


def test_trace_format():
    g = sw.layered_path(3)
    moves = pb.strategy_moves(g, [1, 2, 3])
    text = pb.format_trace(2, [1, 2, 3], moves)
    lines = text.strip().splitlines()
    assert lines[0] == "# L=2 path=1,2,3"
    assert lines[1:] == ["P 1 2", "P 2 3", "R 1 2"]


def test_witness_paths_convert_to_legal_traces():
    for seed in range(12):
        g = sw.random_digraph(4, 0.5, 200 + seed)
        for u in (1, 3):
            for ell in (1, 2):
                net = sw.build(4, ell, u)
                oracle = sw.GraphOracle(g)
                for j in range(4):
                    if j == u - 1:
                        continue
                    ok, path = sw.accepts(net, oracle, j)
                    if not ok:
                        continue
                    moves = pb.path_to_moves(net, path, u)
                    final, peak = pb.replay(g, u, moves)
                    assert final == frozenset({u, j + 1})
                    assert peak <= ell + 2
