"""The pebbling game: strategies, bounds, and the network correspondence.

Doubling along a path of length L costs 3^(log2 L) moves with log2(L) + 2
pebbles; exhaustive configuration search shows the distance limits of a
fixed pebble budget; and any on-path of the switching network replays as
a legal move sequence.
"""

import math

import swnet as sw
from swnet import pebbling as pb

print("== the doubling strategy ==")
for L in (1, 2, 4, 8):
    g = sw.layered_path(L + 1)
    moves = pb.strategy_moves(g, list(range(1, L + 2)))
    final, peak = pb.replay(g, 1, moves)
    print(f"L={L}: {len(moves):2d} moves (= 3^{int(math.log2(L))}), "
          f"peak {peak} pebbles (bound {int(math.log2(L)) + 2}), end {sorted(final)}")

print("\n== a trace ==")
g = sw.layered_path(5)
print(pb.format_trace(4, [1, 2, 3, 4, 5], pb.strategy_moves(g, [1, 2, 3, 4, 5])))

print("== what a pebble budget can reach ==")
for budget in (2, 3, 4):
    g = sw.layered_path(2 ** (budget - 1) + 3)
    dist = sw.bfs_distances(g, 1)
    cfgs = pb.reachable_configs(g, 1, budget)
    print(f"{budget} pebbles on a path: deepest pebble at distance "
          f"{pb.max_pebbled_distance(cfgs, dist)} (bound {2 ** (budget - 1) - 1}), "
          f"deepest bare pair at {pb.max_pair_distance(cfgs, 1, dist)} "
          f"(bound {2 ** (budget - 2)}); {len(cfgs)} configurations")

print("\n== network witness -> pebbling moves ==")
g = sw.from_edges(4, [(1, 2), (2, 3), (3, 4)])
net = sw.build(4, 2, root=1)
ok, path = sw.accepts(net, sw.GraphOracle(g), 3)  # reach vertex 4
moves = pb.path_to_moves(net, path, start=1)
final, peak = pb.replay(g, 1, moves)
print(f"witness of {len(path)} network edges -> {len(moves)} legal moves, "
      f"peak {peak} pebbles, final config {sorted(final)}")
