"""Directed graphs, the counting query oracle, generators, and file I/O.

Vertices are 1-indexed externally. Internally a vertex i maps to the
bitstring binary(i-1) of length log2(n) once n is a power of two, which is
what the recursive network construction indexes by.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams

INF = float("inf")


@dataclass(frozen=True)
class Digraph:
    """Directed graph on vertices 1..n with dense boolean adjacency.

    ``adj[i-1, j-1]`` is True iff there is an edge i -> j.  No self-loops.
    Instances are immutable after construction and safe to share across
    threads.
    """

    n: int
    adj: np.ndarray

    def __post_init__(self):
        if self.n < 2:
            raise InvalidParams(f"need n >= 2, got {self.n}")
        adj = np.asarray(self.adj, dtype=bool)
        if adj.shape != (self.n, self.n):
            raise InvalidParams(f"adjacency shape {adj.shape} != ({self.n}, {self.n})")
        if adj.trace() != 0:
            raise InvalidParams("self-loops are not allowed")
        adj = adj.copy()
        adj.flags.writeable = False
        object.__setattr__(self, "adj", adj)

    @property
    def edge_count(self) -> int:
        return int(self.adj.sum())

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u - 1, v - 1])

    def edges(self):
        """Yield edges as 1-indexed (u, v) pairs in row-major order."""
        for i, j in zip(*np.nonzero(self.adj)):
            yield int(i) + 1, int(j) + 1


def from_edges(n: int, edges) -> Digraph:
    adj = np.zeros((n, n), dtype=bool)
    for u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise InvalidParams(f"edge ({u}, {v}) out of range 1..{n}")
        if u == v:
            raise InvalidParams(f"self-loop ({u}, {v})")
        adj[u - 1, v - 1] = True
    return Digraph(n, adj)


class GraphOracle:
    """Adjacency query oracle with an exact call counter.

    ``query(i, j)`` returns whether (i, j) is an edge and increments
    ``query_count`` by exactly one.  Concurrent readers of the graph are
    fine; the counter itself is single-writer (confine an oracle instance
    to one thread if totals must be exact).
    """

    def __init__(self, graph: Digraph):
        self.graph = graph
        self.query_count = 0

    def query(self, i: int, j: int) -> bool:
        self.query_count += 1
        return bool(self.graph.adj[i - 1, j - 1])


# -- distances ---------------------------------------------------------------

def bfs_distances(g: Digraph, u: int) -> np.ndarray:
    """Exact directed distances from u to every vertex (INF if unreachable)."""
    dist = np.full(g.n, INF)
    dist[u - 1] = 0
    queue = deque([u - 1])
    adj = g.adj
    while queue:
        a = queue.popleft()
        d = dist[a] + 1
        for b in np.nonzero(adj[a])[0]:
            if dist[b] == INF:
                dist[b] = d
                queue.append(b)
    return dist


def bfs_distance(g: Digraph, u: int, v: int):
    """Shortest directed path length u -> v; INF if unreachable; 0 if u == v."""
    if u == v:
        return 0
    d = bfs_distances(g, u)[v - 1]
    return int(d) if d != INF else INF


# -- constructions -----------------------------------------------------------

def pad_to_power_of_two(g: Digraph) -> Digraph:
    """Extend to n' = 2^ceil(log2 n) vertices; added vertices are isolated.

    Reachability between original vertices is unchanged.
    """
    np2 = 1 << (g.n - 1).bit_length()
    if np2 == g.n:
        return g
    adj = np.zeros((np2, np2), dtype=bool)
    adj[: g.n, : g.n] = g.adj
    return Digraph(np2, adj)


def attach_source_path(g: Digraph, u: int, a: int) -> tuple[Digraph, int]:
    """Attach a directed path of length a feeding into u.

    Returns (g', s1) where g' has a new vertices n+1..n+a carrying the chain
    s1 -> s2 -> ... -> sa -> u, and s1 = n+1.  For a = 0 returns (g, u)
    unchanged.  Every u->v path of length k in g becomes an s1->v path of
    length k+a in g'.
    """
    if a < 0:
        raise InvalidParams("path length a must be >= 0")
    if a == 0:
        return g, u
    n2 = g.n + a
    adj = np.zeros((n2, n2), dtype=bool)
    adj[: g.n, : g.n] = g.adj
    for k in range(a - 1):
        adj[g.n + k, g.n + k + 1] = True
    adj[g.n + a - 1, u - 1] = True
    return Digraph(n2, adj), g.n + 1


# -- generators --------------------------------------------------------------

def random_digraph(n: int, edge_prob: float, seed: int) -> Digraph:
    """Seeded Erdos-Renyi style digraph; deterministic for a fixed seed."""
    if not 0.0 <= edge_prob <= 1.0:
        raise InvalidParams("edge_prob must be in [0, 1]")
    rng = random.Random(seed)
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < edge_prob:
                adj[i, j] = True
    return Digraph(n, adj)


def layered_path(n: int) -> Digraph:
    """The directed path 1 -> 2 -> ... -> n."""
    return from_edges(n, [(i, i + 1) for i in range(1, n)])


def complete(n: int) -> Digraph:
    """All n(n-1) directed edges."""
    adj = ~np.eye(n, dtype=bool)
    return Digraph(n, adj)


# -- file format -------------------------------------------------------------
#
# UTF-8 text; line 1 is "n m"; the next m lines are "i j" with
# 1 <= i, j <= n and i != j.  Duplicate edge lines are rejected.

def read_graph_file(path) -> Digraph:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise InvalidParams(f"{path}: empty graph file")
    try:
        n, m = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise InvalidParams(f"{path}: bad header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise InvalidParams(f"{path}: header promises {m} edges, found {len(lines) - 1}")
    seen = set()
    edges = []
    for ln in lines[1:]:
        try:
            i, j = (int(tok) for tok in ln.split())
        except ValueError as exc:
            raise InvalidParams(f"{path}: bad edge line {ln!r}") from exc
        if (i, j) in seen:
            raise InvalidParams(f"{path}: duplicate edge ({i}, {j})")
        seen.add((i, j))
        edges.append((i, j))
    return from_edges(n, edges)


def write_graph_file(path, g: Digraph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{g.n} {g.edge_count}\n")
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")
