"""Space-bounded outer BFS with a pluggable bounded-length decider.

The driver sweeps an offset j, seeds the frontier with vertices at exact
distance j from the source, then repeatedly extends it by exact-distance-L
hops, never storing more than about n/L vertices.  A size guard abandons
the offset when the frontier would overflow; some offset always fits
because the distance classes partition the reachable vertices.  The
connectivity verdict is the final "is t within distance L of the frontier"
check of the first offset that completes.

Deciders answer "is there a directed u -> v path of length at most L" and
carry a per-call time charge so tradeoff experiments can account model
cost instead of wall clock.  Length-0 questions are equality tests and are
answered internally without consulting (or paying for) the decider.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams
from .graphs import Digraph, GraphOracle
from .spaneval import ResourceLedger, decide_distance, quantum_space_cells, time_formula

CONNECTED = "Connected"
NOT_CONNECTED = "NotConnected"


# -- decider flavors -------------------------------------------------------------

@dataclass
class DistDecider:
    """A bounded-length reachability decider with its cost model.

    ``answer(oracle, u, v, L)`` decides dist(u, v) <= L for L >= 1.
    ``time_cost(n, L)`` is the per-call charge added to the ledger.
    ``randomized`` marks bounded-error flavors that benefit from boosting.
    """

    name: str
    answer: object
    time_cost: object
    space_cells: object
    quantum_cells: object = None
    randomized: bool = False


def exact_bfs_decider() -> DistDecider:
    """Deterministic ground-truth decider; queries the oracle row by row."""

    def answer(oracle: GraphOracle, u: int, v: int, L: int) -> bool:
        n = oracle.graph.n
        dist = {u: 0}
        frontier = [u]
        while frontier:
            nxt = []
            for a in frontier:
                if dist[a] >= L:
                    continue
                for b in range(1, n + 1):
                    if b != a and b not in dist and oracle.query(a, b):
                        dist[b] = dist[a] + 1
                        nxt.append(b)
            frontier = nxt
        return v in dist and dist[v] <= L

    return DistDecider(
        name="exact",
        answer=answer,
        time_cost=lambda n, L: float(n),
        space_cells=lambda n, L: n,
        quantum_cells=lambda n, L: 0,
    )


def swnet_decider(mode: str = "spectral") -> DistDecider:
    """Decide through the switching network (exact or spectral evaluation)."""

    def answer(oracle: GraphOracle, u: int, v: int, L: int) -> bool:
        ans, ledger = decide_distance(oracle.graph, u, v, L, mode=mode)
        oracle.query_count += ledger.oracle_queries
        return ans

    return DistDecider(
        name=f"swnet-{mode}",
        answer=answer,
        time_cost=lambda n, L: time_formula(n, 1 << max(math.ceil(math.log2(max(L, 1))), 0)),
        space_cells=lambda n, L: quantum_space_cells(n, max(L, 1)),
        quantum_cells=lambda n, L: quantum_space_cells(n, max(L, 1)),
    )


def noisy_decider(p_correct: float, seed: int, inner: DistDecider | None = None) -> DistDecider:
    """Wrap a decider so each call independently lies with probability 1-p."""
    if not 0.0 <= p_correct <= 1.0:
        raise InvalidParams("p_correct must be a probability")
    inner = inner or exact_bfs_decider()
    rng = np.random.default_rng(seed)

    def answer(oracle, u, v, L):
        truth = inner.answer(oracle, u, v, L)
        return truth if rng.random() < p_correct else not truth

    return DistDecider(
        name=f"noisy({p_correct})+{inner.name}",
        answer=answer,
        time_cost=inner.time_cost,
        space_cells=inner.space_cells,
        quantum_cells=inner.quantum_cells,
        randomized=True,
    )


def boosted(decider: DistDecider, reps: int) -> DistDecider:
    """Majority vote over reps independent calls (reps odd; 1 = passthrough)."""
    if reps < 1 or reps % 2 == 0:
        raise InvalidParams("reps must be odd and >= 1")
    if reps == 1:
        return decider

    def answer(oracle, u, v, L):
        yes = sum(1 for _ in range(reps) if decider.answer(oracle, u, v, L))
        return 2 * yes > reps

    return DistDecider(
        name=f"majority{reps}[{decider.name}]",
        answer=answer,
        time_cost=lambda n, L: reps * decider.time_cost(n, L),
        space_cells=decider.space_cells,
        quantum_cells=decider.quantum_cells,
        randomized=decider.randomized,
    )


# -- the outer algorithm -----------------------------------------------------------

def dstcon(
    g: Digraph,
    s: int,
    t: int,
    L: int,
    decider: DistDecider | None = None,
    boost_reps: int = 1,
    frontier_trace: list | None = None,
) -> tuple[str, ResourceLedger]:
    """Directed st-connectivity via distance-class BFS; see module docstring.

    Returns (CONNECTED or NOT_CONNECTED, ledger).  With an exact decider
    the answer equals BFS ground truth.  ``boost_reps`` wraps randomized
    deciders in a majority vote; exact deciders are never boosted.  When a
    list is passed as ``frontier_trace`` it receives one (j, round,
    admitted-set) triple per completed extension round, for invariant
    checks.
    """
    if not (1 <= L <= g.n):
        raise InvalidParams(f"need 1 <= L <= n, got L={L}, n={g.n}")
    if not (1 <= s <= g.n and 1 <= t <= g.n):
        raise InvalidParams("s, t out of range")
    decider = decider or exact_bfs_decider()
    if decider.randomized and boost_reps > 1:
        decider = boosted(decider, boost_reps)
    oracle = GraphOracle(g)
    ledger = ResourceLedger()
    n = g.n
    cell_bits = 1 + max(math.ceil(math.log2(max(L, 2))), 1)

    def dist_le(u: int, v: int, length: int) -> bool:
        if u == v:
            return True
        if length <= 0:  # an equality test; no decider call, no charge
            return False
        return _charged(u, v, length)

    def _charged(u: int, v: int, length: int) -> bool:
        ledger.decider_calls += 1
        ledger.time_steps += decider.time_cost(n, length)
        qc = decider.quantum_cells(n, length) if decider.quantum_cells else 0
        ledger.quantum_space_cells = max(ledger.quantum_space_cells, qc)
        return decider.answer(oracle, u, v, length)

    def note_frontier(size: int):
        ledger.peak_frontier = max(ledger.peak_frontier, size)
        ledger.space_cells = max(ledger.space_cells, size * cell_bits)

    guard = n / L
    for j in range(L):
        S = {s}
        note_frontier(1)
        tripped = False
        if j >= 1:
            for v in range(1, n + 1):
                if dist_le(s, v, j) and not dist_le(s, v, j - 1):
                    if len(S) > guard:
                        tripped = True
                        break
                    S.add(v)
                    note_frontier(len(S))
        if tripped:
            continue
        if frontier_trace is not None:
            frontier_trace.append((j, 0, frozenset(S)))
        for i in range(1, n // L + 1):
            S_new = set()
            for v in range(1, n + 1):
                if any(dist_le(u, v, L) for u in S) and not any(
                    dist_le(u, v, L - 1) for u in S
                ):
                    if len(S) + len(S_new) > guard:
                        tripped = True
                        break
                    S_new.add(v)
                    note_frontier(len(S) + len(S_new))
            if tripped:
                break
            S |= S_new
            if frontier_trace is not None:
                frontier_trace.append((j, i, frozenset(S_new)))
        if tripped:
            continue
        hit = any(dist_le(u, t, L) for u in S)
        ledger.oracle_queries = oracle.query_count
        return (CONNECTED if hit else NOT_CONNECTED), ledger
    ledger.guard_exhausted = True
    ledger.oracle_queries = oracle.query_count
    return NOT_CONNECTED, ledger
