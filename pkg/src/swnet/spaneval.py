"""Simulated span-program evaluation of a switching network.

The quantum algorithm walks the product of two reflections: one around the
input-dependent space A(x), one around the input-independent space B.  The
reflection around B is implemented by generating a basis of its orthogonal
complement and flipping that span, so the operator actually applied is

    U_alg = (2 P_A - I)(I - 2 P_Bperp) = -(2 P_A - I)(2 P_B - I).

Connectivity shows up in the fixed space of U_alg: the intersection of
A(x) with the complement of B is exactly the set of boundary-locked flows
supported on on-edges, and such a flow with unit source throughput exists
iff the source reaches the sink through on-edges.  The initial state

    psi0 = (|s> - |t>) / sqrt(2)

lies in the complement of B; its fixed-space mass is exactly
2 / (2 E + 4) on accepting inputs, where E is the optimal on-flow energy
(so at least 2 / (2 W+ + 4) with W+ the witness-length bound), and exactly
zero on rejecting inputs.  Phase estimation at the cost the runtime
formula pays therefore resolves the answer; here we read the fixed-space
mass off an exact eigendecomposition.

Desk-scale shortcut: psi0 lies in the complement of B, which every Jordan
block of U_alg meets in at most one direction, so the whole spectral
measure of psi0 is computable from the small symmetric matrix
M = Q^T P_A Q where Q is the generated complement basis.  ``phase_mass``
uses that; ``decide_phase_estimation`` on a dense ReflectionPair is the
direct route and agrees with it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import flows as fl
from .errors import BasisMismatch, InvalidParams
from .graphs import Digraph, GraphOracle, attach_source_path, pad_to_power_of_two
from .network import SwitchingNet, accepts, build, on_edge_mask

#: calibration of the simulated decider: a single global rule, not tuned
#: per instance.  The acceptance threshold is half the guaranteed witness
#: mass 2/(2 W+ + 4) at witness bound W+ = L^(log 3).
PHASE_TOL = 1e-9
PSI0_LABEL = "(|s> - |t>)/sqrt(2)"


def acceptance_threshold(ell: int) -> float:
    """Half the minimum fixed-space mass an accepting instance can show."""
    w_plus = 3**ell
    return 1.0 / (2 * w_plus + 4)


def time_formula(n: int, L: int) -> float:
    """Accounted quantum time for one length-L decision on n vertices."""
    return math.sqrt(L ** math.log2(3) * (2 * n + 1) ** math.log2(L) * n) if L > 1 else math.sqrt(n)


def quantum_space_cells(n: int, L: int) -> int:
    """Register cells to address the edge space plus direction and boundary."""
    edge_count = (2 * n + 1) ** max(int(math.log2(L)), 0) * n
    return math.ceil(math.log2(2 * edge_count + 4)) + 2


# -- resource ledger ----------------------------------------------------------

@dataclass
class ResourceLedger:
    """Operation counters shared by the deciders and the outer driver."""

    time_steps: float = 0.0
    space_cells: int = 0
    oracle_queries: int = 0
    quantum_space_cells: int = 0
    decider_calls: int = 0
    guard_exhausted: bool = False
    peak_frontier: int = 0

    def as_dict(self) -> dict:
        return {
            "time_steps": self.time_steps,
            "space_cells": self.space_cells,
            "oracle_queries": self.oracle_queries,
            "quantum_space_cells": self.quantum_space_cells,
            "decider_calls": self.decider_calls,
            "guard_exhausted": self.guard_exhausted,
            "peak_frontier": self.peak_frontier,
        }


# -- reflections (dense, small instances) --------------------------------------

@dataclass
class ReflectionPair:
    """Dense projectors and the product of reflections for one input."""

    P_A: np.ndarray
    P_B: np.ndarray
    U: np.ndarray
    net: SwitchingNet
    sink_index: int
    on_mask: np.ndarray

    @property
    def U_alg(self) -> np.ndarray:
        """The operator the algorithm applies (reflects the generated basis)."""
        return -self.U


def build_reflections(net: SwitchingNet, oracle: GraphOracle, sink_index: int) -> ReflectionPair:
    """Build P_A, P_B and U; P_B is constructed twice and must agree.

    Route one orthonormalizes the cut-space spanning set directly; route
    two takes I minus the projector onto the generated complement basis.
    Disagreement beyond 1e-8 Frobenius signals an implementation bug and
    raises BasisMismatch.
    """
    A_cols, mask = fl.build_A_basis(net, oracle)
    P_A = fl.projector(A_cols)
    # the cut-space stars and symmetric edge vectors are independent, so a
    # rank drop here is a bug, not a property of the input
    span_B = fl.build_B_spanning(net, sink_index)
    P_B = fl.projector(span_B)
    Qr = fl.build_Bperp_basis(net, sink_index)
    Qf = np.column_stack([fl.reduced_to_full(net, Qr[:, k]) for k in range(Qr.shape[1])])
    P_B2 = np.eye(P_B.shape[0]) - fl.projector(Qf)
    mismatch = np.linalg.norm(P_B - P_B2)
    if mismatch > 1e-8:
        raise BasisMismatch(f"cut-space projector routes disagree: {mismatch:.3e} Frobenius")
    U = (2 * P_A - np.eye(P_A.shape[0])) @ (2 * P_B - np.eye(P_B.shape[0]))
    return ReflectionPair(P_A=P_A, P_B=P_B, U=U, net=net, sink_index=sink_index, on_mask=mask)


@dataclass
class DecisionReport:
    """Outcome of one simulated span-program decision."""

    accepted: bool
    overlap0: float
    witness_energy: float | None
    path_len: int | None
    threshold: float
    psi0: str = PSI0_LABEL
    ledger: ResourceLedger = field(default_factory=ResourceLedger)

    def as_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "overlap0": self.overlap0,
            "witness_energy": self.witness_energy,
            "path_len": self.path_len,
            "threshold": self.threshold,
            "psi0": self.psi0,
            "ledger": self.ledger.as_dict(),
        }


def default_psi0(net: SwitchingNet) -> np.ndarray:
    """(|s> - |t>)/sqrt(2) in the full representation."""
    out = np.zeros(fl.full_dim(net))
    E = net.edge_count
    out[2 * E] = 1 / math.sqrt(2)
    out[2 * E + 1] = -1 / math.sqrt(2)
    return out


def decide_phase_estimation(
    pair: ReflectionPair, psi0: np.ndarray, threshold: float | None = None
) -> DecisionReport:
    """Decide from the exact eigenstructure of the product of reflections.

    overlap0 is the squared overlap of psi0 with the phase-0 eigenspace of
    U_alg, read off as the kernel of U_alg - I (eigenphases grouped at
    tolerance PHASE_TOL); accepted means overlap0 >= threshold.
    """
    if abs(np.linalg.norm(psi0) - 1.0) > 1e-9:
        raise InvalidParams("psi0 must be normalized")
    net = pair.net
    if threshold is None:
        threshold = acceptance_threshold(net.ell)
    # kernel of U_alg - I via SVD; singular values below tol span the fixed space
    M = pair.U_alg - np.eye(pair.U.shape[0])
    _, svals, vt = np.linalg.svd(M)
    fixed = vt[svals < PHASE_TOL, :]
    overlap0 = float((fixed @ psi0) @ (fixed @ psi0))
    accepted = overlap0 >= threshold
    witness_energy = path_len = None
    if accepted:
        theta = fl.optimal_flow_lsq(net, pair.on_mask, pair.sink_index)
        witness_energy = float(theta @ theta)
        dist, _ = _bfs_on(net, pair.on_mask)
        path_len = int(dist[net.sink(pair.sink_index)])
    report = DecisionReport(
        accepted=accepted, overlap0=overlap0, witness_energy=witness_energy,
        path_len=path_len, threshold=threshold,
    )
    report.ledger.oracle_queries = net.edge_count
    report.ledger.quantum_space_cells = quantum_space_cells(net.n, 2**net.ell)
    report.ledger.time_steps = time_formula(net.n, 2**net.ell)
    return report


def _bfs_on(net: SwitchingNet, mask: np.ndarray):
    from .network import _component_and_parents

    return _component_and_parents(net, mask)


# -- fast sector route ---------------------------------------------------------

@lru_cache(maxsize=64)
def _cached_bperp(n: int, ell: int, sink_index: int) -> np.ndarray:
    # the complement basis is root independent, so cache per (n, ell, sink)
    Q = fl.build_Bperp_basis(build(n, ell, 1), sink_index)
    Q.flags.writeable = False
    return Q


def phase_mass(net: SwitchingNet, oracle: GraphOracle, sink_index: int) -> float:
    """overlap0 of the default psi0, via the complement-basis sector.

    Computes the spectrum of M = Q^T P_A Q on the generated complement
    basis Q.  A sector direction with M-eigenvalue mu sits in a Jordan
    block of U_alg with eigenphase pair +-(pi - 2 arccos sqrt(mu)), so the
    phase-0 component of psi0 is its mass on the mu = 1 eigenspace.
    Equals decide_phase_estimation's overlap0 without building dense
    projectors.
    """
    Q = _cached_bperp(net.n, net.ell, sink_index)
    mask = on_edge_mask(net, oracle)
    E = net.edge_count
    cols = [Q[:E, :][mask, :].T]
    for pair_slots in ((fl.S_SLOT, fl.LS_SLOT), (fl.T_SLOT, fl.RT_SLOT)):
        a = np.zeros(E + 4)
        a[E + pair_slots[0]] = a[E + pair_slots[1]] = 1 / math.sqrt(2)
        cols.append((Q.T @ a)[:, None])
    C = np.column_stack(cols)
    mu, V = np.linalg.eigh(C @ C.T)
    psi = np.zeros(E + 4)
    psi[E + fl.S_SLOT] = 1 / math.sqrt(2)
    psi[E + fl.T_SLOT] = -1 / math.sqrt(2)
    m = (V.T @ (Q.T @ psi)) ** 2
    return float(m[mu >= 1 - PHASE_TOL].sum())


def witness_energy(net: SwitchingNet, oracle: GraphOracle, sink_index: int) -> float:
    """Minimum flow energy over unit on-flows; at most the witness path length."""
    mask = on_edge_mask(net, oracle)
    theta = fl.optimal_flow_lsq(net, mask, sink_index)
    return float(theta @ theta)


# -- the length-bounded deciders ------------------------------------------------

SPECTRAL_DIM_CAP = 5000  # above this, spectral mode silently answers exactly


def decide_length_bounded(
    g: Digraph, u: int, v: int, L: int, mode: str = "exact"
) -> tuple[bool, ResourceLedger]:
    """Is there a directed u -> v path of length at most L (L a power of two)?

    mode "exact" answers by BFS over the on-subgraph; mode "spectral" reads
    the answer off the reflection spectrum, falling back to exact above
    SPECTRAL_DIM_CAP while still accounting the formula cost.  The ledger
    carries the accounted quantum time, oracle queries, and register cells.
    """
    if L < 1 or L & (L - 1):
        raise InvalidParams(f"L must be a positive power of two, got {L}")
    ledger = ResourceLedger()
    g = pad_to_power_of_two(g)
    if L > g.n:
        raise InvalidParams(f"L = {L} exceeds padded vertex count {g.n}")
    ledger.time_steps = time_formula(g.n, L)
    ledger.quantum_space_cells = quantum_space_cells(g.n, L)
    ledger.decider_calls = 1
    if u == v:
        return True, ledger
    ell = int(math.log2(L))
    net = build(g.n, ell, u)
    oracle = GraphOracle(g)
    if mode == "spectral" and 2 * net.edge_count + 4 <= SPECTRAL_DIM_CAP:
        mass = phase_mass(net, oracle, v - 1)
        answer = mass >= acceptance_threshold(ell)
    elif mode in ("spectral", "exact"):
        answer, _ = accepts(net, oracle, v - 1)
    else:
        raise InvalidParams(f"unknown mode {mode!r}")
    ledger.oracle_queries = oracle.query_count
    return answer, ledger


def decide_distance(
    g: Digraph, u: int, v: int, L: int, mode: str = "exact"
) -> tuple[bool, ResourceLedger]:
    """Is there a directed u -> v path of length at most L (any L >= 1)?

    Rounds L up to a power of two by grafting a directed path of length
    2^ceil(log2 L) - L into u and asking the power-of-two decider from the
    new chain head.  u == v answers True for every L.
    """
    if L < 1:
        raise InvalidParams("L must be >= 1")
    if u == v:
        ledger = ResourceLedger()
        ledger.decider_calls = 1
        return True, ledger
    ell = max(math.ceil(math.log2(L)), 0)
    a = 2**ell - L
    g2, u2 = attach_source_path(g, u, a)
    return decide_length_bounded(g2, u2, v, 2**ell, mode=mode)


def decide_distance_report(g: Digraph, u: int, v: int, L: int, mode: str = "exact") -> DecisionReport:
    """decide_distance plus the witness fields of a full DecisionReport.

    overlap0 is filled in for spectral mode (1.0 by convention for the
    trivial u == v case); witness energy and path length come from the
    on-subgraph of the padded network when the answer is positive.
    """
    answer, ledger = decide_distance(g, u, v, L, mode=mode)
    ell = max(math.ceil(math.log2(L)), 0)
    threshold = acceptance_threshold(ell)
    report = DecisionReport(
        accepted=answer, overlap0=float(answer), witness_energy=None,
        path_len=None, threshold=threshold, ledger=ledger,
    )
    if u == v:
        report.path_len = 0
        report.witness_energy = 0.0
        return report
    g2, u2 = attach_source_path(g, u, 2**ell - L)
    g2 = pad_to_power_of_two(g2)
    net = build(g2.n, ell, u2)
    if mode == "spectral" and 2 * net.edge_count + 4 <= SPECTRAL_DIM_CAP:
        report.overlap0 = phase_mass(net, GraphOracle(g2), v - 1)
    if answer:
        oracle = GraphOracle(g2)
        _, path = accepts(net, oracle, v - 1)
        report.path_len = len(path)
        report.witness_energy = witness_energy(net, GraphOracle(g2), v - 1)
    return report
