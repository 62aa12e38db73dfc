"""Simulated amplitude loading and the recursive flow-state preparers.

Circuits are simulated structurally: each preparer builds the exact target
vector while accounting gates under a fixed cost model, not by qubit-level
simulation.  Cost model (in "gates"):

    branching rotation by a computed angle      1
    Hadamard layer on a log2(n)-qubit register  log2 n
    controlled swap of two such registers       log2 n
    basis-register load                         log2 n
    recursive sub-circuit call                  the callee's count, once

Rotation amplitudes are carried as exact rationals (squared) and converted
to floats only when states are materialized, so no drift accumulates
through the recursion levels.

The four preparers output, up to positive scale,

    sum-of-flows      sum_j  theta_j
    signed sums       sum_j (-1)^(x.j) theta_j          (circuit C)
    circulations      sum_{i,j} (-1)^(x.j + z.i) p_ij   (z nonzero)
    one optimal flow  theta_j, optionally with boundary slots

where theta_j / p_ij are the recursive optimal-flow states from
:mod:`swnet.flows`; each is verified against that module's vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from . import flows as fl
from .errors import InvalidParams, NegativePrefix, ZeroZ


@dataclass
class PrepCircuit:
    """Structured program summary: primitive steps and their gate cost."""

    ell: int
    ops: tuple
    gate_count: int


def _logn(n: int) -> int:
    return max(int(math.log2(n)), 1)


# -- amplitude loading from prefix sums -----------------------------------------

@dataclass(frozen=True)
class AmplitudeSpec:
    """Target amplitudes over length-m strings via exact prefix sums.

    ``prefix_sum(p)`` returns the exact sum of squared amplitudes over all
    strings extending the prefix p (a tuple over range(d)); ``sign(s)``
    optionally supplies amplitude signs (default nonnegative).
    """

    m: int
    d: int
    prefix_sum: object
    sign: object = None


def grover_rudolph(spec: AmplitudeSpec) -> tuple[np.ndarray, PrepCircuit]:
    """Simulate amplitude loading: one branching rotation per string position.

    Output is the normalized target vector over d^m strings in mixed-radix
    order.  Raises NegativePrefix if any prefix sum is negative, and
    InvalidParams if the prefix sums are inconsistent (children must sum to
    their parent exactly).
    """
    total = spec.prefix_sum(())
    if total < 0:
        raise NegativePrefix("total squared amplitude is negative")
    if total == 0:
        raise InvalidParams("cannot normalize an all-zero amplitude table")
    amps = np.zeros(spec.d**spec.m)

    def walk(prefix: tuple, index: int, weight: Fraction):
        if weight < 0:
            raise NegativePrefix(f"prefix {prefix} has negative squared amplitude")
        if len(prefix) == spec.m:
            a = math.sqrt(float(weight / total))
            if spec.sign is not None and spec.sign(prefix) < 0:
                a = -a
            amps[index] = a
            return
        children = [spec.prefix_sum(prefix + (c,)) for c in range(spec.d)]
        if sum(children) != weight:
            raise InvalidParams(f"prefix sums inconsistent below {prefix}")
        for c, w in enumerate(children):
            walk(prefix + (c,), index * spec.d + c, w)

    walk((), 0, total)
    circuit = PrepCircuit(ell=spec.m, ops=("rotate",) * spec.m, gate_count=spec.m)
    return amps, circuit


def prefix_sum_S(n: int, ell: int, p: tuple) -> Fraction:
    """Sum over tag patterns extending p of 1/|E_tau|, in closed form.

    Equals (n+2)^(ell-k) / n^(ell+1-z) for a length-k prefix with z zeros,
    and agrees with brute-force enumeration of the layers.
    """
    k = len(p)
    if k > ell or any(t not in (0, 1, 2) for t in p):
        raise InvalidParams(f"bad tag prefix {p}")
    zeros = sum(1 for t in p if t == 0)
    return Fraction((n + 2) ** (ell - k), n ** (ell + 1 - zeros))


def prefix_sum_S_brute(n: int, ell: int, p: tuple) -> Fraction:
    """Enumeration oracle for prefix_sum_S."""
    total = Fraction(0)
    for tail in product((0, 1, 2), repeat=ell - len(p)):
        total += Fraction(1, fl.layer_size(n, p + tail))
    return total


# -- the four preparers ----------------------------------------------------------

def prepare_sum_of_flows(n: int, ell: int) -> tuple[np.ndarray, PrepCircuit]:
    """|0> -> state proportional to sum_j theta_j, over the edge basis.

    Step 1 loads the layer-name superposition with amplitudes
    sqrt(n^z / (n+2)^ell) from the exact prefix sums; step 2 expands each
    layer name into the uniform superposition over its edges.
    """
    if ell == 0:
        out = np.full(n, 1 / math.sqrt(n))
        return out, PrepCircuit(ell=0, ops=("load",), gate_count=_logn(n))
    spec = AmplitudeSpec(m=ell, d=3, prefix_sum=lambda p: prefix_sum_S(n, ell, p))
    layer_amp, step1 = grover_rudolph(spec)
    edge_count = (2 * n + 1) ** ell * n
    out = np.zeros(edge_count)
    R = 2 * n + 1
    for leaf in range(edge_count // n):
        tau, rest = [], leaf
        for _ in range(ell):
            rest, c = divmod(rest, R)
            tau.append(0 if c == 0 else (1 if c <= n else 2))
        tau.reverse()
        t_index = 0
        for t in tau:
            t_index = t_index * 3 + t
        a = layer_amp[t_index] / math.sqrt(fl.layer_size(n, tuple(tau)))
        out[leaf * n : (leaf + 1) * n] = a
    gates = step1.gate_count + (ell + 1) * _logn(n)
    ops = step1.ops + ("expand-layers", "hadamard")
    return out, PrepCircuit(ell=ell, ops=ops, gate_count=gates)


def fourier_flows_C(n: int, ell: int, x: int) -> tuple[np.ndarray, PrepCircuit]:
    """|x> -> state proportional to sum_j (-1)^(x.j) theta_j(2^ell).

    For nonzero x the tag-0 block cancels; a single rotation with
    alpha = N_x(ell-1) / (N_x(ell-1) + N_0(ell-1)) splits the tag-1 and
    tag-2 branches, a controlled swap and a Hadamard layer set the middle
    register, and the circuit recurses once on the last register.
    """
    if not 0 <= x < n:
        raise InvalidParams(f"x = {x} out of range")
    if x == 0:
        return prepare_sum_of_flows(n, ell)
    if ell == 0:
        out = np.array([(-1) ** fl._bitdot(x, j) for j in range(n)]) / math.sqrt(n)
        return out, PrepCircuit(ell=0, ops=("hadamard",), gate_count=_logn(n))
    v_x, c_x = fourier_flows_C(n, ell - 1, x)
    v_0, c_0 = fourier_flows_C(n, ell - 1, 0)
    alpha = fl.signed_flow_sum_norm_sq(n, ell - 1) / (
        fl.signed_flow_sum_norm_sq(n, ell - 1) + fl.flow_sum_norm_sq(n, ell - 1)
    )
    w1 = math.sqrt(float(alpha) / n)
    w2 = math.sqrt(float(1 - alpha) / n)
    block = v_x.shape[0]
    out = np.zeros((2 * n + 1) * block)
    for i in range(n):
        out[(1 + i) * block : (2 + i) * block] = w1 * v_x
    for j in range(n):
        sgn = (-1) ** fl._bitdot(x, j)
        out[(1 + n + j) * block : (2 + n + j) * block] = w2 * sgn * v_0
    gates = 1 + 2 * _logn(n) + max(c_x.gate_count, c_0.gate_count)
    ops = ("rotate", "cswap", "hadamard", ("call", ell - 1))
    return out, PrepCircuit(ell=ell, ops=ops, gate_count=gates)


def prepare_psi(n: int, ell: int, z: int, x: int) -> tuple[np.ndarray, PrepCircuit]:
    """|x, z> -> state proportional to the circulation psi_{z,x}(2^ell).

    Three-branch superposition over the tag register.  For x = 0 the
    branch weights are (n sqrt(N), sqrt(n N0), sqrt(n N)) with N the
    signed-sum norm one level down; for nonzero x the tag-0 branch
    vanishes and the weights degenerate to (0, 1/sqrt2, 1/sqrt2).
    """
    if z == 0:
        raise ZeroZ("z must be nonzero")
    if ell < 1:
        raise InvalidParams("circulations appear at depth >= 1")
    v_z, c_z = fourier_flows_C(n, ell - 1, z)
    v_x, c_x = fourier_flows_C(n, ell - 1, x)
    N = fl.signed_flow_sum_norm_sq(n, ell - 1)
    N0 = fl.flow_sum_norm_sq(n, ell - 1)
    if x == 0:
        w = np.sqrt(np.array([float(n * n * N), float(n * N0), float(n * N)]))
    else:
        w = np.sqrt(np.array([0.0, float(n * N), float(n * N)]))
    w /= np.linalg.norm(w)
    block = v_z.shape[0]
    out = np.zeros((2 * n + 1) * block)
    out[:block] = w[0] * v_z
    for i in range(n):
        sgn = (-1) ** fl._bitdot(z, i)
        out[(1 + i) * block : (2 + i) * block] = w[1] / math.sqrt(n) * sgn * v_x
    for j in range(n):
        sgn = (-1) ** fl._bitdot(x, j)
        out[(1 + n + j) * block : (2 + n + j) * block] = w[2] / math.sqrt(n) * sgn * v_z
    gates = 1 + 2 * _logn(n) + max(c_z.gate_count, c_x.gate_count)
    ops = ("rotate", "cswap", "hadamard", ("call", ell - 1))
    return out, PrepCircuit(ell=ell, ops=ops, gate_count=gates)


def prepare_theta(
    n: int, ell: int, j: int, with_boundary: bool = False
) -> tuple[np.ndarray, PrepCircuit]:
    """|j> -> state proportional to the optimal unit flow theta_j(2^ell).

    Branch weights (sqrt(N0), sqrt(n F_j), sqrt(N0)) one level down; the
    tag-1 branch recurses on |j>, the others load the sum of flows.  With
    with_boundary the output lives in the reduced representation and the
    two boundary slots are rotated in with exact amplitudes, matching
    :func:`swnet.flows.flow_state`.
    """
    if not 0 <= j < n:
        raise InvalidParams(f"sink index {j} out of range")
    if ell == 0:
        out = np.zeros(n)
        out[j] = 1.0
        circ = PrepCircuit(ell=0, ops=("load",), gate_count=_logn(n))
    else:
        v_rec, c_rec = prepare_theta(n, ell - 1, j, with_boundary=False)
        v_sum, c_sum = prepare_sum_of_flows(n, ell - 1)
        N0 = fl.flow_sum_norm_sq(n, ell - 1)
        Fj = fl.flow_norm_sq(n, ell - 1)
        w = np.sqrt(np.array([float(N0), float(n * Fj), float(N0)]))
        w /= np.linalg.norm(w)
        block = v_rec.shape[0]
        out = np.zeros((2 * n + 1) * block)
        out[:block] = w[0] * v_sum
        for i in range(n):
            out[(1 + i) * block : (2 + i) * block] = w[1] / math.sqrt(n) * v_rec
        out[(1 + n + j) * block : (2 + n + j) * block] = w[2] * v_sum
        gates = 1 + 2 * _logn(n) + max(c_rec.gate_count, c_sum.gate_count)
        circ = PrepCircuit(ell=ell, ops=("rotate", "cswap", "hadamard", ("call", ell - 1)), gate_count=gates)
    if not with_boundary:
        return out, circ
    Fj = fl.flow_norm_sq(n, ell)
    edge_w = math.sqrt(float(2 * Fj / (2 * Fj + 2)))
    bdry_w = math.sqrt(float(1 / (2 * Fj + 2)))
    full = np.zeros(out.shape[0] + 4)
    full[: out.shape[0]] = edge_w * out
    full[out.shape[0] + fl.LS_SLOT] = -bdry_w
    full[out.shape[0] + fl.RT_SLOT] = +bdry_w
    return full, PrepCircuit(
        ell=circ.ell, ops=circ.ops + ("rotate-boundary",), gate_count=circ.gate_count + 2
    )
