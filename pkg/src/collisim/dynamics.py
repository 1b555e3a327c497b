"""Discrete-time open-system evolution by repeated joint unitary kicks.

Each step tensors the current ancilla and network marginals, applies the
joint propagator for a duration dt, and traces the register back down to
the two marginals. The two protocol modes differ only in what is fed to
the next step: Collision resets the ancilla to its initial state, while
RepeatedInteraction carries the post-step ancilla marginal forward. In
both modes any correlation built up between ancilla and network within a
step is dropped at the re-factorization.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .linalg import (
    ATOL_UNITARY,
    NumericalError,
    check_density_matrix,
    check_pure_state,
    density_from_pure,
    num_qubits_of,
    partial_trace,
)
from .network import NetworkSpec, build_propagator

# A post-step cleanup (hermitize, renormalize the trace) absorbs roundoff;
# if it ever has to move a state by more than this, the run is aborted
# rather than silently repaired.
MAX_STEP_CORRECTION = 1e-8


class ProtocolMode(Enum):
    COLLISION = "collision"
    REPEATED_INTERACTION = "repeated"


@dataclass(eq=False)
class ProtocolConfig:
    """A complete run description.

    Initial states may be kets (1-d arrays) or density matrices; kets
    are promoted internally. The ancilla is a single qubit, the network
    has spec.topology.n qubits.
    """

    spec: NetworkSpec
    mode: ProtocolMode
    dt: float
    steps: int
    ancilla_init: np.ndarray
    network_init: np.ndarray

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if int(self.steps) != self.steps or self.steps < 1:
            raise ValueError(f"steps must be a positive integer, got {self.steps}")
        self.steps = int(self.steps)
        if not isinstance(self.mode, ProtocolMode):
            raise ValueError(f"mode must be a ProtocolMode, got {self.mode!r}")


@dataclass(eq=False)
class StepRecord:
    """State after the n-th collision; n = 0 holds the initial state."""

    n: int
    time: float
    network_state: np.ndarray
    ancilla_state: np.ndarray


@dataclass(eq=False)
class Trajectory:
    config: ProtocolConfig
    records: list

    def network_states(self):
        return [r.network_state for r in self.records]


def _as_density(state, expected_qubits, what):
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        n = check_pure_state(state, what)
        rho = density_from_pure(state)
    else:
        n = check_density_matrix(state, what)
        rho = state.copy()
    if n != expected_qubits:
        raise ValueError(f"{what} has {n} qubits, expected {expected_qubits}")
    return rho


def _cleanup(rho, what):
    """Hermitize and renormalize, aborting on more than roundoff damage."""
    if not np.all(np.isfinite(rho)):
        raise NumericalError(f"{what} contains non-finite entries")
    herm_defect = float(np.max(np.abs(rho - rho.conj().T))) / 2.0
    trace_defect = abs(float(np.trace(rho).real) - 1.0)
    if herm_defect > MAX_STEP_CORRECTION or trace_defect > MAX_STEP_CORRECTION:
        raise NumericalError(
            f"{what} needs correction beyond budget: hermiticity {herm_defect}, "
            f"trace {trace_defect}"
        )
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def collision_step(net, anc, u):
    """One joint kick: U (anc x net) U^dagger, then trace each side out.

    Returns the post-step (network, ancilla) marginals, cleaned up to
    exact hermiticity and unit trace.
    """
    net = np.asarray(net, dtype=complex)
    anc = np.asarray(anc, dtype=complex)
    n_net = num_qubits_of(net.shape[0], "network state")
    n_anc = num_qubits_of(anc.shape[0], "ancilla state")
    n_total = n_anc + n_net
    if u.shape != (2**n_total, 2**n_total):
        raise ValueError(
            f"propagator shape {u.shape} does not match {n_total} qubits"
        )
    if np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))) > ATOL_UNITARY:
        raise ValueError("propagator is not unitary within tolerance")
    total = np.kron(anc, net)
    evolved = u @ total @ u.conj().T
    net_out = partial_trace(evolved, range(n_anc), n_total)
    anc_out = partial_trace(evolved, range(n_anc, n_total), n_total)
    return _cleanup(net_out, "network state"), _cleanup(anc_out, "ancilla state")


def run_protocol(config):
    """Iterate collision_step for config.steps steps.

    The propagator is built once. Record n stores the marginals after
    the n-th collision; record 0 stores the initial states.
    """
    n_net = config.spec.topology.n
    anc0 = _as_density(config.ancilla_init, 1, "ancilla state")
    net = _as_density(config.network_init, n_net, "network state")
    u = build_propagator(config.spec, config.dt)
    records = [StepRecord(0, 0.0, net, anc0)]
    anc_in = anc0
    for n in range(1, config.steps + 1):
        net, anc_out = collision_step(net, anc_in, u)
        records.append(StepRecord(n, n * config.dt, net, anc_out))
        anc_in = anc0 if config.mode is ProtocolMode.COLLISION else anc_out
    return Trajectory(config, records)
