"""Entanglement measures and peak analysis for two-qubit reductions.

Concurrence follows the spin-flip construction: with
rhotilde = (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y), the measure
is max(0, mu1 - mu2 - mu3 - mu4) where the mu_i are the decreasingly
sorted square roots of the eigenvalues of rho rhotilde.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    ATOL_STATE,
    PSD_SLACK,
    SIGMA_Y,
    NumericalError,
    partial_trace,
)

# sigma_y x sigma_y is real, which keeps the spin flip cheap.
_YY = np.kron(SIGMA_Y, SIGMA_Y).real

# Tie margin when ranking Bell-state fidelities: differences below this
# are treated as equal and resolved by catalog order.
FIDELITY_TIE = 1e-9


def spin_flip(rho):
    """(sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y) for a two-qubit state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"spin flip is defined for 4x4 states, got {rho.shape}")
    return _YY @ rho.conj() @ _YY


def concurrence(rho):
    """Wootters concurrence of a two-qubit density matrix.

    Computed in a square-root-free form: factor rho = L L^dagger from its
    eigendecomposition; the spectrum of rho rhotilde equals that of
    M^dagger M for M = L^T (sigma_y x sigma_y) L, so the mu_i are exactly
    the singular values of M. Taking singular values directly keeps the
    near-zero roots at machine precision, where eigenvalues of rho
    rhotilde followed by a square root would lose half the digits.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"concurrence is defined for 4x4 states, got {rho.shape}")
    w, v = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    if w[0] < -PSD_SLACK:
        raise NumericalError(f"state eigenvalue {w[0]} below -{PSD_SLACK}")
    if abs(w.sum() - 1.0) > 1e-8:
        raise ValueError(f"state trace {w.sum()} is not 1")
    left = v * np.sqrt(np.clip(w, 0.0, None))
    mu = np.linalg.svd(left.T @ _YY @ left, compute_uv=False)
    return float(max(0.0, mu[0] - mu[1] - mu[2] - mu[3]))


def fidelity(rho, target):
    """Overlap <target| rho |target> with a pure target state."""
    rho = np.asarray(rho, dtype=complex)
    vec = np.asarray(getattr(target, "state", target), dtype=complex)
    if rho.shape != (vec.shape[0], vec.shape[0]):
        raise ValueError(
            f"state shape {rho.shape} does not match target of length {vec.shape[0]}"
        )
    value = complex(vec.conj() @ rho @ vec)
    if abs(value.imag) >= ATOL_STATE:
        raise NumericalError(f"fidelity has imaginary residue {value.imag}")
    return float(value.real)


def purity(rho):
    """tr(rho^2), from 1/dim for the maximally mixed state up to 1."""
    rho = np.asarray(rho, dtype=complex)
    return float(np.trace(rho @ rho).real)


@dataclass(eq=False)
class BellTarget:
    label: str
    state: np.ndarray


def _catalog():
    s = 1.0 / np.sqrt(2.0)
    phi_plus = np.array([s, 0, 0, s], dtype=complex)
    phi_minus = np.array([s, 0, 0, -s], dtype=complex)
    psi_plus = np.array([0, s, s, 0], dtype=complex)
    psi_minus = np.array([0, s, -s, 0], dtype=complex)
    entries = [
        ("PhiTilde+", np.array([s, 0, 0, 1j * s], dtype=complex)),
        ("PhiTilde-", np.array([s, 0, 0, -1j * s], dtype=complex)),
        ("Phi+", phi_plus),
        ("Phi-", phi_minus),
        ("Psi+", psi_plus),
        ("Psi-", psi_minus),
        ("PsiTilde+", np.array([0, s, 1j * s, 0], dtype=complex)),
        ("PsiTilde-", np.array([0, s, -1j * s, 0], dtype=complex)),
        ("p-", s * (phi_minus - 1j * psi_minus)),
    ]
    return [BellTarget(label, state) for label, state in entries]


_CATALOG = _catalog()


def bell_catalog():
    """The nine maximally entangled target states, in tie-break order.

    The plus/minus families carry relative phase +-1, the tilde families
    relative phase +-i, and p- is the balanced combination
    (Phi- - i Psi-)/sqrt(2).
    """
    return list(_CATALOG)


def all_pairs(n):
    """Index pairs (i, j), i < j, in lexicographic label order."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def reduced_pair(network_state, pair, num_qubits):
    """Two-qubit reduction of a network state onto the given pair."""
    i, j = pair
    if not (0 <= i < j < num_qubits):
        raise ValueError(f"pair {pair} invalid for {num_qubits} qubits")
    discard = [q for q in range(num_qubits) if q not in (i, j)]
    return partial_trace(network_state, discard, num_qubits)


def pair_concurrences(trajectory, pairs=None):
    """Concurrence of each tracked pair at every step.

    Returns (pairs, table) where table has shape (steps + 1, len(pairs))
    and row n corresponds to record n of the trajectory.
    """
    n = trajectory.config.spec.topology.n
    if pairs is None:
        pairs = all_pairs(n)
    table = np.zeros((len(trajectory.records), len(pairs)))
    for row, record in enumerate(trajectory.records):
        for col, pair in enumerate(pairs):
            table[row, col] = concurrence(reduced_pair(record.network_state, pair, n))
    return pairs, table


def find_peaks(series, min_height):
    """Local maxima of a series, as (index, value) pairs.

    A peak must rise strictly above both neighbors; a flat-topped run
    counts once, at its first index, when both ends drop away. Peaks at
    or above min_height are returned sorted by value descending, ties by
    index ascending. Series endpoints never qualify.
    """
    arr = np.asarray(series, dtype=float)
    if arr.ndim != 1 or arr.shape[0] < 3:
        raise ValueError("peak finding needs a 1-d series of length >= 3")
    peaks = []
    i = 1
    while i < arr.shape[0] - 1:
        j = i
        while j + 1 < arr.shape[0] and arr[j + 1] == arr[i]:
            j += 1
        if arr[i - 1] < arr[i] and j + 1 < arr.shape[0] and arr[j + 1] < arr[i]:
            if arr[i] >= min_height:
                peaks.append((i, float(arr[i])))
        i = j + 1
    peaks.sort(key=lambda p: (-p[1], p[0]))
    return peaks


def characterize_peak(rho_pair):
    """Best Bell-catalog match for a two-qubit state.

    Returns (label, fidelity) for the catalog entry with the highest
    fidelity; ties within FIDELITY_TIE go to the earlier catalog entry.
    """
    best_label, best_f = None, -np.inf
    for target in _CATALOG:
        f = fidelity(rho_pair, target.state)
        if f > best_f + FIDELITY_TIE:
            best_label, best_f = target.label, f
    return best_label, best_f


@dataclass
class PeakReport:
    """One concurrence peak: where, how high, and what state it is."""

    pair: tuple
    n: int
    concurrence: float
    best_target: str
    fidelity: float
