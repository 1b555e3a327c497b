"""Dense complex linear algebra for small qubit registers.

Everything here operates on plain numpy arrays of complex128. An operator
or state on n qubits is a (2**n, 2**n) matrix. Qubit 0 is the MOST
significant bit of the computational-basis index, and tensor factors
combine left to right, exactly as np.kron does. Every module in the
package shares this convention.
"""

from __future__ import annotations

import numpy as np

# Shared tolerances. State invariants (trace, hermiticity, norm) are held
# to 1e-10, unitarity to 1e-9, and eigenvalues may dip to -1e-8 from
# roundoff before a state is rejected as unphysical.
ATOL_STATE = 1e-10
ATOL_UNITARY = 1e-9
PSD_SLACK = 1e-8

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
# sigma_pm = (sigma_x +- i sigma_y)/2, so sigma_plus = |0><1|.
SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)


class NumericalError(RuntimeError):
    """A computation left the numerically trustworthy regime."""


def _as_square(m, what="matrix"):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{what} must be square, got shape {m.shape}")
    return m


def num_qubits_of(dim, what="operator"):
    """Qubit count for a dimension that must be a power of two."""
    n = int(dim).bit_length() - 1
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"{what} dimension {dim} is not a power of two")
    return n


def kron(a, b):
    """Tensor product of two operators; qubits of `a` become the high bits."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def embed_single(op, site, n):
    """Embed a single-qubit operator at `site` in an n-qubit register.

    Returns I x ... x op x ... x I with `op` in slot `site`.
    """
    op = _as_square(op, "single-qubit operator")
    if op.shape != (2, 2):
        raise ValueError(f"expected a 2x2 operator, got shape {op.shape}")
    if not 0 <= site < n:
        raise ValueError(f"site {site} out of range for {n} qubits")
    out = np.array([[1.0 + 0.0j]])
    for k in range(n):
        out = np.kron(out, op if k == site else IDENTITY_2)
    return out


def is_hermitian(m, atol=ATOL_STATE):
    m = np.asarray(m)
    return bool(np.max(np.abs(m - m.conj().T)) <= atol)


def herm_eig(h):
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvector columns) with
    h = V diag(w) V^dagger.
    """
    h = _as_square(h, "Hermitian matrix")
    if not is_hermitian(h):
        raise ValueError("matrix is not Hermitian within tolerance")
    return np.linalg.eigh(h)


def expm_hermitian(h, scale):
    """exp(scale * h) for Hermitian h, via eigendecomposition.

    With purely imaginary scale the result is unitary up to eigensolver
    accuracy, which is what the propagators rely on.
    """
    w, v = herm_eig(h)
    return (v * np.exp(scale * w)) @ v.conj().T


def eigvals_general(m):
    """All eigenvalues of a general (possibly non-Hermitian) matrix."""
    m = _as_square(m)
    try:
        return np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue iteration failed: {exc}") from exc


def partial_trace(rho, discard, num_qubits=None):
    """Trace out the qubits listed in `discard`.

    rho is a 2**n x 2**n matrix; the result acts on the remaining qubits
    in their original order. Discarding every qubit returns the 1x1
    matrix holding trace(rho).
    """
    rho = _as_square(rho, "state")
    n = num_qubits_of(rho.shape[0], "state") if num_qubits is None else num_qubits
    discard = set(discard)
    if not all(isinstance(q, (int, np.integer)) and 0 <= q < n for q in discard):
        raise ValueError(f"discard indices {sorted(discard)} invalid for {n} qubits")
    keep = [q for q in range(n) if q not in discard]
    if not keep:
        return np.array([[np.trace(rho)]], dtype=complex)
    shaped = rho.reshape([2] * (2 * n))
    row_axes = list(range(n))
    col_axes = [n + q if q in keep else q for q in range(n)]
    out_axes = keep + [n + q for q in keep]
    d = 2 ** len(keep)
    return np.einsum(shaped, row_axes + col_axes, out_axes).reshape(d, d)


def check_pure_state(vec, what="state vector"):
    """Validate a ket: 1-d, power-of-two length, unit norm. Returns its qubit count."""
    vec = np.asarray(vec, dtype=complex)
    if vec.ndim != 1:
        raise ValueError(f"{what} must be a vector, got shape {vec.shape}")
    n = num_qubits_of(vec.shape[0], what)
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > ATOL_STATE:
        raise ValueError(f"{what} has norm {norm!r}, expected 1")
    return n


def check_density_matrix(rho, what="density matrix"):
    """Validate unit trace, hermiticity, and positivity. Returns the qubit count.

    Positivity allows the PSD_SLACK dip that roundoff can introduce.
    """
    rho = _as_square(rho, what)
    n = num_qubits_of(rho.shape[0], what)
    tr = np.trace(rho)
    if abs(tr - 1.0) > ATOL_STATE:
        raise ValueError(f"{what} has trace {tr!r}, expected 1")
    if not is_hermitian(rho):
        raise ValueError(f"{what} is not Hermitian within {ATOL_STATE}")
    smallest = float(np.linalg.eigvalsh(rho)[0])
    if smallest < -PSD_SLACK:
        raise ValueError(f"{what} has eigenvalue {smallest}, below -{PSD_SLACK}")
    return n


def density_from_pure(vec):
    """|psi><psi| for a ket."""
    vec = np.asarray(vec, dtype=complex)
    return np.outer(vec, vec.conj())
