"""Dense linear algebra helpers for small multipartite quantum systems.

All states and operators are plain complex numpy arrays (row-major).
Subsystem structure is never attached to the arrays; operations that need
it take an explicit sequence of local dimensions, e.g. ``dims=(2, 2, 2)``
for three qubits.
"""

from __future__ import annotations

import math
import string
from collections.abc import Iterable, Sequence

import numpy as np

__all__ = [
    "ID2",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "PAULIS",
    "dagger",
    "kron",
    "partial_trace",
    "partial_transpose",
    "hermitian_eigenvalues",
    "is_psd",
    "is_density_matrix",
]

ID2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)

# One order of magnitude above accumulated round-off for the matrix sizes
# used here (at most d^3 x d^3 with small d).
HERMITICITY_TOL = 1e-10
PSD_TOL = 1e-9
DENSITY_TOL = 1e-12


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, always in complex dtype."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _square_on(rho: np.ndarray, dims: Sequence[int]) -> tuple[np.ndarray, tuple[int, ...]]:
    rho = np.asarray(rho, dtype=complex)
    dims_t = tuple(int(d) for d in dims)
    if not dims_t or any(d <= 0 for d in dims_t):
        raise ValueError(f"local dimensions must be positive, got {dims_t}")
    total = math.prod(dims_t)
    if rho.ndim != 2 or rho.shape != (total, total):
        raise ValueError(f"operator shape {rho.shape} does not match dims {dims_t}")
    return rho, dims_t


def partial_trace(rho: np.ndarray, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out every tensor factor not listed in ``keep``.

    Parameters
    ----------
    rho : (D, D) array with D = prod(dims)
        Operator on the full tensor-product space.
    dims : sequence of int
        Local dimension of each factor.
    keep : iterable of int
        Indices of the factors to retain.  The result keeps them in their
        original order; an empty ``keep`` reduces to the full trace,
        returned as a 1x1 matrix.

    Returns
    -------
    (K, K) array with K = prod(dims[k] for k in keep).
    """
    rho, dims_t = _square_on(rho, dims)
    n = len(dims_t)
    kept = sorted(set(int(k) for k in keep))
    if kept and (kept[0] < 0 or kept[-1] >= n):
        raise ValueError(f"keep indices {kept} out of range for {n} factors")
    if 2 * n > len(string.ascii_letters):
        raise ValueError("too many tensor factors for einsum labels")

    labels = list(string.ascii_letters[: 2 * n])
    for j in range(n):
        if j not in kept:
            labels[n + j] = labels[j]
    out = [labels[k] for k in kept] + [labels[n + k] for k in kept]
    sub = "".join(labels) + "->" + "".join(out)
    reduced = np.einsum(sub, rho.reshape(dims_t + dims_t))
    k = math.prod(dims_t[i] for i in kept) if kept else 1
    return reduced.reshape(k, k)


def partial_transpose(rho: np.ndarray, dims: Sequence[int], subsystem: int) -> np.ndarray:
    """Transpose the indices of a single tensor factor, leaving the rest alone.

    Applying it twice returns the input exactly; trace and Hermiticity are
    preserved.
    """
    rho, dims_t = _square_on(rho, dims)
    n = len(dims_t)
    s = int(subsystem)
    if s < 0 or s >= n:
        raise ValueError(f"subsystem {s} out of range for {n} factors")
    t = rho.reshape(dims_t + dims_t)
    t = np.swapaxes(t, s, n + s)
    return np.ascontiguousarray(t.reshape(rho.shape))


def hermitian_eigenvalues(m: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, in ascending order.

    Raises ValueError when the max-abs deviation from the conjugate
    transpose exceeds ``tol``.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    dev = np.abs(m - dagger(m)).max() if m.size else 0.0
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian (deviation {dev:.3e} > {tol:.1e})")
    return np.linalg.eigvalsh(m)


def is_psd(m: np.ndarray, tol: float = PSD_TOL) -> bool:
    """True iff ``m`` is Hermitian within ``tol`` and its minimum eigenvalue is >= -tol."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    if np.abs(m - dagger(m)).max() > tol:
        return False
    return bool(np.linalg.eigvalsh(m)[0] >= -tol)


def is_density_matrix(
    rho: np.ndarray,
    herm_tol: float = DENSITY_TOL,
    trace_tol: float = DENSITY_TOL,
    psd_tol: float = PSD_TOL,
) -> bool:
    """Hermitian within ``herm_tol``, unit trace within ``trace_tol``, PSD within ``psd_tol``."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return False
    if np.abs(rho - dagger(rho)).max() > herm_tol:
        return False
    if abs(np.trace(rho) - 1.0) > trace_tol:
        return False
    return bool(np.linalg.eigvalsh(rho)[0] >= -psd_tol)
