"""Separability and tripartite entanglement of the machine outputs.

For two qubits the partial-transpose test is exact: the joint clone state
is separable iff its partial transpose is positive semidefinite.  The
spectrum of the partially transposed clone pair of a qubit machine has a
closed form in (nu, xi) that never depends on the input phase; on the
optimal family nu^2 + xi^2 = 1/2 it is nonnegative, and numerically that
family (plus the trivial nu xi = 0 edge) is the only separable region.

The residual three-party entanglement of the pure output is measured by
the tangle

    tau = 4 det(rho_A) - C(rho_AB)^2 - C(rho_AX)^2,

positive exactly for GHZ-type states; on the optimal family it reduces to
4 sin^2(theta) nu^2 (1/2 - nu^2) for orbit inputs of polar angle theta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cloner import ClonerParams
from .qlinalg import (
    PAULI_Y,
    dagger,
    hermitian_eigenvalues,
    is_density_matrix,
    kron,
    partial_trace,
    partial_transpose,
)

__all__ = [
    "PptReport",
    "TangleReport",
    "SEPARABLE_TOL",
    "GHZ_TOL",
    "ppt_report",
    "negativity",
    "concurrence",
    "clone_ppt_spectrum",
    "optimal_ppt_spectrum",
    "tangle_pure3",
    "tangle_closed_form",
    "tangle_general",
]

SEPARABLE_TOL = 1e-9
GHZ_TOL = 1e-9

_YY = kron(PAULI_Y, PAULI_Y)


@dataclass(frozen=True)
class PptReport:
    """Partial-transpose spectrum with the derived separability verdict."""

    eigenvalues: np.ndarray  # ascending, length 4
    negativity: float
    separable: bool


@dataclass(frozen=True)
class TangleReport:
    """Tangle decomposition of a pure three-qubit state.

    tau_a_bc = 4 det(rho_A) splits as c2_ab + c2_ax + tau_abx; the state is
    GHZ-type when tau_abx exceeds GHZ_TOL.
    """

    tau_abx: float
    tau_a_bc: float
    c2_ab: float
    c2_ax: float
    classification: str  # "GHZ-type" or "separable-ish"


def ppt_report(rho: np.ndarray, dims, subsystem: int, tol: float = SEPARABLE_TOL) -> PptReport:
    """Spectrum of the partial transpose plus negativity and the (2x2-exact)
    separability verdict."""
    pt = partial_transpose(rho, dims, subsystem)
    eigs = hermitian_eigenvalues(pt)
    neg = 2.0 * max(0.0, -float(eigs[0]))
    return PptReport(eigenvalues=eigs, negativity=neg, separable=bool(neg <= tol))


def negativity(rho: np.ndarray, dims, subsystem: int) -> float:
    """2 max(0, -lambda_min) of the partial transpose; zero iff the state
    stays positive under it."""
    pt = partial_transpose(rho, dims, subsystem)
    return 2.0 * max(0.0, -float(hermitian_eigenvalues(pt)[0]))


def concurrence(rho: np.ndarray) -> float:
    """Two-qubit concurrence max(0, l1 - l2 - l3 - l4).

    The l_i are the descending square roots of the eigenvalues of
    rho (sy x sy) rho* (sy x sy), computed here as the singular values of
    sqrt(rho) (sy x sy) sqrt(rho)* so that vanishing values come out at
    absolute rather than square-root precision.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4) or not is_density_matrix(rho, herm_tol=1e-9, trace_tol=1e-9, psd_tol=1e-7):
        raise ValueError("concurrence needs a two-qubit density matrix")
    w, v = np.linalg.eigh(rho)
    w = np.clip(w, 0.0, None)
    # eigenvalues at solver-noise level are exact zeros of the rank-deficient
    # states produced here; keeping them would put sqrt-of-noise (~1e-8)
    # errors into the lambdas
    w[w < w.max() * 1e-13] = 0.0
    sqrt_rho = (v * np.sqrt(w)) @ dagger(v)
    lam = np.linalg.svd(sqrt_rho @ _YY @ sqrt_rho.conj(), compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def _check_machine_feasible(nu: float, xi: float) -> None:
    if nu < 0 or xi < 0 or nu**2 + xi**2 > 1.0 + 1e-12:
        raise ValueError(f"(nu, xi) = ({nu}, {xi}) is not a feasible qubit machine")


def clone_ppt_spectrum(nu: float, xi: float, phi: float = 0.0) -> np.ndarray:
    """Closed-form partial-transpose spectrum of the joint clones, ascending.

    For the qubit machine (mu fixed by normalization) on an equatorial
    input the four eigenvalues are

        (1 + 2 nu xi +/- sqrt(1 + 12 nu xi - 16 nu^3 xi + 4 nu^2 xi^2 - 16 nu xi^3))/4
        (1 - 2 nu xi +/- sqrt(1 - 12 nu xi + 16 nu^3 xi + 4 nu^2 xi^2 + 16 nu xi^3))/4.

    The input phase phi never enters; the argument is accepted to mirror
    the simulated machine's signature and is validated as a real number.
    """
    _check_machine_feasible(nu, xi)
    phi = float(phi)
    p = nu * xi
    cube = 16.0 * nu * xi * (nu**2 + xi**2)
    quad = 4.0 * p * p
    r_plus = math.sqrt(max(0.0, 1.0 + 12.0 * p - cube + quad))
    r_minus = math.sqrt(max(0.0, 1.0 - 12.0 * p + cube + quad))
    eigs = np.array(
        [
            (1.0 + 2.0 * p + r_plus) / 4.0,
            (1.0 + 2.0 * p - r_plus) / 4.0,
            (1.0 - 2.0 * p + r_minus) / 4.0,
            (1.0 - 2.0 * p - r_minus) / 4.0,
        ]
    )
    return np.sort(eigs)


def optimal_ppt_spectrum(eta_a: float) -> np.ndarray:
    """Partial-transpose spectrum on the optimal family, ascending:
    {0, 0, (1 -/+ sqrt(eta_a^2 (1 - eta_a^2)))/2}; never negative."""
    if not 0.0 <= eta_a <= 1.0:
        raise ValueError(f"eta_a must lie in [0, 1], got {eta_a}")
    g = math.sqrt(eta_a**2 * (1.0 - eta_a**2))
    return np.array([0.0, 0.0, (1.0 - g) / 2.0, (1.0 + g) / 2.0])


def tangle_pure3(psi: np.ndarray) -> TangleReport:
    """Tangle decomposition of a normalized pure state of three qubits.

    tau_abx = 4 det(rho_A) - C(rho_AB)^2 - C(rho_AX)^2, clamped to [0, 1].
    """
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size != 8:
        raise ValueError(f"expected an 8-amplitude state, got {psi.size}")
    if abs(np.vdot(psi, psi).real - 1.0) > 1e-9:
        raise ValueError("state is not normalized")
    rho = np.outer(psi, psi.conj())
    rho_a = partial_trace(rho, (2, 2, 2), {0})
    rho_ab = partial_trace(rho, (2, 2, 2), {0, 1})
    rho_ax = partial_trace(rho, (2, 2, 2), {0, 2})
    tau_a_bc = 4.0 * float(np.linalg.det(rho_a).real)
    c2_ab = concurrence(rho_ab) ** 2
    c2_ax = concurrence(rho_ax) ** 2
    tau = min(1.0, max(0.0, tau_a_bc - c2_ab - c2_ax))
    return TangleReport(
        tau_abx=tau,
        tau_a_bc=tau_a_bc,
        c2_ab=c2_ab,
        c2_ax=c2_ax,
        classification="GHZ-type" if tau > GHZ_TOL else "separable-ish",
    )


def tangle_closed_form(nu: float, theta: float) -> float:
    """Tangle of the optimal-family machine on an orbit input:
    4 sin^2(theta) nu^2 (1/2 - nu^2).

    Valid only on the family nu^2 + xi^2 = 1/2, mu = 1/sqrt(2); elsewhere
    use :func:`tangle_general`.
    """
    if not 0.0 <= nu <= 1.0 / math.sqrt(2.0) + 1e-12:
        raise ValueError(f"nu must lie in [0, 1/sqrt(2)], got {nu}")
    return 4.0 * math.sin(theta) ** 2 * nu**2 * max(0.0, 0.5 - nu**2)


def tangle_general(params: ClonerParams, theta: float) -> float:
    """Tangle of any qubit machine on an orbit input of polar angle theta:

        sin^2(theta) |mu^4 + nu^4 + xi^4 - 2 (mu^2 nu^2 + mu^2 xi^2 + nu^2 xi^2)|.

    Reduces to :func:`tangle_closed_form` when nu^2 + xi^2 = 1/2.
    """
    if params.d != 2:
        raise ValueError(f"qubit machines only, got d = {params.d}")
    m2, n2, x2 = params.mu**2, params.nu**2, params.xi**2
    poly = m2 * m2 + n2 * n2 + x2 * x2 - 2.0 * (m2 * n2 + m2 * x2 + n2 * x2)
    return math.sin(theta) ** 2 * abs(poly)
