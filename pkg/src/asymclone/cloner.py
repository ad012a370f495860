"""Asymmetric 1 -> 2 cloning machines for d-level systems.

A machine is the isometry that sends a d-dimensional input onto two
approximate clones (A, B) plus a machine register (X):

    |i>  ->  mu |iii> + nu sum_{j != i} |ijj> + xi sum_{j != i} |jij>

with subsystems ordered A (x) B (x) X in every tensor product and
reduction.  The blank copy and the machine's initial state are absorbed:
only the d^3 x d isometry is ever represented, never a unitary on d^3.

Two parameter regimes matter:

* universal machines additionally satisfy mu = nu + xi, which makes the
  clone qualities independent of the input state;
* phase-covariant machines drop that constraint and are tuned for inputs
  whose basis amplitudes all have magnitude 1/sqrt(d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qlinalg import dagger

__all__ = [
    "InputState",
    "OrbitState",
    "ClonerParams",
    "ClonerOutput",
    "equatorial_state",
    "orbit_to_input",
    "haar_random_input",
    "random_equatorial",
    "universal_params",
    "phase_covariant_params",
    "build_isometry",
    "clone",
    "fidelity",
    "shrinking_factor",
    "fidelity_from_shrinking",
    "tradeoff_residual",
    "isotropy_residual",
]

AMPLITUDE_NORM_TOL = 1e-12
PARAM_NORM_TOL = 1e-8


@dataclass(frozen=True)
class InputState:
    """Pure input |psi> = sum_i amplitudes[i] |i>, normalized to 1."""

    d: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "amplitudes", amps)
        if self.d < 1 or amps.size != self.d:
            raise ValueError(f"expected {self.d} amplitudes, got {amps.size}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > AMPLITUDE_NORM_TOL:
            raise ValueError(f"amplitudes are not normalized (|psi|^2 = {norm!r})")

    def projector(self) -> np.ndarray:
        """|psi><psi| as a d x d matrix."""
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class OrbitState:
    """Qubit on the fixed-latitude Bloch circle of polar angle theta.

    theta = pi/2 is the x-y equator; phi is the free azimuth on the orbit.
    """

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")

    def bloch_vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )


def equatorial_state(d: int, phases) -> InputState:
    """Input with all basis amplitudes e^{i phase_k} / sqrt(d)."""
    phases = np.asarray(phases, dtype=float).reshape(-1)
    if phases.size != d:
        raise ValueError(f"expected {d} phases, got {phases.size}")
    return InputState(d, np.exp(1j * phases) / math.sqrt(d))


def orbit_to_input(s: OrbitState) -> InputState:
    """cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>."""
    return InputState(
        2,
        np.array(
            [math.cos(s.theta / 2), np.exp(1j * s.phi) * math.sin(s.theta / 2)],
            dtype=complex,
        ),
    )


def haar_random_input(d: int, rng) -> InputState:
    """Haar-random pure input; ``rng`` is a seed or a numpy Generator."""
    rng = np.random.default_rng(rng)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return InputState(d, v / np.linalg.norm(v))


def random_equatorial(d: int, rng) -> InputState:
    """Equatorial input with uniformly random phases."""
    rng = np.random.default_rng(rng)
    return equatorial_state(d, rng.uniform(0.0, 2.0 * math.pi, d))


@dataclass(frozen=True)
class ClonerParams:
    """Machine amplitudes (d, mu, nu, xi), all nonnegative, satisfying
    mu^2 + (d-1)(nu^2 + xi^2) = 1."""

    d: int
    mu: float
    nu: float
    xi: float

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"dimension must be >= 2, got {self.d}")
        if min(self.mu, self.nu, self.xi) < 0:
            raise ValueError("machine amplitudes must be nonnegative")
        norm = self.mu**2 + (self.d - 1) * (self.nu**2 + self.xi**2)
        if abs(norm - 1.0) > PARAM_NORM_TOL:
            raise ValueError(f"machine amplitudes violate normalization ({norm!r})")


def universal_params(d: int, phi_mix: float) -> ClonerParams:
    """Universal machine with the quality split set by phi_mix in [0, pi/2].

    nu = r cos(phi_mix), xi = r sin(phi_mix) and mu = nu + xi, which forces
    r = 1/sqrt(d + sin(2 phi_mix)).  phi_mix = 0 gives a perfect clone A and
    a blank B, pi/2 the reverse, pi/4 the symmetric machine.
    """
    if not 0.0 <= phi_mix <= math.pi / 2:
        raise ValueError(f"phi_mix must lie in [0, pi/2], got {phi_mix}")
    r = 1.0 / math.sqrt(d + math.sin(2.0 * phi_mix))
    nu = r * math.cos(phi_mix)
    xi = r * math.sin(phi_mix)
    return ClonerParams(d, nu + xi, nu, xi)


def phase_covariant_params(d: int, nu: float, xi: float) -> ClonerParams:
    """Machine with mu re-derived from normalization; no mu = nu + xi tie.

    Requires nu, xi >= 0 and nu^2 + xi^2 <= 1/(d-1).
    """
    if nu < 0 or xi < 0:
        raise ValueError("nu and xi must be nonnegative")
    mu_sq = 1.0 - (d - 1) * (nu**2 + xi**2)
    if mu_sq < -PARAM_NORM_TOL:
        raise ValueError(f"(nu, xi) = ({nu}, {xi}) infeasible for d = {d}")
    return ClonerParams(d, math.sqrt(max(0.0, mu_sq)), nu, xi)


def _output_tensor(p: ClonerParams, amplitudes: np.ndarray) -> np.ndarray:
    """Machine output as a (d, d, d) amplitude tensor over A, B, X."""
    d = p.d
    t = np.zeros((d, d, d), dtype=complex)
    for i in range(d):
        a = amplitudes[i]
        t[i, i, i] += p.mu * a
        for j in range(d):
            if j != i:
                t[i, j, j] += p.nu * a
                t[j, i, j] += p.xi * a
    return t


def build_isometry(p: ClonerParams) -> np.ndarray:
    """The d^3 x d isometry; column i is the machine output on basis input |i>."""
    d = p.d
    v = np.zeros((d**3, d), dtype=complex)
    basis = np.eye(d, dtype=complex)
    for i in range(d):
        v[:, i] = _output_tensor(p, basis[i]).reshape(-1)
    return v


@dataclass
class ClonerOutput:
    """Everything produced by one machine run.

    psi_abx is the pure tripartite output (length d^3, order A, B, X);
    the reduced matrices and the per-clone figures of merit follow from it.
    eta = (d F - 1)/(d - 1) holds for the stored (f, eta) pairs.
    """

    psi_abx: np.ndarray
    rho_ab: np.ndarray
    rho_a: np.ndarray
    rho_b: np.ndarray
    rho_x: np.ndarray
    f_a: float
    f_b: float
    eta_a: float
    eta_b: float


def clone(p: ClonerParams, state: InputState) -> ClonerOutput:
    """Run the machine on a pure input and reduce the output every way needed."""
    if state.d != p.d:
        raise ValueError(f"input dimension {state.d} does not match machine d = {p.d}")
    d = p.d
    t = _output_tensor(p, state.amplitudes)
    m_ab = t.reshape(d * d, d)
    m_a = t.reshape(d, d * d)
    m_b = np.ascontiguousarray(t.transpose(1, 0, 2)).reshape(d, d * d)
    m_x = np.ascontiguousarray(t.transpose(2, 0, 1)).reshape(d, d * d)
    rho_a = m_a @ dagger(m_a)
    rho_b = m_b @ dagger(m_b)
    f_a = fidelity(rho_a, state)
    f_b = fidelity(rho_b, state)
    return ClonerOutput(
        psi_abx=t.reshape(-1),
        rho_ab=m_ab @ dagger(m_ab),
        rho_a=rho_a,
        rho_b=rho_b,
        rho_x=m_x @ dagger(m_x),
        f_a=f_a,
        f_b=f_b,
        eta_a=shrinking_factor(f_a, d),
        eta_b=shrinking_factor(f_b, d),
    )


def fidelity(rho: np.ndarray, ideal: InputState) -> float:
    """<psi| rho |psi> as a real number."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (ideal.d, ideal.d):
        raise ValueError(f"rho shape {rho.shape} does not match d = {ideal.d}")
    return float(np.vdot(ideal.amplitudes, rho @ ideal.amplitudes).real)


def shrinking_factor(f: float, d: int) -> float:
    """eta = (d F - 1)/(d - 1)."""
    return (d * f - 1.0) / (d - 1.0)


def fidelity_from_shrinking(eta: float, d: int) -> float:
    """F = ((d - 1) eta + 1)/d."""
    return ((d - 1.0) * eta + 1.0) / d


def tradeoff_residual(f_a: float, f_b: float, d: int) -> float:
    """Left side of the universal-machine quality ellipse.

    F_A^2 + F_B^2 + 2 (d^2-2)/d^2 F_A F_B - 2 (d^2+d-2)/d^2 (F_A+F_B)
    + (d-1)(d+3)/d^2; zero exactly on the trade-off curve traced out by
    the universal family, positive outside it (e.g. at F_A = F_B = 1).
    """
    d2 = float(d * d)
    return (
        f_a**2
        + f_b**2
        + 2.0 * (d2 - 2.0) / d2 * f_a * f_b
        - 2.0 * (d2 + d - 2.0) / d2 * (f_a + f_b)
        + (d - 1.0) * (d + 3.0) / d2
    )


def isotropy_residual(p: ClonerParams, state: InputState, eta: float, which: str = "a") -> float:
    """Max-abs deviation of a simulated clone from eta |psi><psi| + (1-eta)/d 1.

    ``which`` selects clone "a" or "b".  Zero (to round-off) whenever the
    machine treats the given input isotropically with shrinking factor eta.
    """
    if which not in ("a", "b"):
        raise ValueError(f'which must be "a" or "b", got {which!r}')
    out = clone(p, state)
    rho = out.rho_a if which == "a" else out.rho_b
    iso = eta * state.projector() + (1.0 - eta) / p.d * np.eye(p.d)
    return float(np.abs(rho - iso).max())
