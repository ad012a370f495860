"""Quality trade-off of phase-covariant cloners and its optimal frontier.

On inputs whose basis amplitudes all have magnitude 1/sqrt(d), the clone
shrinking factors depend only on the machine amplitudes:

    eta_A = (d-2) nu^2 + 2 nu sqrt(1 - (d-1)(nu^2 + xi^2))
    eta_B = (d-2) xi^2 + 2 xi sqrt(1 - (d-1)(nu^2 + xi^2))

The optimal machine maximizes eta_B at fixed eta_A.  For d = 2 the frontier
is the unit circle eta_A^2 + eta_B^2 = 1 with nu = eta_A/sqrt(2); for
d >= 3 there is no closed form off the symmetric point and the frontier is
found numerically (deterministic bracketing grid plus golden-section
refinement).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PcPoint",
    "pc_point",
    "pc_shrinking",
    "eta_b_given",
    "optimize_eta_b",
    "symmetric_nu_opt",
    "symmetric_fidelity",
    "qubit_optimal",
]

# xi^2 values in [-XI_SQ_CLAMP, 0) are round-off at the xi = 0 boundary and
# are clamped to zero; fully asymmetric machines live exactly there.
XI_SQ_CLAMP = 1e-12


@dataclass(frozen=True)
class PcPoint:
    """One phase-covariant machine with its clone qualities attached."""

    d: int
    nu: float
    xi: float
    eta_a: float
    eta_b: float


def pc_point(d: int, nu: float, xi: float) -> PcPoint:
    """Bundle a feasible (nu, xi) with the shrinking factors it produces."""
    eta_a, eta_b = pc_shrinking(d, nu, xi)
    return PcPoint(d=d, nu=nu, xi=xi, eta_a=eta_a, eta_b=eta_b)


def pc_shrinking(d: int, nu: float, xi: float) -> tuple[float, float]:
    """(eta_A, eta_B) of the phase-covariant machine with amplitudes (nu, xi)."""
    if nu < 0 or xi < 0:
        raise ValueError("nu and xi must be nonnegative")
    mu_sq = 1.0 - (d - 1) * (nu**2 + xi**2)
    if mu_sq < -XI_SQ_CLAMP:
        raise ValueError(f"(nu, xi) = ({nu}, {xi}) infeasible for d = {d}")
    mu = math.sqrt(max(0.0, mu_sq))
    return (d - 2) * nu**2 + 2.0 * nu * mu, (d - 2) * xi**2 + 2.0 * xi * mu


def _eta_b_of_nu(d: int, eta_a: float, nus: np.ndarray) -> np.ndarray:
    """eta_B over an array of nu values; NaN where (eta_a, nu) is infeasible.

    Inverts eta_A = (d-2) nu^2 + 2 nu mu for mu, recovers xi^2 from the
    normalization, and evaluates eta_B.
    """
    nus = np.asarray(nus, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        mu = (eta_a - (d - 2) * nus**2) / (2.0 * nus)
        xi_sq = (1.0 - mu**2) / (d - 1) - nus**2
        ok = (nus > 0) & (mu >= 0.0) & (mu <= 1.0) & (xi_sq >= -XI_SQ_CLAMP)
        xi = np.sqrt(np.clip(xi_sq, 0.0, None))
        eta_b = (d - 2) * xi_sq + 2.0 * xi * mu
    return np.where(ok, eta_b, np.nan)


def eta_b_given(d: int, eta_a: float, nu: float) -> float:
    """Best clone-B shrinking factor once eta_A and nu are fixed.

    Raises ValueError when no machine with this nu reaches the requested
    eta_A.
    """
    val = _eta_b_of_nu(d, eta_a, np.array([nu]))[0]
    if not np.isfinite(val):
        raise ValueError(f"nu = {nu} is infeasible for eta_A = {eta_a} at d = {d}")
    return float(val)


def _golden_max(f, a: float, b: float, tol: float) -> tuple[float, float]:
    """Deterministic golden-section maximization of f on [a, b].

    Shrinks the bracket until b - a < tol; ties resolve toward smaller x.
    """
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    invphi2 = (3.0 - math.sqrt(5.0)) / 2.0
    h = b - a
    if h <= tol:
        x = a
        return x, f(x)
    n = int(math.ceil(math.log(tol / h) / math.log(invphi)))
    c = a + invphi2 * h
    dd = a + invphi * h
    yc, yd = f(c), f(dd)
    for _ in range(n):
        if yc >= yd:  # keep the left interval on ties -> smallest nu
            b, dd, yd = dd, c, yc
            h *= invphi
            c = a + invphi2 * h
            yc = f(c)
        else:
            a, c, yc = c, dd, yd
            h *= invphi
            dd = a + invphi * h
            yd = f(dd)
    x = c if yc >= yd else dd
    return x, f(x)


def _feasible_nu_interval(d: int, eta_a: float) -> tuple[float, float]:
    """Roots of the xi = 0 curve (d-2) nu^2 + 2 nu sqrt(1-(d-1) nu^2) = eta_a.

    The curve rises from 0 to its maximum 1 at nu = 1/sqrt(d) and falls
    back to (d-2)/(d-1); machines reaching eta_a exist exactly between the
    surrounding roots.  Bisection keeps the result deterministic.
    """
    peak = 1.0 / math.sqrt(d)

    def curve(nu):
        return (d - 2) * nu**2 + 2.0 * nu * math.sqrt(max(0.0, 1.0 - (d - 1) * nu**2))

    lo, hi = 0.0, peak
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if curve(mid) >= eta_a:
            hi = mid
        else:
            lo = mid
    left = hi
    lo, hi = peak, 1.0 / math.sqrt(d - 1)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if curve(mid) >= eta_a:
            lo = mid
        else:
            hi = mid
    right = lo
    if d > 2:
        # beyond this point the inverted mu would go negative
        right = min(right, math.sqrt(eta_a / (d - 2)))
    return left, right


def optimize_eta_b(
    d: int, eta_a: float, grid: int = 1000, tol: float = 1e-12
) -> tuple[float, float, float]:
    """Maximize eta_B at fixed eta_A; returns (nu_star, xi_star, eta_b_star).

    Deterministic: a bracketing grid over the feasible nu interval picks the
    best candidate, then golden-section refinement tightens nu to ``tol``.
    """
    if not 0.0 < eta_a <= 1.0:
        raise ValueError(f"eta_a must lie in (0, 1], got {eta_a}")
    left, right = _feasible_nu_interval(d, eta_a)
    nus = np.linspace(left, right, grid)
    peak = 1.0 / math.sqrt(d)
    if left <= peak <= right:  # the only feasible point when eta_a = 1
        nus = np.sort(np.append(nus, peak))
    vals = _eta_b_of_nu(d, eta_a, nus)
    if not np.any(np.isfinite(vals)):
        raise ValueError(f"no machine reaches eta_A = {eta_a} at d = {d}")
    i = int(np.nanargmax(vals))
    lo = nus[i - 1] if i > 0 else nus[i]
    hi = nus[i + 1] if i < nus.size - 1 else nus[i]

    def objective(nu):
        v = _eta_b_of_nu(d, eta_a, np.array([nu]))[0]
        return v if np.isfinite(v) else -np.inf

    nu_star, eta_b = _golden_max(objective, float(lo), float(hi), tol)
    if not np.isfinite(eta_b) or eta_b < vals[i]:
        nu_star, eta_b = float(nus[i]), float(vals[i])
    mu = (eta_a - (d - 2) * nu_star**2) / (2.0 * nu_star)
    xi_star = math.sqrt(max(0.0, (1.0 - mu**2) / (d - 1) - nu_star**2))
    return float(nu_star), float(xi_star), float(eta_b)


def symmetric_nu_opt(d: int) -> float:
    """Closed-form nu of the best symmetric machine (nu = xi).

    nu = (1/2) sqrt((P + (d-2) sqrt(P)) / (d^3 + 3 d^2 - 8 d + 4)) with
    P = d^2 + 4d - 4; the denominator equals (d-1) P.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    p = d * d + 4.0 * d - 4.0
    return 0.5 * math.sqrt((p + (d - 2.0) * math.sqrt(p)) / ((d - 1.0) * p))


def symmetric_fidelity(d: int) -> float:
    """Best symmetric phase-covariant fidelity: 1/d + (d-2+sqrt(d^2+4d-4))/(4d)."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    return 1.0 / d + (d - 2.0 + math.sqrt(d * d + 4.0 * d - 4.0)) / (4.0 * d)


def qubit_optimal(eta_a: float) -> tuple[float, float, float]:
    """d = 2 frontier point in closed form: (nu, xi, eta_B).

    nu = eta_A/sqrt(2), eta_B = sqrt(1 - eta_A^2), xi = eta_B/sqrt(2);
    every such machine has nu^2 + xi^2 = 1/2 and mu = 1/sqrt(2).
    """
    if not 0.0 <= eta_a <= 1.0:
        raise ValueError(f"eta_a must lie in [0, 1], got {eta_a}")
    eta_b = math.sqrt(max(0.0, 1.0 - eta_a**2))
    return eta_a / math.sqrt(2.0), eta_b / math.sqrt(2.0), eta_b
