"""Row builders and deterministic renderers behind the command-line tools.

Every builder returns (header, rows) with plain Python scalars; rows are
sorted by the sweep variable so concurrent evaluation could never change a
file.  Floats render with 12 significant digits and LF line endings.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .cloner import (
    clone,
    haar_random_input,
    orbit_to_input,
    OrbitState,
    phase_covariant_params,
    tradeoff_residual,
    universal_params,
)
from .entangle import tangle_pure3
from .pcopt import optimize_eta_b
from .qlinalg import hermitian_eigenvalues, partial_trace, partial_transpose

UNIVERSAL_HEADER = ("phi_mix", "F_A", "F_B", "eta_A", "eta_B", "ellipse_residual")
PC_HEADER = ("eta_A", "nu_star", "xi_star", "eta_B_star")
ENTANGLEMENT_HEADER = (
    "nu",
    "xi",
    "theta",
    "min_ppt_eig",
    "negativity_AB",
    "negativity_AX",
    "tau",
    "class",
)

# always-included general-grid point: the symmetric universal machine
UNIVERSAL_SYMMETRIC_NU = 1.0 / math.sqrt(6.0)


def universal_sweep_rows(d: int, grid: int, seed: int):
    """Quality figures of the universal family over a mix-angle grid.

    The probe input is one seeded Haar-random state; universality makes the
    figures input-independent, which the residual column then witnesses.
    """
    state = haar_random_input(d, seed)
    rows = []
    for phi in np.linspace(0.0, math.pi / 2, grid):
        out = clone(universal_params(d, float(phi)), state)
        rows.append(
            (
                float(phi),
                out.f_a,
                out.f_b,
                out.eta_a,
                out.eta_b,
                tradeoff_residual(out.f_a, out.f_b, d),
            )
        )
    return UNIVERSAL_HEADER, rows


def pc_sweep_rows(d: int, grid: int):
    """Optimal phase-covariant frontier over an eta_A grid on (0, 1]."""
    rows = []
    for eta_a in np.linspace(1.0 / grid, 1.0, grid):
        nu, xi, eta_b = optimize_eta_b(d, float(eta_a))
        rows.append((float(eta_a), nu, xi, eta_b))
    return PC_HEADER, rows


def optimize_rows(d: int, eta_a: float):
    """Single frontier point as a one-row table."""
    nu, xi, eta_b = optimize_eta_b(d, eta_a)
    return PC_HEADER, [(eta_a, nu, xi, eta_b)]


def _entanglement_row(nu: float, xi: float, theta: float):
    out = clone(
        phase_covariant_params(2, nu, xi), orbit_to_input(OrbitState(theta, 0.0))
    )
    pt_eigs = hermitian_eigenvalues(partial_transpose(out.rho_ab, (2, 2), 0))
    rho = np.outer(out.psi_abx, out.psi_abx.conj())
    rho_ax = partial_trace(rho, (2, 2, 2), {0, 2})
    ax_eigs = hermitian_eigenvalues(partial_transpose(rho_ax, (2, 2), 0))
    rep = tangle_pure3(out.psi_abx)
    return (
        nu,
        xi,
        theta,
        float(pt_eigs[0]),
        2.0 * max(0.0, -float(pt_eigs[0])),
        2.0 * max(0.0, -float(ax_eigs[0])),
        rep.tau_abx,
        rep.classification,
    )


def entanglement_rows(grid: int, theta: float):
    """Entanglement survey: the optimal family first, then a general
    machine grid (which always includes the symmetric universal point)."""
    rows = []
    family = np.sort(np.append(np.linspace(0.0, 1.0 / math.sqrt(2.0), grid), 0.5))
    for nu in family:
        xi = math.sqrt(max(0.0, 0.5 - float(nu) ** 2))
        rows.append(_entanglement_row(float(nu), xi, theta))
    general = {(UNIVERSAL_SYMMETRIC_NU, UNIVERSAL_SYMMETRIC_NU)}
    for nu in np.linspace(0.0, 1.0, grid):
        for xi in np.linspace(0.0, 1.0, grid):
            if float(nu) ** 2 + float(xi) ** 2 <= 1.0:
                general.add((float(nu), float(xi)))
    for nu, xi in sorted(general):
        rows.append(_entanglement_row(nu, xi, theta))
    return ENTANGLEMENT_HEADER, rows


def _format_value(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def render_csv(header, rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_format_value(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def render_json_table(header, rows) -> str:
    payload = {
        "schema_version": 1,
        "columns": list(header),
        "rows": [list(row) for row in rows],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def render_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
