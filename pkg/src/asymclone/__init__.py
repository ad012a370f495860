"""Asymmetric quantum cloning machines: quality trade-offs, the
no-signaling quality bound, and entanglement of the outputs."""

from .cloner import (
    ClonerOutput,
    ClonerParams,
    InputState,
    OrbitState,
    build_isometry,
    clone,
    equatorial_state,
    fidelity,
    orbit_to_input,
    phase_covariant_params,
    shrinking_factor,
    tradeoff_residual,
    universal_params,
)
from .entangle import (
    clone_ppt_spectrum,
    concurrence,
    negativity,
    optimal_ppt_spectrum,
    ppt_report,
    tangle_closed_form,
    tangle_general,
    tangle_pure3,
)
from .nosignal import (
    CorrelationTensor,
    assemble,
    extract_tensor,
    max_quality_search,
    no_signaling_residual,
    optimal_tensor,
    psd_residuals,
    rotate_tensor,
)
from .pcopt import (
    PcPoint,
    eta_b_given,
    optimize_eta_b,
    pc_point,
    pc_shrinking,
    qubit_optimal,
    symmetric_fidelity,
    symmetric_nu_opt,
)

__version__ = "0.1.0"
