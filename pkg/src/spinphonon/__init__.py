"""Electrically tunable spin-phonon coupling on a suspended nanotube, and
open-system simulation of spin <-> phonon quantum state transfer."""

__version__ = "0.1.0"

from .backends import available_backends, default_backend
from .coupling import (
    BeamMode,
    CouplingParams,
    DotProfile,
    avg_slope,
    coupling_strength,
    density_profile,
    mode_shape,
    mode_slope,
    shifted_center,
    sweet_spot_field,
)
from .errors import (
    ConfigError,
    DomainError,
    IntegrationError,
    NumericalError,
    QuadratureError,
    SpinPhononError,
)
from .experiments import (
    CouplingCurveSpec,
    SweepSpec,
    TransferSpec,
    default_sweep_spec,
    default_transfer_spec,
    run_coupling_curve,
    run_error_sweep,
    run_state_transfer,
)
from .lindblad import (
    IntegrationSpec,
    LindbladModel,
    dissipator,
    evolve,
    fidelity,
    master_rhs,
    partial_trace_phonon,
    partial_trace_spin,
    standard_channels,
    thermal_occupation,
    validate_density_matrix,
)
from .operators import (
    HilbertSpec,
    annihilation,
    basis_density,
    basis_ket,
    hamiltonian_full,
    hamiltonian_jc,
    spin_ops,
    tensor,
)
from .config import load_config

__all__ = [
    "__version__",
    "available_backends",
    "default_backend",
    "BeamMode",
    "DotProfile",
    "CouplingParams",
    "mode_shape",
    "mode_slope",
    "density_profile",
    "shifted_center",
    "avg_slope",
    "coupling_strength",
    "sweet_spot_field",
    "HilbertSpec",
    "annihilation",
    "spin_ops",
    "tensor",
    "hamiltonian_full",
    "hamiltonian_jc",
    "basis_ket",
    "basis_density",
    "LindbladModel",
    "IntegrationSpec",
    "standard_channels",
    "thermal_occupation",
    "dissipator",
    "master_rhs",
    "evolve",
    "fidelity",
    "partial_trace_phonon",
    "partial_trace_spin",
    "validate_density_matrix",
    "TransferSpec",
    "SweepSpec",
    "CouplingCurveSpec",
    "default_transfer_spec",
    "default_sweep_spec",
    "run_state_transfer",
    "run_error_sweep",
    "run_coupling_curve",
    "load_config",
    "SpinPhononError",
    "DomainError",
    "QuadratureError",
    "NumericalError",
    "IntegrationError",
    "ConfigError",
]
