"""Light-induced effective Hamiltonians for the nuclear-spin ground manifold.

Closed-form scalar/vector/tensor light-shift coefficients for alkaline-earth-
like atoms driven near the narrow intercombination line, an independent
Clebsch-Gordan summation oracle, effective-Hamiltonian assembly for concrete
laser geometries, and a bichromatic tensor-shift cancellation solver.
"""

from .spin_algebra import (
    DEFAULT_MAX_DIMENSION,
    HalfInteger,
    SpinOperators,
    clebsch_gordan,
    make_spin_operators,
)
from .hyperfine import (
    AtomParams,
    DerivedHfConstants,
    HfEnergies,
    derive_constants,
    hf_energies,
    hf_hamiltonian_matrix,
)
from .shift_coefficients import (
    POLE_EPSILON,
    CoeffForm,
    ComplexDetuning,
    PolarizabilitySet,
    PoleProximityError,
    a_coefficients,
    asymptotic_b,
    b_coefficients,
    im_b_first_order,
    loss_ratio_limit,
    offpole_grid,
    physical_b,
    to_b_form,
)
from .cg_oracle import (
    DTensor,
    dipole_matrix_elements,
    extract_b_from_d,
    oracle_d_tensor,
    oracle_vs_analytic_deviation,
)
from .field_configs import (
    CounterPropComponents,
    CounterPropCross,
    EffectiveHamiltonian,
    FieldConfig,
    HeffParts,
    HeffUnits,
    PerpendicularSoc,
    RawVector,
    SingleCircular,
    SingleLinear,
    assemble_heff,
    counterprop_components,
    field_at,
    ixy_operator,
    rotation_about_z,
    soc_components,
    soc_rotating_frame,
    tuned_delta_omega,
)
from .bichromatic import (
    SPEED_OF_LIGHT,
    BichromaticSpec,
    CancellationInfeasibleError,
    MeritRow,
    combined_coefficients,
    local_ratio_optima,
    merit_scan,
    rephasing_length,
    solve_tensor_cancellation,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_MAX_DIMENSION",
    "HalfInteger",
    "SpinOperators",
    "clebsch_gordan",
    "make_spin_operators",
    "AtomParams",
    "DerivedHfConstants",
    "HfEnergies",
    "derive_constants",
    "hf_energies",
    "hf_hamiltonian_matrix",
    "POLE_EPSILON",
    "CoeffForm",
    "ComplexDetuning",
    "PolarizabilitySet",
    "PoleProximityError",
    "a_coefficients",
    "asymptotic_b",
    "b_coefficients",
    "im_b_first_order",
    "loss_ratio_limit",
    "offpole_grid",
    "physical_b",
    "to_b_form",
    "DTensor",
    "dipole_matrix_elements",
    "extract_b_from_d",
    "oracle_d_tensor",
    "oracle_vs_analytic_deviation",
    "CounterPropComponents",
    "CounterPropCross",
    "EffectiveHamiltonian",
    "FieldConfig",
    "HeffParts",
    "HeffUnits",
    "PerpendicularSoc",
    "RawVector",
    "SingleCircular",
    "SingleLinear",
    "assemble_heff",
    "counterprop_components",
    "field_at",
    "ixy_operator",
    "rotation_about_z",
    "soc_components",
    "soc_rotating_frame",
    "tuned_delta_omega",
    "SPEED_OF_LIGHT",
    "BichromaticSpec",
    "CancellationInfeasibleError",
    "MeritRow",
    "combined_coefficients",
    "local_ratio_optima",
    "merit_scan",
    "rephasing_length",
    "solve_tensor_cancellation",
]
