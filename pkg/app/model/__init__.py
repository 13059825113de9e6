from model.fields import (  # noqa: F401
    ConstantField,
    ExtendedRegularizedField,
    HarmonicField,
    LinearField,
    RegularizedField,
    StandardField,
    VectorField,
)
from model.params import EARTH_MOON, MassParams, check_mass_convention  # noqa: F401
from model.pcr3bp import (  # noqa: F401
    Frame,
    PhaseState,
    collision_residual,
    dgamma_dh,
    gradient_reg,
    hamiltonian_reg,
    hamiltonian_std,
    lc_forward,
    lc_preimages,
    symmetry_S,
    symplectic_J,
    time_rescale_rate,
    vector_field_reg,
    vector_field_std,
)
