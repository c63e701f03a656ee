"""Exact arithmetic for Jacobi forms with integral Fourier coefficients."""

from .errors import (
    JacringError,
    NotDivisible,
    NonIntegralInput,
    PrecisionExceeded,
    IntegralityViolation,
    NonUnitConstantTerm,
    UnsupportedCharacter,
    StructureViolation,
    NotWeak,
    NotHomogeneous,
    NotHolomorphic,
    InsufficientData,
    NonIntegral,
    NotInRing,
    NotRealizable,
)
from .series import ScaledSeries
from .forms import JacobiForm, generator, hecke_U, hecke_V, jacobi_eisenstein, theta_E8_specialize
from .polynomial import GeneratorPolynomial, RINGS
from .structure import (
    Certificate,
    certify_integral,
    decompose_weak0,
    decompose_weak_even,
    decompose_wh0,
    psi_basis,
)
from .relations import RELATIONS, verify_relations
from .siegel import FourierJacobiExpansion, gritsenko_lift, siegel_certify_integral
from .borcherds import (
    SingularData,
    borcherds_weight,
    psi_named,
    q0_identity_residual,
    realize_singular,
    singular_part,
)

__version__ = "0.1.0"
