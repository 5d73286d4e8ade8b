"""Exact invariants and statistical verification for diagonal torus actions.

The package decides admissibility of integer weight matrices with dual
re-verifiable certificates, enumerates weight spaces, computes resonance and
quasi-resonance degree bounds for origin-fixing biholomorphisms, checks
polynomial maps against those bounds with exact Gaussian-rational arithmetic,
and verifies the underlying Hilbert-space identities by reproducible Monte
Carlo integration.  An HTTP service and a CLI wrap the same functions.
"""

__version__ = "0.1.0"

from .errors import (
    DegenerateDomainError,
    DimensionMismatchError,
    InadmissibleActionError,
    InvalidInputError,
    MissingInverseError,
    ResonaxError,
    SizeLimitError,
)
from .gaussian import GaussianRational
from .weights import (
    AdmissibilityCertificate,
    WeightMatrix,
    WeightSpace,
    check_admissible,
    degree_extremes,
    enumerate_weight_space,
    positive_functional,
    validate_weight_matrix,
)
from .resonance import (
    QuasiResonanceReport,
    ResonanceReport,
    exponents_up_to_degree,
    is_cartan_linear,
    nonneg_weight_bound,
    quasi_circular_bound,
    quasi_resonance,
    resonance,
)
from .poly import Polynomial, PolyMap, jacobian_det, jacobian_matrix, project_character, realized_characters
from .compliance import ComplianceReport, check_compliance
from .domains import (
    DomainSpec,
    MapImage,
    Polydisc,
    UnitBall,
    WeightedEllipsoid,
    domain_from_json,
    shear_pair,
)
from .mc import (
    MCEstimate,
    ball_monomial_norm,
    ball_norm_coefficient,
    check_change_of_variables,
    check_invariance,
    check_orthogonality,
    mc_inner_product,
    polydisc_monomial_norm,
    sample_domain,
)

__all__ = [
    "__version__",
    "ResonaxError",
    "InvalidInputError",
    "DimensionMismatchError",
    "InadmissibleActionError",
    "SizeLimitError",
    "MissingInverseError",
    "DegenerateDomainError",
    "GaussianRational",
    "WeightMatrix",
    "AdmissibilityCertificate",
    "WeightSpace",
    "check_admissible",
    "positive_functional",
    "validate_weight_matrix",
    "enumerate_weight_space",
    "degree_extremes",
    "exponents_up_to_degree",
    "ResonanceReport",
    "QuasiResonanceReport",
    "resonance",
    "quasi_resonance",
    "is_cartan_linear",
    "quasi_circular_bound",
    "nonneg_weight_bound",
    "Polynomial",
    "PolyMap",
    "jacobian_matrix",
    "jacobian_det",
    "project_character",
    "realized_characters",
    "ComplianceReport",
    "check_compliance",
    "DomainSpec",
    "UnitBall",
    "Polydisc",
    "WeightedEllipsoid",
    "MapImage",
    "domain_from_json",
    "shear_pair",
    "MCEstimate",
    "mc_inner_product",
    "sample_domain",
    "check_orthogonality",
    "check_invariance",
    "check_change_of_variables",
    "ball_norm_coefficient",
    "ball_monomial_norm",
    "polydisc_monomial_norm",
]
