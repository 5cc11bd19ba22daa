"""laxcoh: exact Lax operator algebras on the sphere and the classification
of their almost-graded central extensions, verified at desk scale.

Everything is computed over the Gaussian rationals; no floating point is
involved anywhere in the mathematics.
"""

from .scalars import I, ONE, ZERO, Rational, Scalar, parse_scalar, rat
from .linalg import (
    ExactMatrix,
    InfeasibleError,
    SizeMismatchError,
    commutator,
    nullspace,
    rref,
    solve_affine,
)
from .ratfun import INFINITY, MarkedSphere, Poly, RatFun
from .matfun import (
    Cycle,
    LaurentJet,
    MatRatFun,
    integrate_cycle,
    residue_theorem_check,
)
from .laxalg import (
    ConstraintCertificate,
    Flavor,
    GradedBasis,
    LaxClosureError,
    LaxElement,
    MembershipError,
    NonGenericError,
    TyurinData,
    WindowExceededError,
    bracket,
    build_homogeneous_space,
    check_membership,
    decompose,
    element_for_leading,
    grading_constants,
    homogeneous_space_raw,
    split_gl,
    weak_perfect_decompose,
)
from .connection import (
    ConnectionFormError,
    ConnectionForm,
    KNFunction,
    KNVectorField,
    build_connection,
    check_connection,
    covariant_derivative,
    d1_bracket,
    d1g_bracket,
    distinct_connection,
    kn_function,
    kn_vector_field,
    vf_apply,
    vf_bracket,
)
from .cocycle import (
    CoboundaryCocycle,
    Cocycle,
    CocycleTable,
    Gamma1,
    Gamma2,
    LinearCombinationCocycle,
    LinearFunctional,
    PsiForm,
    TableCocycle,
    central_extension_bracket,
    check_cocycle_identity,
    connection_independence_witness,
    extend_to_dg_defects,
    gl_cross_vanishing,
    invariance_defect,
    level_law_report,
    locality_bounds,
    materialize,
    nonbound_witness,
    psi_form,
    weak_point_regularity,
)
from .chevalley import (
    ChevalleyBasis,
    NormalizationState,
    RootSystem,
    lift_basis,
    normalize,
    normalized_coboundary_check,
    root_system,
    uniqueness_driver,
    verify_recursions,
)
from .config import ConfigError, InstanceConfig
from .report import CheckResult, Report, TOOL_VERSION
from .suites import SUITES, run_suite

__version__ = TOOL_VERSION
