"""Choice-based rough approximations over finite tolerance spaces."""

from .approx import (
    ApproximationProfile,
    classical_lower,
    classical_upper,
    coherence_audit,
    lambda_select,
    lateral_lower,
    lateral_upper,
    lower_zero,
    maximal_disjoint_subcollections,
    minimal_disjoint_covers,
    prec,
    primitive_lower,
    primitive_upper,
    profile,
    star_lower,
    star_upper,
    theta_lower,
    theta_upper,
    upper_zero,
)
from .claims import (
    SweepSpec,
    counterexample_search,
    registry_selftest,
    replay,
    run_aer_suite,
    run_claim,
)
from .quotient import QuotientAlgebra, build_quotient, well_definedness_audit
from .reports import AuditVerdict, encode_space, space_digest
from .spaces import (
    BlockFamily,
    ToleranceSpace,
    blocks_meeting,
    blocks_within,
    build_space,
    dom,
    enumerate_blocks,
    neighborhood,
    theta0,
)
from .tarski import (
    DeltaFamily,
    TarskiStructure,
    build_delta,
    build_structure,
    closure_audit,
    maximal_filters,
    sigma_classify_delta,
)

__version__ = "0.1.0"
