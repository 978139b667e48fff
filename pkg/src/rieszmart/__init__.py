"""Vector-lattice martingale toolkit on finite weighted sample spaces.

Finite-dimensional Riesz spaces with componentwise order, partition-induced
conditional expectation operators, band projections, martingale machinery,
randomized inequality verification, and desk-scale limit-theorem experiments,
all reproducible from a single seed.
"""

from .bands import (
    BandProjection,
    apply_sup_formula_oracle,
    band_projection,
    check_exclusion_inequality,
    check_inf_inequality,
    check_sup_identity,
    compose_all,
)
from .conditional import (
    CompatibleTriple,
    ConditionalExpectationOp,
    Filtration,
    Partition,
    lp_norm,
    make_filtration,
    verify_axioms,
)
from .errors import (
    BadExponent,
    BadWeights,
    ExponentMismatch,
    GNotInRange,
    Incompatible,
    NegativeArgument,
    NegativeBase,
    NegativeGenerator,
    NegativeProcess,
    NonpositiveExponent,
    NotAdapted,
    NotDifferenceSequence,
    NotRefining,
    NotSubmartingale,
    NotSummable,
    ParameterViolation,
    RieszmartError,
    SpaceMismatch,
)
from .inequalities import (
    burkholder_ratio,
    clarkson,
    doob_maximal,
    holder_sums,
    hrc_maximal,
    jensen_power,
    telescoping_bound,
)
from .lattice import (
    DEFAULT_TOL,
    LatticeElement,
    MarginCheck,
    SampleSpace,
    Tolerance,
    inf_many,
    leq_with_tolerance,
    multiply,
    power,
    sup_many,
)
from .limits import (
    DEFAULT_DECAY_EPSILON,
    DEFAULT_STOCHASTIC_EPSILON,
    SERIES_TAIL_REL,
    WeightSequence,
    cesaro_weighted_mean,
    decay_report,
    kronecker_transform,
    series_report,
    slln_an_equals_n,
    slln_p_gt_2,
    slln_p_le_2,
    submartingale_convergence_experiment,
)
from .processes import (
    MARTINGALE,
    NONE,
    SUBMARTINGALE,
    SUPERMARTINGALE,
    GeneratorConfig,
    ProcessSequence,
    classify,
    default_filtration,
    generate_mds,
    generate_submartingale,
    increments,
    is_adapted,
    is_difference_sequence,
    partial_sums,
    positive_part_process,
    require_difference_sequence,
    square_function,
)
from .reports import (
    CheckSummary,
    DecaySequenceReport,
    ExperimentReport,
    Failure,
    SeriesReport,
    VerificationReport,
    checkpoint_schedule,
    dump_json,
    strip_elapsed,
    write_json_atomic,
    write_text_atomic,
)
from .rng import SplitMix64, derive_seed, mix64, substream
from .suites import SUITES, STANDARD_SEED, RunConfig, run_all, run_suite

__version__ = "0.1.0"
