"""Spectral statistics laboratory for Wigner random matrices.

Core layers: entry atoms and ensemble specs, semicircle reference
quantities, spectra and counting statistics, resolvent identities, and a
reproducible Monte Carlo experiment harness with a CLI front end.
"""

from .atoms import (
    AtomDistribution,
    Discrete,
    Gaussian,
    Rademacher,
    Zero,
    atom_from_json,
    atom_to_json,
    match_order,
    moment_of,
)
from .ensembles import (
    EnsembleSpec,
    HermitianMatrix,
    TailCheckReport,
    bernoulli_complex,
    bernoulli_symmetric,
    builtin_ensemble,
    check_condition_c0,
    ensemble_match_order_vs_gue,
    goe,
    gue,
    matrix_to_csv,
    normalize,
    sample_wigner,
)
from .errors import (
    CacheCorruptionError,
    ConfigNotFoundError,
    DimensionMismatchError,
    EnvironmentIOError,
    IllConditionedEnergyError,
    InvalidConfigError,
    InvalidDimensionError,
    InvalidIntervalError,
    InvalidStateError,
    NumericalFailureError,
    OrthonormalityError,
    SingularInputError,
    UnsupportedOrderError,
    UsageError,
    WignerLabError,
)
from .resolvent import (
    ElementaryMatrix,
    InterlacingResult,
    LocalLawGap,
    PerturbationCheck,
    Resolvent,
    check_interlacing,
    coeff_norm,
    local_law_residual,
    minor,
    perturb_series,
    quadratic_form_stat,
    resolvent,
    schur_diagonal,
    schur_off_diagonal,
    subspace_projection_norm,
)
from .seeding import (
    ROLE_PROBE,
    ROLE_RETRY,
    ROLE_TRIAL,
    SeedStream,
    compose_stream_index,
)
from .semicircle import (
    ClassicalLocationTable,
    ComplexEnergy,
    classical_locations,
    rho_sc,
    s_sc,
    self_consistent_residual,
    semicircle_cdf,
)
from .spectral import (
    Interval,
    Spectrum,
    StatValue,
    count_from_stieltjes,
    count_in_interval,
    crude_count_ratio,
    edge_statistic,
    edge_statistic_min,
    eigenvalues,
    rigidity_profile,
    semicircle_deviation,
    spectrum_from_csv,
    spectrum_to_csv,
    stat_a,
    stat_b,
    stieltjes_empirical,
)

__version__ = "0.1.0"
