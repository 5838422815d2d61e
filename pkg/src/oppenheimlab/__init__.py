"""Numerical laboratory for series-expansion digit laws, exact weak laws,
and index-1 stable limit laws."""

__version__ = "0.1.0"

from .errors import (
    AccuracyError,
    ConditionCheckError,
    DomainError,
    PoleError,
    SchemeError,
)
from .specfun import (
    DEFAULT_SPEC,
    EULER_GAMMA,
    QuadratureSpec,
    c2_discrete,
    cin,
    cosine_integral,
    gauss_2f1_unit,
    lemma_a1,
)
from .distributions import (
    DistributionFamily,
    FamilyConstants,
    char_components,
    condition_i_profile,
    condition_ii_profile,
    discrete_beta_family,
    discrete_beta_pmf,
    family_constants,
    family_from_config,
    mobius_clamped_family,
    mobius_remark2_family,
    proposition_2_4_profile,
    uniform_family,
)
from .expansions import (
    DigitSequence,
    OppenheimScheme,
    continued_fraction_digits,
    engel_digits,
    engel_scheme,
    extract_digits,
    luroth_digits,
    ratio_path,
    ratios,
    sample_oppenheim,
    sylvester_digits,
    sylvester_scheme,
)
from .weights import (
    WeightScheme,
    cesaro_scheme,
    check_theorem_3_2_conditions,
    check_theorem_4_1_conditions,
    ell_profile,
    iterated_mean,
    iterated_scheme,
    kappa,
    max_weight,
    power_alpha_scheme,
    weights_row,
)
from .limitlaw import (
    StableLimitLaw,
    cdf,
    cdf_many,
    char_fn,
    ks_distance,
    levy_cf_law,
    sample,
    sample_many,
)
from .experiments import (
    ExperimentConfig,
    RunRecord,
    centering_constants,
    char_distance_check,
    distributional_run,
    exact_weak_law_run,
    gamma_from_harmonic,
    load_record,
    replication_rng,
    save_record,
    v_samples,
)
