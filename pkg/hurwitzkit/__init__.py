from .hermite_biehler import (
    ConditionBWitness,
    InterlacingReport,
    RootIsolation,
    SubstitutedInterlacing,
    combination_real_rooted,
    condition_b,
    condition_b_literal,
    count_real_roots,
    interlacing_check,
    isolate_real_roots,
    phase_sign,
    real_root_count,
    refine_root,
    sign_variations,
    sturm_sequence,
)
from .hurwitz import (
    MinorSequence,
    RationalMatrix,
    TNNResult,
    all_minors_nonnegative,
    as_rational_matrix,
    determinant,
    factorization_product,
    hurwitz_truncation,
    j_truncation,
    leading_principal_minors,
    minor_criterion,
    verify_full_factorization,
    verify_step_factorization,
)
from .load_data import (
    degenerate_corpus,
    worked_examples,
)
from .oracle import (
    OracleVerdict,
    RootFindingError,
    RootSet,
    all_roots,
    gen_random,
    gen_stable,
    oracle_stability,
    poly_from_roots,
)
from .poly import (
    EvenOddPair,
    Polynomial,
    cauchy_bound,
    derivative,
    divide_by_x,
    eval_rational,
    even_odd_split,
    monic,
    multiply_by_x,
    poly_add,
    poly_divmod,
    poly_gcd,
    poly_new,
    poly_scale,
    recombine,
    square_free_decomposition,
    square_free_part,
    sub_scaled,
    substitute_neg_x_squared,
)
from .report import (
    Report,
    analyze,
    crosscheck,
    summarize_crosscheck,
    write_crosscheck,
)
from .routh import (
    DegenerateStepError,
    FailureReason,
    Method,
    RouthChain,
    RouthChainError,
    RouthFailure,
    StabilityReport,
    Verdict,
    is_stable_routh,
    normalize_sign,
    routh_chain,
    routh_sequence,
    routh_step,
    terminal_matches_leading,
)
