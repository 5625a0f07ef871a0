"""Pricing DC cone calculus and deterministic coding games."""

from ._core import (  # noqa: F401
    Alphabet,
    BipartiteGraph,
    CodingScheme,
    DCCone,
    DMCKernel,
    DualityViolation,
    GameChannel,
    InputError,
    MailResult,
    ResourceLimit,
    SolverFailure,
    SourceStrategy,
    SynthesisError,
    TeamStrategy,
    binary_entropy,
    bsc_channel,
    bsc_feedback_channel,
    bsc_kernel,
    channel_from_dmc,
    channel_from_dmc_feedback,
    channel_from_graph,
    channel_degraded,
    channel_from_graph_feedback,
    check_zero_error_code,
    coding_feasible_by_degradedness,
    contains_cone,
    cycle_confusability_graph,
    deterministically_degraded,
    disjoint_sum,
    dual,
    dual_channel,
    entropy_generators,
    entropy_halfspace,
    equals_cone,
    erasure_channel,
    info_capacity,
    intersect,
    is_informative,
    mail_insurance,
    member_product,
    member_semidirect,
    minplus,
    n_use_cone,
    prune,
    pushforward,
    requirement_cone,
    requirement_value,
    robustify,
    sanov_scheme,
    semidirect,
    synthesize_graph_strategy,
    synthesize_source_strategy,
    synthesize_strategy,
    typewriter_graph,
    unite,
    verify_game,
    verify_mail,
    verify_source_game,
    worst_case_error,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
