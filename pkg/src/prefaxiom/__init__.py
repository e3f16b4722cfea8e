"""Preference aggregation under ordinal consistency properties.

Exact pairwise tallies and voting rules, a weighted pairwise-logistic reward
solver with a rational score shortcut, group preference matching
distributions, and mechanical axiom checkers with counterexample search.
"""

from .axioms import (
    AxiomReport,
    Assumption1,
    ExhaustiveComplete,
    ORDINAL_AXIOMS,
    PROBABILISTIC_AXIOMS,
    RULE_NAMES,
    RandomComplete,
    RuleKind,
    RuleUnderTest,
    SearchOutcome,
    check_condorcet,
    check_group_preference_matching,
    check_majority,
    check_pairwise_majority,
    check_pareto,
    check_preference_equivalence,
    check_preference_matching,
    counterexample_search,
    equally_preferred,
    iter_profiles,
    make_rule,
    profiles_equivalent,
    run_check,
    space_size,
)
from .distributions import ResponseDistribution
from .errors import (
    BlockNotEmbeddableError,
    DimensionMismatchError,
    DisconnectedGraphError,
    IncompleteRelationError,
    NotCompleteProfileError,
    NotConstantTotalError,
    NotConvergedError,
    PrefaxiomError,
    SchemaError,
    SpaceTooLargeError,
    TiesNotAllowedError,
    UndefinedPairError,
    ZeroProbabilityError,
)
from .gpmd import (
    EpsilonPolicy,
    GpmPipelineResult,
    Partition,
    block_embeddable,
    block_pm_distribution,
    enumerate_embeddable_partitions,
    gpm_pipeline,
    gpmd,
    gpmd_via_partition,
    limit_embeddable,
    partition_discrepancy,
    pm_geometric,
)
from .profiles import (
    CandidateSet,
    Comparison,
    FromLatentRanking,
    MajorityRelation,
    Outcome,
    PairwiseTally,
    PreferenceProfile,
    ProfileKind,
    RandomTournament,
    Ranking,
    TiePolicy,
    Voter,
    apply_permutation,
    complete_profile,
    default_labels,
    generalized_profile,
    generate_assumption1,
    generate_complete,
    has_condorcet_cycle,
    is_transitive,
    majority_relation,
    parse_profile,
    profile_from_pairs,
    profiles_equal_as_multisets,
    serialize_profile,
    tally,
    tally_from_props,
)
from .reward import (
    RewardVector,
    SolverConfig,
    SolverMethod,
    SolverStatus,
    StatusKind,
    WeightMatrix,
    bt_embeddable,
    embedding_residual,
    gradient,
    loss,
    minimizer_exists,
    rank_by_scores,
    scores,
    softmax,
    solve_mle,
    weights_copeland,
    weights_gpm,
    weights_standard,
)
from .rules import (
    ScoreVector,
    TieBreak,
    borda_scores,
    condorcet_winner,
    copeland_scores,
    first_place_shares,
    majority_winner,
    pm_consistent_ranking,
    ranking_from_scores,
)

__version__ = "0.1.0"
