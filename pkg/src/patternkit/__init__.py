"""Pattern calculus for Ramsey-like pair colorings.

Exact algebra on finite edge-coloring patterns (join, decomposition,
irreducibility, divergence, merging), sub-pattern classification verdicts,
finite-horizon priority-construction simulators, and finite-bound forcing
question evaluators, with brute-force oracles throughout.
"""

from .core import (
    Embedding,
    FiniteColoring,
    PartialColoring,
    Pattern,
    PatternError,
    StableColoring,
    avoids,
    coloring_from_function,
    constant_coloring,
    dual,
    embeddings,
    find_realizer,
    flip,
    format_pattern,
    is_subpattern,
    minus,
    parse_pattern,
    pattern_from_colors,
    realizes,
    restrict,
    strongly_appears,
    strongly_realizes,
)
from .algebra import (
    ClassificationFlags,
    classify,
    decompositions,
    is_divergent,
    is_i_merging,
    is_irreducible,
    is_merging,
    join,
)
from .classifier import (
    Census,
    CensusRow,
    ClassificationReport,
    census,
    enumerate_patterns,
    preserves_omega_2dim,
    preserves_omega_hyp,
    preserves_one_2dim,
    report,
    subpatterns,
)
from .stabilize import (
    BinaryTree,
    Condition,
    GreedySplit,
    WindowExhausted,
    extend_condition,
    fg_avoids,
    find_stabilizing_tail,
    full_binary_tree,
    greedy_avoid_join,
    homogeneous_for_tree,
    is_valid_condition,
    max_avoiding_subset,
    stabilizes,
    tree_to_coloring,
)
from .constructions import (
    ApproxOracle,
    BiArrayFunctional,
    ConstructionTrace,
    PrefixFunctional,
    TraceEvent,
    VerifyReport,
    age,
    build_dnc_coloring,
    build_measure_coloring,
    build_stable_2dim_coloring,
    cantor_pair,
    cantor_unpair,
    cover_measure,
    h_bound,
    index_pattern,
    joint_meeting_measure,
    oldest_blocks,
    pattern_index,
    requires_attention_measure,
    verify_trace,
)
from .forcing import (
    BoundedPredicate,
    catalogue_predicate,
    eval_question_disjunctive,
    eval_question_i,
    eval_question_omega,
    least_bound,
)
from .lemmas import SUITES, SuiteResult, run_suites

__version__ = "0.1.0"
