"""Answer-set toolkit: well-founded models, answer sets, justification graphs,
on-line justification snapshots, and an interactive debugger service."""

from .program import (
    Atom,
    GroundingError,
    Interpretation,
    Literal,
    ParseError,
    PInterpretation,
    Program,
    Rule,
    ground,
    is_supported,
    load_program,
    nant,
    parse_program,
    render,
    satisfies,
)
from .semantics import (
    KUPair,
    NormalFormTrace,
    brute_force_answer_sets,
    is_answer_set,
    least_model,
    normal_form,
    reduct,
    tpv,
    well_founded,
)
from .egraph import (
    ASSUME_NODE,
    BOT_NODE,
    EGraph,
    Edge,
    ENode,
    Marker,
    NodeKind,
    TOP_NODE,
    egraph_to_dot,
    egraph_to_json,
    has_negative_cycle,
    is_safe,
    neg_node,
    node_for,
    pos_node,
    subgraph,
    support,
    validate_egraph,
)
from .justify import (
    AssumptionSet,
    ExplanationCapError,
    build_offline_justification,
    build_sigma,
    falsifiers,
    greatest_cycle,
    is_assumption,
    lce_neg,
    lce_neg_single,
    lce_pos,
    minimal_assumptions,
    negative_reduct,
    tentative_assumptions,
    validate_ju_based,
    validate_offline,
)
from .online import (
    Computation,
    OnlineJustifier,
    Snapshot,
    TransitionTag,
    cycles_greatest,
    final_snapshot_is_offline,
    gamma_delta,
    online_justification,
    snapshot,
)
from .solver import (
    SolverEngine,
    StepEvent,
    al_step,
    at_most,
    check_smodels_computation,
    choose,
    expand,
    solve,
)

__version__ = "0.1.0"
