"""Exact association-scheme computations: semidirect products from actions
and recovery of actions from split schemes."""
from .action import Action, build_action, full_action, trivial_action
from .category import (
    CMorphism,
    LabellingSet,
    TauScheme,
    compose,
    full_morphism,
    identity,
    leq,
    make_cmorphism,
    star,
    tau_apply,
    validate_morphism,
)
from .closure import (
    ClosedSubset,
    closure_of,
    cosets,
    enumerate_closed_subsets,
    is_normal,
    quotient,
    subscheme,
)
from .errors import *  # noqa: F401,F403
from .formats import (
    format_action,
    format_scheme,
    parse_action_file,
    parse_action_text,
    parse_scheme_file,
    parse_scheme_text,
)
from .iso import Isomorphism, algebraic_automorphisms, find_isomorphism
from .recovery import (
    RecoveredAction,
    boundary_subsets,
    reconstruct,
    recover_action,
    validate_split_data,
)
from .scheme import (
    Scheme,
    complex_product,
    from_color_matrix,
    is_symmetric,
    is_thin,
    structure_constants,
    thin_from_group,
    valencies,
)
from .semidirect import (
    SemidirectScheme,
    SplitData,
    canonical_split,
    relation_label,
    semidirect_product,
    verify_split_condition,
)

__version__ = "0.1.0"
