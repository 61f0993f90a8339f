"""Games with symmetry on event structures.

Validators for event structures, group actions, distributive laws and games;
strategies with weak maps; uniform strategies and a search for them; copycat
and lifting; and the translation to thin concurrent games.
"""

from .copycat import (
    LiftWitness,
    colift_strategy,
    copycat_es,
    copycat_functor,
    copycat_report,
    copycat_strategy,
    lift_strategy,
    uniform_colift,
    uniform_copycat,
    uniform_lift,
    validate_colift_witness,
    validate_lift_witness,
)
from .es_core import (
    NEG,
    POS,
    EsMap,
    EventStructure,
    ExtensionKind,
    compose,
    dual_es,
    enumerate_automorphisms,
    enumerate_configurations,
    extension_kind,
    identity_map,
    parallel_es,
    validate_event_structure,
    validate_map,
)
from .game import (
    Game,
    GamePolarity,
    bang_game,
    dual_game,
    parallel_game,
    polarity_of_game,
    trivial_game,
    validate_game,
)
from .report import BoundExceeded, EsGamesError, Report, ValidationError, Verdict
from .strategy import (
    Strategy,
    WeakMap,
    act_on_strategy,
    compose_weak_maps,
    identity_strategy,
    identity_weak_map,
    validate_strategy,
    validate_weak_map,
)
from .symmetry import (
    DistributiveLaw,
    FiniteGroup,
    GroupAction,
    classify_automorphism,
    commuting_law,
    derive_law_from_factorization,
    group_from_generators,
    symmetric_group,
    trivial_action,
    trivial_group,
    validate_action,
    validate_distributive_law,
    validate_group,
)
from .tcg import (
    ConfigBijection,
    GeneratedFamily,
    IsomorphismFamily,
    SimStrategy,
    ThinConcurrentGame,
    check_sim_receptivity,
    check_thin,
    check_weak_map_sim,
    family_from_action,
    family_from_uniform,
    tcg_from_game,
    to_sim_strategy,
    validate_iso_family,
    validate_sim_strategy,
    validate_tcg,
)
from .uniform import (
    SearchResult,
    UniformStrategy,
    from_event_maps,
    is_local,
    search_uniform_structure,
    validate_uniform,
    validate_uniform_map,
)

__version__ = "0.1.0"

__all__ = [
    "act_on_strategy",
    "bang_game",
    "BoundExceeded",
    "check_sim_receptivity",
    "check_thin",
    "check_weak_map_sim",
    "classify_automorphism",
    "colift_strategy",
    "commuting_law",
    "compose",
    "compose_weak_maps",
    "ConfigBijection",
    "copycat_es",
    "copycat_functor",
    "copycat_report",
    "copycat_strategy",
    "derive_law_from_factorization",
    "DistributiveLaw",
    "dual_es",
    "dual_game",
    "enumerate_automorphisms",
    "enumerate_configurations",
    "EsGamesError",
    "EsMap",
    "EventStructure",
    "extension_kind",
    "ExtensionKind",
    "family_from_action",
    "family_from_uniform",
    "FiniteGroup",
    "from_event_maps",
    "Game",
    "GamePolarity",
    "GeneratedFamily",
    "group_from_generators",
    "GroupAction",
    "identity_map",
    "identity_strategy",
    "identity_weak_map",
    "is_local",
    "IsomorphismFamily",
    "lift_strategy",
    "LiftWitness",
    "NEG",
    "parallel_es",
    "parallel_game",
    "polarity_of_game",
    "POS",
    "Report",
    "search_uniform_structure",
    "SearchResult",
    "SimStrategy",
    "Strategy",
    "symmetric_group",
    "tcg_from_game",
    "ThinConcurrentGame",
    "to_sim_strategy",
    "trivial_action",
    "trivial_game",
    "trivial_group",
    "uniform_colift",
    "uniform_copycat",
    "uniform_lift",
    "UniformStrategy",
    "validate_action",
    "validate_colift_witness",
    "validate_distributive_law",
    "validate_event_structure",
    "validate_game",
    "validate_group",
    "validate_iso_family",
    "validate_lift_witness",
    "validate_map",
    "validate_sim_strategy",
    "validate_strategy",
    "validate_tcg",
    "validate_uniform",
    "validate_uniform_map",
    "validate_weak_map",
    "ValidationError",
    "Verdict",
    "WeakMap",
]
