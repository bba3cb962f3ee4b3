"""Online value-sharing mechanisms for 0-1 monotone cooperative games.

RFC, WVS and EVS allocate the value created in an arrival order among its
critical players; :mod:`valueshare.analysis` verifies fairness and incentive
properties of any such rule by exhaustive enumeration with exact rationals.
"""

from .analysis import (
    Counterexample,
    MetricReport,
    OrderTable,
    PropertyReport,
    check_anonymity,
    check_critical_order,
    check_critical_support,
    check_efficiency,
    check_i4ea,
    check_mos,
    check_oir,
    check_sf,
    compare_mechanisms,
    egalitarian_welfare,
    expected_metrics,
    expected_shares,
    shapley_distance,
)
from .game import (
    ArrivalOrder,
    Game,
    GameError,
    LocalGame,
    PlayerId,
    Shares,
    SizeLimitError,
    all_orders,
    is_monotone,
    load_game,
    local_game,
    parse_game,
    symmetric_players,
)
from .mechanisms import (
    EVS,
    RFC,
    Allocation,
    Mechanism,
    MechanismError,
    OnlineTrace,
    WeightFunction,
    evs_allocate,
    general_allocate,
    get_mechanism,
    layered,
    online_run,
    rfc_allocate,
    wvs,
    wvs_allocate,
)
from .shapley import (
    LayerDecomposition,
    ShapleyVector,
    decompose_layers,
    marginal_contribution,
    shapley_permutation,
    shapley_subset,
)
from .structure import (
    MinimalCriticalPrefix,
    OrderStructure,
    is_solvable,
    minimal_critical_prefix,
    order_structure,
)
from .sweep import enumerate_zero_one_monotone_games

__version__ = "0.1.0"
