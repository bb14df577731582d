"""Transferable-utility emission games with a shared pollution stock.

Solves Nash equilibria under arbitrary coalition structures, the Pareto
optimum, the balanced permit-price schedule that decentralizes it, w-value
and category-I welfare distributions, and gamma-core membership tests, with
an independent grid oracle for verification.
"""

from .equilibrium import (
    EquilibriumOutcome,
    SolverError,
    block_marginal_damage,
    gross_welfare,
    nash_equilibrium,
    pareto_optimum,
)
from .gamefile import dump_game, example_game_path, game_from_dict, game_to_dict, load_game
from .model import (
    AgentModel,
    Game,
    PowerDamage,
    PowerRevenue,
    Violation,
    marginal_damage,
    marginal_revenue,
    marginal_revenue_inverse,
    validate,
)
from .oracle import Grid, OracleError, best_response_grid, pareto_grid
from .partition import (
    CoalitionStructure,
    all_partitions,
    bell_number,
    gamma_structure,
    merge_blocks,
)
from .pricing import PriceSchedule, fiscal_balance, net_price_condition, optimal_prices, transfer
from .solution import (
    AllocationBasis,
    GammaCoreReport,
    GammaCoreRow,
    InfeasibleTargetError,
    WelfareAllocation,
    allocation_from_welfare,
    category1_distribution,
    gamma_core_test,
    w_ipa,
    w_value,
)

__version__ = "0.1.0"

__all__ = [
    "AgentModel",
    "AllocationBasis",
    "CoalitionStructure",
    "EquilibriumOutcome",
    "GammaCoreReport",
    "GammaCoreRow",
    "Game",
    "Grid",
    "InfeasibleTargetError",
    "OracleError",
    "PowerDamage",
    "PowerRevenue",
    "PriceSchedule",
    "SolverError",
    "Violation",
    "WelfareAllocation",
    "all_partitions",
    "allocation_from_welfare",
    "bell_number",
    "best_response_grid",
    "block_marginal_damage",
    "category1_distribution",
    "dump_game",
    "example_game_path",
    "fiscal_balance",
    "game_from_dict",
    "game_to_dict",
    "gamma_core_test",
    "gamma_structure",
    "gross_welfare",
    "load_game",
    "marginal_damage",
    "marginal_revenue",
    "marginal_revenue_inverse",
    "merge_blocks",
    "nash_equilibrium",
    "net_price_condition",
    "optimal_prices",
    "pareto_grid",
    "pareto_optimum",
    "transfer",
    "validate",
    "w_ipa",
    "w_value",
]
