"""Optimal equilibrium prices and money transfers.

The balanced schedule charges t per emitted unit, pays each agent a subsidy
rate T_i per unit of total stock in excess of the permitted total, and levies
a fixed tax t_bar_i. Evaluated at the Pareto stock S*, the optimal schedule is

    T_i = d_i'(S*),    t = sum_i T_i,    t_bar_i = 0,

which satisfies the net-price condition t - T_i = sum_{j != i} d_j'(S*) and
balances the budget for every permit allocation (the transfers telescope).
"""

from __future__ import annotations

from dataclasses import dataclass

from .equilibrium import EquilibriumOutcome
from .model import Game, marginal_damage


@dataclass(frozen=True)
class PriceSchedule:
    """Permit price t, per-agent subsidy rates T, per-agent fixed taxes t_bar."""

    t: float
    T: tuple[float, ...]
    t_bar: tuple[float, ...]


def optimal_prices(game: Game, pareto: EquilibriumOutcome) -> PriceSchedule:
    """Balanced schedule that decentralizes the Pareto optimum."""
    if not pareto.converged:
        raise ValueError("price schedule requires a converged Pareto outcome")
    if len(pareto.structure.blocks) != 1:
        raise ValueError("price schedule requires the grand-coalition outcome")
    T = tuple(marginal_damage(a, pareto.total_stock) for a in game.agents)
    return PriceSchedule(t=sum(T), T=T, t_bar=tuple(0.0 for _ in game.agents))


def net_price_condition(game: Game, schedule: PriceSchedule, S: float) -> tuple[float, ...]:
    """Residuals (t - T_i) - sum_{j != i} d_j'(S); all zero certifies that the
    schedule decentralizes the optimum at stock S."""
    marginals = [marginal_damage(a, S) for a in game.agents]
    return tuple(
        (schedule.t - schedule.T[k]) - sum(m for j, m in enumerate(marginals) if j != k)
        for k in range(game.n)
    )


def transfer(game: Game, schedule: PriceSchedule, emissions, allocation, i: int) -> float:
    """Money received by agent ``i`` (an agent id):

        T_i * (sum(emissions) - sum(allocation)) + t * (allocation_i - emissions_i) - t_bar_i
    """
    emissions, allocation = tuple(emissions), tuple(allocation)
    if not len(emissions) == len(allocation) == game.n == len(schedule.T):
        raise ValueError("emissions, allocation and schedule must all match the game size")
    k = game.index(i)
    excess = sum(emissions) - sum(allocation)
    return schedule.T[k] * excess + schedule.t * (allocation[k] - emissions[k]) - schedule.t_bar[k]


def fiscal_balance(game: Game, schedule: PriceSchedule, emissions, allocation) -> float:
    """Sum of all transfers; zero (up to round-off) whenever t = sum(T) and
    the fixed taxes vanish, regardless of the allocation."""
    return sum(transfer(game, schedule, emissions, allocation, i) for i in game.ids)
