"""Solution concepts built on the equilibrium solver and the price schedule.

A welfare distribution is produced by (1) choosing a permit allocation, (2)
moving to the Pareto optimum, (3) applying the optimal price schedule, and
(4) paying each agent its gross welfare plus transfer. With the all-singleton
Nash emissions as the allocation this yields the w-value; with any other
structure's Nash emissions it yields that structure's category-I
distribution. Conservation holds throughout: the values always sum to the
Pareto total welfare.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .equilibrium import EquilibriumOutcome, nash_equilibrium, pareto_optimum
from .model import Game, require_valid
from .partition import CoalitionStructure, gamma_structure
from .pricing import PriceSchedule, optimal_prices, transfer

EFFICIENCY_TOL = 1e-6  # slack allowed between a candidate total and the Pareto total
CORE_TOL = 1e-9


class InfeasibleTargetError(ValueError):
    """Raised when a welfare target cannot be reached by any permit allocation
    under the balanced price schedule (its total is off the Pareto total)."""


@dataclass(frozen=True)
class AllocationBasis:
    """The (emissions, allocation, schedule) triple behind a welfare vector."""

    emissions: tuple[float, ...]
    allocation: tuple[float, ...]
    schedule: PriceSchedule


@dataclass(frozen=True)
class WelfareAllocation:
    """Per-agent money-valued welfare, plus the basis that produced it."""

    values: tuple[float, ...]
    basis: AllocationBasis

    @property
    def total(self) -> float:
        return sum(self.values)


@dataclass(frozen=True)
class GammaCoreRow:
    """Blocking test for one coalition: its payoff when it deviates (with all
    outsiders staying singletons) versus its payoff under the candidate."""

    coalition: tuple[int, ...]
    structure: CoalitionStructure
    outcome: EquilibriumOutcome
    nash_welfare: float
    candidate_welfare: float
    surplus: float


@dataclass(frozen=True)
class GammaCoreReport:
    rows: tuple[GammaCoreRow, ...]
    in_core: bool
    tolerance: float


def w_ipa(game: Game) -> tuple[float, ...]:
    """Initial permit allocation: the all-singleton Nash emissions."""
    return nash_equilibrium(game, CoalitionStructure.singletons(game.n)).emissions


def _distribute(game: Game, allocation: tuple[float, ...]) -> WelfareAllocation:
    pareto = pareto_optimum(game)
    schedule = optimal_prices(game, pareto)
    values = tuple(
        w + transfer(game, schedule, pareto.emissions, allocation, i)
        for i, w in zip(game.ids, pareto.gross_welfare)
    )
    return WelfareAllocation(
        values=values,
        basis=AllocationBasis(pareto.emissions, tuple(allocation), schedule),
    )


def w_value(game: Game) -> WelfareAllocation:
    """Welfare of each agent when the optimal prices are applied on top of the
    all-singleton Nash emissions taken as permits."""
    return _distribute(game, w_ipa(game))


def category1_distribution(game: Game, p: CoalitionStructure) -> WelfareAllocation:
    """Welfare distribution that uses the Nash emissions under ``p`` as the
    permit allocation before moving to the optimum."""
    return _distribute(game, nash_equilibrium(game, p).emissions)


def gamma_core_test(
    game: Game, candidate: WelfareAllocation, tolerance: float = CORE_TOL
) -> GammaCoreReport:
    """Blocking test of ``candidate`` against every nonempty coalition.

    A coalition's standalone worth is its members' total gross welfare in the
    equilibrium where it acts jointly and all outsiders remain singletons.
    Membership requires a strictly positive surplus for every proper
    coalition and a nonnegative one for the full set.
    """
    require_valid(game)
    if len(candidate.values) != game.n:
        raise ValueError(f"candidate has {len(candidate.values)} values, game has {game.n} agents")
    total = pareto_optimum(game).total_welfare
    if abs(sum(candidate.values) - total) > EFFICIENCY_TOL:
        raise ValueError(
            f"candidate total {sum(candidate.values)!r} differs from the Pareto total {total!r}"
        )

    solved: dict[CoalitionStructure, EquilibriumOutcome] = {}
    rows = []
    ids = sorted(game.ids)
    for size in range(1, game.n + 1):
        for coalition in combinations(ids, size):
            structure = gamma_structure(coalition, game.n)
            if structure not in solved:
                solved[structure] = nash_equilibrium(game, structure)
            outcome = solved[structure]
            nash = sum(outcome.gross_welfare[game.index(i)] for i in coalition)
            mine = sum(candidate.values[game.index(i)] for i in coalition)
            rows.append(
                GammaCoreRow(
                    coalition=coalition,
                    structure=structure,
                    outcome=outcome,
                    nash_welfare=nash,
                    candidate_welfare=mine,
                    surplus=mine - nash,
                )
            )
    in_core = all(
        row.surplus > tolerance if len(row.coalition) < game.n else row.surplus >= -tolerance
        for row in rows
    )
    return GammaCoreReport(rows=tuple(rows), in_core=in_core, tolerance=tolerance)


def allocation_from_welfare(game: Game, target, s_bar_total: float) -> tuple[float, ...]:
    """Invert the welfare map: the unique permit allocation summing to
    ``s_bar_total`` that delivers ``target`` under the optimal prices.

        allocation_i = (target_i + d_i(S*) - u_i(s_i*)
                        - T_i * (sum(s*) - s_bar_total)) / t + s_i*
    """
    target = tuple(target)
    if len(target) != game.n:
        raise ValueError(f"expected {game.n} welfare targets, got {len(target)}")
    pareto = pareto_optimum(game)
    if abs(sum(target) - pareto.total_welfare) > EFFICIENCY_TOL:
        raise InfeasibleTargetError(
            f"target total {sum(target)!r} is not the Pareto total {pareto.total_welfare!r}; "
            "no permit allocation can deliver it under the balanced schedule"
        )
    schedule = optimal_prices(game, pareto)
    if schedule.t == 0:
        raise ValueError("permit price is zero; welfare map is not invertible")
    emitted = sum(pareto.emissions)
    out = []
    for k, (agent, w_i) in enumerate(zip(game.agents, target)):
        gross = agent.revenue.value(pareto.emissions[k]) - agent.damage.value(pareto.total_stock)
        out.append(
            (w_i - gross - schedule.T[k] * (emitted - s_bar_total)) / schedule.t
            + pareto.emissions[k]
        )
    return tuple(out)
