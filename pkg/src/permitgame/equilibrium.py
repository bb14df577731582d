"""Nash equilibrium under a coalition structure, and the Pareto optimum.

At an interior equilibrium every agent i in block B satisfies

    u_i'(s_i) = sum_{j in B} d_j'(S),

so for a trial total stock S each emission is s_i(S) =
marginal_revenue_inverse(i, block damage at S) and the equilibrium stock is
the unique root of

    phi(S) = s0 + sum_i s_i(S) - S.

phi is strictly decreasing (marginal revenues fall, block marginal damages
rise), so bisection on a verified sign-changing bracket always converges. The
grand-coalition case maximizes total welfare, i.e. it is the Pareto optimum.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Game, marginal_damage, marginal_revenue_inverse, require_valid
from .partition import CoalitionStructure

_BRACKET_EPS = 1e-12  # lower bracket offset above s0
_CAP_MARGINAL = 1e-9  # fallback marginal revenue used to cap the upper bracket


class SolverError(RuntimeError):
    """Equilibrium solve failed; carries the last bracket examined."""

    def __init__(self, message: str, bracket: tuple[float, float]):
        super().__init__(f"{message} (last bracket [{bracket[0]!r}, {bracket[1]!r}])")
        self.bracket = bracket


@dataclass(frozen=True)
class EquilibriumOutcome:
    """Solved emission profile under one coalition structure.

    ``emissions`` and ``gross_welfare`` follow the order of ``game.agents``;
    ``total_stock`` is s0 + sum(emissions) by construction.
    """

    emissions: tuple[float, ...]
    total_stock: float
    gross_welfare: tuple[float, ...]
    structure: CoalitionStructure
    converged: bool
    iterations: int

    @property
    def total_welfare(self) -> float:
        return sum(self.gross_welfare)


def block_marginal_damage(game: Game, block, S: float) -> float:
    """Sum of members' marginal damages at stock S (0 for an empty block)."""
    return sum(marginal_damage(game.agent(i), S) for i in block)


def _emissions_at(game: Game, structure: CoalitionStructure, S: float) -> list[float]:
    """Per-agent emissions implied by the first-order conditions at stock S."""
    out = [0.0] * game.n
    for block in structure.blocks:
        try:
            m = block_marginal_damage(game, block, S)
        except OverflowError:
            m = float("inf")
        for i in block:
            if m == float("inf"):
                out[game.index(i)] = 0.0
                continue
            try:
                out[game.index(i)] = marginal_revenue_inverse(game.agent(i), m)
            except OverflowError:
                out[game.index(i)] = float("inf")
    return out


def nash_equilibrium(game: Game, p: CoalitionStructure) -> EquilibriumOutcome:
    """Solve the equilibrium where each block jointly maximizes its welfare
    taking the other blocks' emissions as given."""
    require_valid(game)
    if p.n != game.n:
        raise ValueError(f"partition covers {p.n} agents, game has {game.n}")

    def phi(S: float) -> float:
        return game.s0 + sum(_emissions_at(game, p, S)) - S

    lo = game.s0 + _BRACKET_EPS
    hi = game.s0
    for a in game.agents:
        try:
            hi += marginal_revenue_inverse(a, max(marginal_damage(a, game.s0), _CAP_MARGINAL))
        except OverflowError:
            hi += 1e290

    f_lo, f_hi = phi(lo), phi(hi)
    if not (f_lo > 0 > f_hi):
        raise SolverError(
            f"no sign change: phi({lo!r})={f_lo!r}, phi({hi!r})={f_hi!r}", (lo, hi)
        )

    tol = game.tolerance
    converged = False
    iterations = 0
    root = hi
    for iterations in range(1, game.max_iter + 1):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:  # bracket exhausted at float resolution
            break
        f_mid = phi(mid)
        root = mid
        if f_mid > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol and abs(f_mid) <= tol:
            converged = True
            break
    if not converged:
        raise SolverError(
            f"did not converge within {iterations} iterations at tolerance {tol}", (lo, hi)
        )

    emissions = tuple(_emissions_at(game, p, root))
    return EquilibriumOutcome(
        emissions=emissions,
        total_stock=game.s0 + sum(emissions),
        gross_welfare=gross_welfare(game, emissions),
        structure=p,
        converged=converged,
        iterations=iterations,
    )


def pareto_optimum(game: Game) -> EquilibriumOutcome:
    """Emission profile maximizing total welfare: the grand-coalition equilibrium."""
    return nash_equilibrium(game, CoalitionStructure.grand(game.n))


def gross_welfare(game: Game, emissions) -> tuple[float, ...]:
    """Per-agent u_i(s_i) - d_i(s0 + sum(emissions))."""
    emissions = tuple(emissions)
    if len(emissions) != game.n:
        raise ValueError(f"expected {game.n} emissions, got {len(emissions)}")
    S = game.s0 + sum(emissions)
    return tuple(
        a.revenue.value(s) - a.damage.value(S) for a, s in zip(game.agents, emissions)
    )
