"""Brute-force grid verification of equilibria and optima.

Everything here works by maximizing welfare over a fixed log-spaced emission
grid, never by inverting marginal conditions, so it provides an independent
check on the analytic solver. It is test scaffolding: correctness over speed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .equilibrium import EquilibriumOutcome, gross_welfare
from .model import Game, require_valid
from .partition import CoalitionStructure

_MAX_SWEEPS = 1000
_MAX_BLOCK_CYCLES = 500
_MAX_EXHAUSTIVE_CELLS = 40_000_000  # per broadcast array in pareto_grid


class OracleError(RuntimeError):
    """Grid search failed to reach a stationary profile."""


@dataclass(frozen=True)
class Grid:
    """Log-spaced candidate emissions, shared by every agent."""

    lo: float
    hi: float
    n: int

    def __post_init__(self) -> None:
        if not 0 < self.lo < self.hi:
            raise ValueError(f"need 0 < lo < hi, got lo={self.lo}, hi={self.hi}")
        if self.n < 100:
            raise ValueError(f"need at least 100 points, got {self.n}")

    def points(self) -> np.ndarray:
        return np.geomspace(self.lo, self.hi, self.n)

    @property
    def ratio(self) -> float:
        return (self.hi / self.lo) ** (1.0 / (self.n - 1))

    def resolution_at(self, x: float) -> float:
        """Local spacing of the grid near the value x."""
        return x * (self.ratio - 1.0)


def _pow(x: np.ndarray, q: float) -> np.ndarray:
    # small integer exponents dominate in practice; repeated multiply is much
    # faster than np.power on large arrays
    if float(q).is_integer() and 1 <= q <= 4:
        out = x
        for _ in range(int(q) - 1):
            out = out * x
        return out
    return np.power(x, q)


def _revenues_on(game: Game, pts: np.ndarray) -> list[np.ndarray]:
    return [a.revenue.a + a.revenue.b * np.power(pts, a.revenue.p) for a in game.agents]


def _damage_groups(agents) -> list[tuple[float, float]]:
    # agents sharing an exponent contribute one scaled power term
    by_q: dict[float, float] = {}
    for a in agents:
        by_q[a.damage.q] = by_q.get(a.damage.q, 0.0) + a.damage.c
    return sorted(by_q.items())


def _damage_sum(agents, stock: np.ndarray) -> np.ndarray:
    total = np.zeros_like(stock)
    for q, c in _damage_groups(agents):
        total = total + c * _pow(stock, q)
    return total


def best_response_grid(game: Game, p: CoalitionStructure, grid: Grid) -> EquilibriumOutcome:
    """Iterate block-level welfare maximization over the grid until the
    emission profile stops changing."""
    require_valid(game)
    if p.n != game.n:
        raise ValueError(f"partition covers {p.n} agents, game has {game.n}")
    pts = grid.points()
    revenues = _revenues_on(game, pts)
    current = np.full(game.n, grid.n // 2, dtype=int)  # indices into pts

    def maximize_block(block) -> bool:
        members = [game.index(i) for i in block]
        block_agents = [game.agents[k] for k in members]
        changed_any = False
        for _ in range(_MAX_BLOCK_CYCLES):
            changed = False
            for k in members:
                rest = game.s0 + float(pts[current].sum() - pts[current[k]])
                objective = revenues[k] - _damage_sum(block_agents, rest + pts)
                best = int(np.argmax(objective))
                if best != current[k]:
                    current[k] = best
                    changed = changed_any = True
            if not changed:
                return changed_any
        raise OracleError(f"block {block} did not stabilize on the grid")

    for sweep in range(1, _MAX_SWEEPS + 1):
        changed = [maximize_block(block) for block in p.blocks]
        if not any(changed):
            emissions = tuple(float(pts[k]) for k in current)
            return EquilibriumOutcome(
                emissions=emissions,
                total_stock=game.s0 + sum(emissions),
                gross_welfare=gross_welfare(game, emissions),
                structure=p,
                converged=True,
                iterations=sweep,
            )
    raise OracleError(f"no stationary profile after {_MAX_SWEEPS} sweeps")


def pareto_grid(game: Game, grid: Grid) -> tuple[float, ...]:
    """Grid argmax of total welfare: exhaustive for up to four agents (when
    the broadcast fits in memory), coordinate ascent otherwise."""
    require_valid(game)
    pts = grid.points()
    n, I = grid.n, game.n
    if I <= 4 and n ** min(I - 1, 3) <= _MAX_EXHAUSTIVE_CELLS:
        return _pareto_exhaustive(game, pts)
    return _pareto_ascent(game, pts)


def _pareto_exhaustive(game: Game, pts: np.ndarray) -> tuple[float, ...]:
    revenues = _revenues_on(game, pts)
    if game.n == 1:
        welfare = revenues[0] - _damage_sum(game.agents, game.s0 + pts)
        return (float(pts[int(np.argmax(welfare))]),)

    # broadcast the trailing I-1 axes, then scan the first axis with
    # preallocated buffers (the inner arrays hold up to n**3 cells)
    shape = [1] * (game.n - 1)
    rest_sum = np.zeros(shape)
    rest_rev = np.zeros(shape)
    for axis in range(game.n - 1):
        view = [1] * (game.n - 1)
        view[axis] = -1
        rest_sum = rest_sum + pts.reshape(view)
        rest_rev = rest_rev + revenues[axis + 1].reshape(view)
    groups = _damage_groups(game.agents)
    stock = np.empty_like(rest_sum)
    term = np.empty_like(rest_sum)
    welfare = np.empty_like(rest_sum)
    best_val, best_idx = -np.inf, None
    for i0 in range(len(pts)):
        np.add(rest_sum, game.s0 + pts[i0], out=stock)
        welfare[...] = rest_rev
        for q, c in groups:
            if q == 2.0:
                np.multiply(stock, stock, out=term)
            elif q == 3.0:
                np.multiply(stock, stock, out=term)
                np.multiply(term, stock, out=term)
            else:
                np.power(stock, q, out=term)
            np.multiply(term, c, out=term)
            np.subtract(welfare, term, out=welfare)
        flat = int(np.argmax(welfare))
        value = float(welfare.flat[flat]) + float(revenues[0][i0])
        if value > best_val:
            best_val = value
            best_idx = (i0,) + np.unravel_index(flat, welfare.shape)
    return tuple(float(pts[k]) for k in best_idx)


def _pareto_ascent(game: Game, pts: np.ndarray) -> tuple[float, ...]:
    revenues = _revenues_on(game, pts)
    current = np.full(game.n, len(pts) // 2, dtype=int)
    for _ in range(_MAX_SWEEPS):
        changed = False
        for k in range(game.n):
            rest = game.s0 + float(pts[current].sum() - pts[current[k]])
            objective = revenues[k] - _damage_sum(game.agents, rest + pts)
            best = int(np.argmax(objective))
            if best != current[k]:
                current[k] = best
                changed = True
        if not changed:
            return tuple(float(pts[k]) for k in current)
    raise OracleError(f"coordinate ascent not stationary after {_MAX_SWEEPS} sweeps")
