"""Agent and game definitions.

Each agent has a power-form emission revenue function u(s) = a + b*s**p and a
power-form damage function d(S) = c*S**q of the total pollution stock S. Both
families have closed-form derivatives and (for the revenue) a closed-form
inverse marginal, which is what makes the scalar equilibrium solver exact.

Well-behaved agents satisfy b > 0, 0 < p < 1 (revenue strictly increasing and
strictly concave) and c > 0, q > 1 (damage strictly increasing and strictly
convex). Constructors accept arbitrary finite parameters; use ``validate`` to
obtain a report of violated constraints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PowerRevenue:
    """Emission revenue u(s) = a + b * s**p.

    The offset ``a`` enters welfare levels but cancels out of every marginal
    condition, so it never affects equilibrium emissions.
    """

    a: float
    b: float
    p: float

    def value(self, s: float) -> float:
        if s < 0:
            raise ValueError(f"emission must be nonnegative, got {s}")
        return self.a + self.b * s**self.p

    def marginal(self, s: float) -> float:
        """u'(s) = b*p*s**(p-1); diverges as s -> 0+."""
        if s <= 0:
            raise ValueError(f"marginal revenue undefined at s={s} (requires s > 0)")
        return self.b * self.p * s ** (self.p - 1.0)

    def marginal_inverse(self, m: float) -> float:
        """Solve u'(s) = m for s: s = (b*p/m)**(1/(1-p))."""
        if m <= 0:
            raise ValueError(f"marginal revenue is positive, cannot invert m={m}")
        return (self.b * self.p / m) ** (1.0 / (1.0 - self.p))


@dataclass(frozen=True)
class PowerDamage:
    """Pollution damage d(S) = c * S**q of the total stock S."""

    c: float
    q: float

    def value(self, S: float) -> float:
        if S < 0:
            raise ValueError(f"stock must be nonnegative, got {S}")
        return self.c * S**self.q

    def marginal(self, S: float) -> float:
        """d'(S) = c*q*S**(q-1)."""
        if S < 0:
            raise ValueError(f"stock must be nonnegative, got {S}")
        return self.c * self.q * S ** (self.q - 1.0)


@dataclass(frozen=True)
class AgentModel:
    """One agent: integer id (1-based) plus its revenue and damage functions."""

    id: int
    revenue: PowerRevenue
    damage: PowerDamage


@dataclass(frozen=True)
class Game:
    """An emission game: agents, initial stock s0, and solver settings.

    Agent ids must be exactly 1..I (any order). Vectors produced by the
    solvers (emissions, welfare, prices) follow the order of ``agents``.
    """

    agents: tuple[AgentModel, ...]
    s0: float = 0.0
    tolerance: float = 1e-10
    max_iter: int = 1000

    def __post_init__(self) -> None:
        object.__setattr__(self, "agents", tuple(self.agents))
        if len(self.agents) < 1:
            raise ValueError("a game needs at least one agent")
        ids = sorted(a.id for a in self.agents)
        if ids != list(range(1, len(self.agents) + 1)):
            raise ValueError(f"agent ids must be exactly 1..{len(self.agents)}, got {ids}")
        if not math.isfinite(self.s0) or self.s0 < 0:
            raise ValueError(f"initial stock must be finite and >= 0, got {self.s0}")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        object.__setattr__(self, "_index", {a.id: k for k, a in enumerate(self.agents)})

    @property
    def n(self) -> int:
        return len(self.agents)

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(a.id for a in self.agents)

    def agent(self, agent_id: int) -> AgentModel:
        return self.agents[self.index(agent_id)]

    def index(self, agent_id: int) -> int:
        """Position of the agent with the given id in every solver vector."""
        try:
            return self._index[agent_id]  # type: ignore[attr-defined]
        except KeyError:
            raise ValueError(f"no agent with id {agent_id}") from None


@dataclass(frozen=True)
class Violation:
    """A single violated model constraint, attributed to an agent."""

    agent_id: int
    message: str


def marginal_revenue(agent: AgentModel, s: float) -> float:
    """Marginal emission revenue u'(s) = b*p*s**(p-1), for s > 0."""
    return agent.revenue.marginal(s)


def marginal_revenue_inverse(agent: AgentModel, m: float) -> float:
    """Emission level at which marginal revenue equals m > 0."""
    return agent.revenue.marginal_inverse(m)


def marginal_damage(agent: AgentModel, S: float) -> float:
    """Marginal damage d'(S) = c*q*S**(q-1) of the total stock."""
    return agent.damage.marginal(S)


def validate(game: Game) -> list[Violation]:
    """Check every agent against the curvature constraints.

    Returns the list of violations (empty means the game is well posed):
    b > 0, 0 < p < 1, c > 0 and q > 1 for every agent.
    """
    violations: list[Violation] = []
    for agent in game.agents:
        r, d = agent.revenue, agent.damage
        if not r.b > 0:
            violations.append(Violation(agent.id, f"revenue not strictly increasing (b={r.b} <= 0)"))
        if not 0 < r.p < 1:
            violations.append(Violation(agent.id, f"revenue not strictly concave (p={r.p} outside (0, 1))"))
        if not d.c > 0:
            violations.append(Violation(agent.id, f"damage not strictly increasing (c={d.c} <= 0)"))
        if not d.q > 1:
            violations.append(Violation(agent.id, f"damage not strictly convex (q={d.q} <= 1)"))
    return violations


def require_valid(game: Game) -> None:
    """Raise ValueError listing every violation if the game is not well posed."""
    violations = validate(game)
    if violations:
        detail = "; ".join(f"agent {v.agent_id}: {v.message}" for v in violations)
        raise ValueError(f"invalid game: {detail}")
