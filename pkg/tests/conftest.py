import pytest

from permitgame import AgentModel, Game, PowerDamage, PowerRevenue


def make_example_game(**kwargs) -> Game:
    """The four-agent game behind the bundled fixtures, built in code."""
    agents = (
        AgentModel(1, PowerRevenue(a=10.0, b=6.0, p=0.5), PowerDamage(c=1.0, q=2.0)),
        AgentModel(2, PowerRevenue(a=6.0, b=2.0, p=0.5), PowerDamage(c=2.0, q=2.0)),
        AgentModel(3, PowerRevenue(a=5.0, b=3.0, p=1.0 / 3.0), PowerDamage(c=3.0, q=2.0)),
        AgentModel(4, PowerRevenue(a=8.0, b=4.0, p=0.5), PowerDamage(c=1.0, q=3.0)),
    )
    return Game(agents=agents, **kwargs)


@pytest.fixture(scope="session")
def game4() -> Game:
    return make_example_game()


@pytest.fixture(scope="session")
def single_game() -> Game:
    # one agent with u = 6*sqrt(s), d = S**2: optimum solves 3/sqrt(s) = 2s
    return Game(agents=(AgentModel(1, PowerRevenue(0.0, 6.0, 0.5), PowerDamage(1.0, 2.0)),))


@pytest.fixture(scope="session")
def twin_game() -> Game:
    # two identical agents, for symmetry checks
    agent = lambda i: AgentModel(i, PowerRevenue(1.0, 4.0, 0.5), PowerDamage(0.5, 2.0))
    return Game(agents=(agent(1), agent(2)))
