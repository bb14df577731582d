import numpy as np
import pytest

from permitgame import (
    AgentModel,
    Game,
    PowerDamage,
    PowerRevenue,
    marginal_damage,
    marginal_revenue,
    marginal_revenue_inverse,
    validate,
)

from conftest import make_example_game


def test_marginal_revenue_reference_values(game4):
    assert marginal_revenue(game4.agent(1), 1.0) == pytest.approx(3.0)
    assert marginal_revenue(game4.agent(3), 1.0) == pytest.approx(1.0)


def test_marginal_revenue_unit_argument_gives_b_times_p(game4):
    for agent in game4.agents:
        assert marginal_revenue(agent, 1.0) == pytest.approx(agent.revenue.b * agent.revenue.p)


def test_marginal_revenue_domain_error(game4):
    with pytest.raises(ValueError):
        marginal_revenue(game4.agent(1), 0.0)
    with pytest.raises(ValueError):
        marginal_revenue(game4.agent(1), -1.0)


def test_marginal_revenue_inverse_reference_values(game4):
    assert marginal_revenue_inverse(game4.agent(1), 2 * 1.380) == pytest.approx(1.182, abs=2e-3)
    assert marginal_revenue_inverse(game4.agent(4), 6.037) == pytest.approx(0.110, abs=2e-3)
    # agent 2 has b*p = 1, so m = 1 maps to s = 1 exactly
    assert marginal_revenue_inverse(game4.agent(2), 1.0) == pytest.approx(1.0, rel=1e-12)


def test_marginal_revenue_inverse_domain_error(game4):
    with pytest.raises(ValueError):
        marginal_revenue_inverse(game4.agent(1), 0.0)
    with pytest.raises(ValueError):
        marginal_revenue_inverse(game4.agent(1), -2.0)


def test_marginal_damage_reference_values(game4):
    assert marginal_damage(game4.agent(1), 0.452) == pytest.approx(0.904, abs=2e-3)
    assert marginal_damage(game4.agent(4), 0.452) == pytest.approx(0.613, abs=2e-3)
    assert marginal_damage(game4.agent(1), 0.0) == 0.0


def test_marginal_damage_rejects_negative_stock(game4):
    with pytest.raises(ValueError):
        marginal_damage(game4.agent(1), -0.1)


def test_inverse_round_trip_across_log_grid(game4):
    for agent in game4.agents:
        for s in np.geomspace(1e-6, 1e3, 40):
            m = marginal_revenue(agent, float(s))
            assert marginal_revenue_inverse(agent, m) == pytest.approx(float(s), rel=1e-10)


def test_finite_difference_matches_analytic_marginals(game4):
    # central differences; below ~1e-3 the O((h/s)^2) truncation of the fixed
    # absolute step h = 1e-6*max(1, s) swamps the 1e-6 relative target
    for agent in game4.agents:
        for s in np.geomspace(1e-3, 1e3, 40):
            s = float(s)
            h = 1e-6 * max(1.0, s)
            fd = (agent.revenue.value(s + h) - agent.revenue.value(s - h)) / (2 * h)
            assert fd == pytest.approx(marginal_revenue(agent, s), rel=1e-6)
            fd = (agent.damage.value(s + h) - agent.damage.value(s - h)) / (2 * h)
            assert fd == pytest.approx(marginal_damage(agent, s), rel=1e-6)


def test_curvature_probed_numerically(game4):
    grid = np.geomspace(1e-6, 1e3, 60)
    for agent in game4.agents:
        mr = [marginal_revenue(agent, float(s)) for s in grid]
        md = [marginal_damage(agent, float(s)) for s in grid]
        assert all(a > b for a, b in zip(mr, mr[1:]))  # strictly decreasing
        assert all(a < b for a, b in zip(md, md[1:]))  # strictly increasing


def test_validate_accepts_example_game(game4):
    assert validate(game4) == []


def test_validate_flags_boundary_exponents():
    game = Game(
        agents=(
            AgentModel(1, PowerRevenue(0.0, 1.0, 1.0), PowerDamage(1.0, 2.0)),
            AgentModel(2, PowerRevenue(0.0, 1.0, 0.5), PowerDamage(1.0, 1.0)),
        )
    )
    messages = {v.agent_id: v.message for v in validate(game)}
    assert "revenue not strictly concave" in messages[1]
    assert "damage not strictly convex" in messages[2]


def test_validate_flags_nonpositive_scales():
    game = Game(
        agents=(AgentModel(1, PowerRevenue(0.0, 0.0, 0.5), PowerDamage(-1.0, 2.0)),)
    )
    messages = [v.message for v in validate(game)]
    assert any("revenue not strictly increasing" in m for m in messages)
    assert any("damage not strictly increasing" in m for m in messages)


def test_game_structural_invariants():
    with pytest.raises(ValueError):
        Game(agents=())
    with pytest.raises(ValueError):
        make_example_game(s0=-1.0)
    with pytest.raises(ValueError):
        make_example_game(tolerance=0.0)
    agent = AgentModel(2, PowerRevenue(0.0, 1.0, 0.5), PowerDamage(1.0, 2.0))
    with pytest.raises(ValueError):
        Game(agents=(agent,))  # ids must start at 1
    with pytest.raises(ValueError):
        Game(agents=(agent, agent))  # duplicate id


def test_game_lookup(game4):
    assert game4.n == 4
    assert game4.ids == (1, 2, 3, 4)
    assert game4.agent(3).revenue.b == 3.0
    assert game4.index(4) == 3
    with pytest.raises(ValueError):
        game4.index(9)
