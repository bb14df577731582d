import numpy as np
import pytest

from permitgame import (
    CoalitionStructure,
    InfeasibleTargetError,
    all_partitions,
    allocation_from_welfare,
    category1_distribution,
    gamma_core_test,
    gross_welfare,
    nash_equilibrium,
    optimal_prices,
    pareto_optimum,
    transfer,
    w_ipa,
    w_value,
)


def test_w_ipa_is_all_singleton_nash(game4):
    allocation = w_ipa(game4)
    assert list(allocation) == pytest.approx([1.182, 0.033, 0.042, 0.123], abs=2e-3)
    singles = nash_equilibrium(game4, CoalitionStructure.singletons(4))
    assert allocation == singles.emissions


def test_w_ipa_single_agent(single_game):
    assert w_ipa(single_game)[0] == pytest.approx(1.5 ** (2.0 / 3.0), rel=1e-9)


def test_w_ipa_symmetry(twin_game):
    a, b = w_ipa(twin_game)
    assert a == pytest.approx(b, rel=1e-9)


def test_w_value_reference_values(game4):
    wv = w_value(game4)
    assert list(wv.values) == pytest.approx([17.583, 4.279, 2.940, 8.743], abs=2e-3)
    assert wv.total == pytest.approx(33.544, abs=2e-3)


def test_w_value_conserves_pareto_total(game4):
    assert w_value(game4).total == pytest.approx(pareto_optimum(game4).total_welfare, abs=1e-9)


def test_w_value_symmetry(twin_game):
    a, b = w_value(twin_game).values
    assert a == pytest.approx(b, rel=1e-9)


def test_w_value_basis_records_inputs(game4):
    wv = w_value(game4)
    assert wv.basis.allocation == w_ipa(game4)
    assert wv.basis.emissions == pareto_optimum(game4).emissions
    assert wv.basis.schedule.t == pytest.approx(6.035, abs=2e-3)


def test_category1_reference_row(game4):
    dist = category1_distribution(game4, CoalitionStructure.from_string("[1,2],[3],[4]"))
    assert list(dist.values) == pytest.approx([12.534, 5.055, 4.314, 11.641], abs=2e-3)


def test_category1_of_singletons_is_w_value(game4):
    singles = category1_distribution(game4, CoalitionStructure.singletons(4))
    assert singles.values == w_value(game4).values


def test_category1_of_grand_coalition_is_gross_pareto(game4):
    pareto = pareto_optimum(game4)
    dist = category1_distribution(game4, CoalitionStructure.grand(4))
    assert dist.values == pareto.gross_welfare  # transfers are exactly zero


def test_category1_improves_on_nash_everywhere(game4):
    # every structure's distribution dominates its own Nash welfare
    for p in all_partitions(4):
        outcome = nash_equilibrium(game4, p)
        dist = category1_distribution(game4, p)
        diffs = [v - w for v, w in zip(dist.values, outcome.gross_welfare)]
        assert all(d >= -1e-12 for d in diffs)
        if len(p) > 1:
            assert all(d > 0 for d in diffs)


def test_members_prefer_the_split_structures_emissions(game4):
    # a standing coalition is better off when the permits come from the Nash
    # equilibrium of the partition where that coalition is dissolved
    for p in all_partitions(4):
        for block in p.blocks:
            if len(block) < 2:
                continue
            rest = tuple(b for b in p.blocks if b != block)
            split = CoalitionStructure(rest + tuple((i,) for i in block))
            together = category1_distribution(game4, p)
            apart = category1_distribution(game4, split)
            total_together = sum(together.values[game4.index(i)] for i in block)
            total_apart = sum(apart.values[game4.index(i)] for i in block)
            assert total_together < total_apart


def test_gamma_core_membership_of_w_value(game4):
    report = gamma_core_test(game4, w_value(game4))
    assert len(report.rows) == 2**4 - 1
    by_coalition = {row.coalition: row for row in report.rows}
    pair = by_coalition[(1, 2)]
    assert pair.nash_welfare == pytest.approx(16.854, abs=2e-3)
    assert pair.candidate_welfare == pytest.approx(21.861, abs=2e-3)
    assert pair.surplus == pytest.approx(5.007, abs=2e-3)
    assert by_coalition[(1,)].surplus == pytest.approx(2.962, abs=2e-3)
    full = by_coalition[(1, 2, 3, 4)]
    assert abs(full.surplus) <= 1e-9
    assert report.in_core


def test_gamma_core_rows_use_gamma_structures(game4):
    report = gamma_core_test(game4, w_value(game4))
    for row in report.rows:
        assert row.coalition in row.structure.blocks
        others = [b for b in row.structure.blocks if b != row.coalition]
        assert all(len(b) == 1 for b in others)
        assert len(row.structure) == 4 - len(row.coalition) + 1


def test_gamma_core_rejects_bad_candidates(game4):
    wv = w_value(game4)
    from dataclasses import replace

    short = replace(wv, values=wv.values[:3])
    with pytest.raises(ValueError):
        gamma_core_test(game4, short)
    inefficient = replace(wv, values=tuple(v + 1.0 for v in wv.values))
    with pytest.raises(ValueError):
        gamma_core_test(game4, inefficient)


def test_gamma_core_detects_blocked_allocations(game4):
    # starving agent 1 below its standalone payoff must be blocked
    wv = w_value(game4)
    from dataclasses import replace

    values = list(wv.values)
    values[0] -= 10.0
    values[1] += 10.0
    report = gamma_core_test(game4, replace(wv, values=tuple(values)))
    assert not report.in_core


def test_allocation_from_welfare_recovers_w_ipa(game4):
    wv = w_value(game4)
    allocation = w_ipa(game4)
    rebuilt = allocation_from_welfare(game4, wv.values, sum(allocation))
    assert list(rebuilt) == pytest.approx(list(allocation), abs=1e-9)


def test_allocation_from_welfare_sum_identity(game4):
    total = pareto_optimum(game4).total_welfare
    equal_split = tuple(total / 4 for _ in range(4))
    s_bar = 1.380
    allocation = allocation_from_welfare(game4, equal_split, s_bar)
    assert abs(sum(allocation) - s_bar) <= 1e-12


def test_allocation_from_welfare_round_trip_random(game4):
    pareto = pareto_optimum(game4)
    schedule = optimal_prices(game4, pareto)
    rng = np.random.default_rng(23)
    for _ in range(20):
        allocation = tuple(rng.uniform(0.01, 3.0, size=4))
        welfare = tuple(
            w + transfer(game4, schedule, pareto.emissions, allocation, i)
            for i, w in zip(game4.ids, pareto.gross_welfare)
        )
        rebuilt = allocation_from_welfare(game4, welfare, sum(allocation))
        assert list(rebuilt) == pytest.approx(list(allocation), abs=1e-9)


def test_allocation_from_welfare_infeasible_target(game4):
    with pytest.raises(InfeasibleTargetError):
        allocation_from_welfare(game4, (10.0, 10.0, 10.0, 10.0), 1.38)


def test_allocation_from_welfare_dimension_check(game4):
    with pytest.raises(ValueError):
        allocation_from_welfare(game4, (1.0, 2.0), 1.0)
