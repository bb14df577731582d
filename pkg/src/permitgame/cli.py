"""Command-line interface.

    permitgame [--game FILE] [--format human|csv|json] [--tolerance X] COMMAND

Commands: validate, nash --partition SPEC, pareto, prices, wvalue,
gamma-core, report --table {4,5,6,7}. Without --game the bundled four-agent
example is used. Exit codes: 0 ok, 1 report mismatch, 2 input error,
3 solver failure, 4 missing or unusable golden fixture.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import replace

from . import tables
from .equilibrium import SolverError, nash_equilibrium, pareto_optimum
from .gamefile import example_game_path, load_game
from .model import Game, validate
from .oracle import OracleError
from .partition import CoalitionStructure
from .pricing import net_price_condition, optimal_prices
from .solution import gamma_core_test, w_value
from .tables import fmt3

EXIT_OK = 0
EXIT_DIFF = 1
EXIT_INPUT = 2
EXIT_SOLVER = 3
EXIT_FIXTURE = 4


def _paint(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=False))


def _emit_csv(header, rows) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _grid(headers: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[k]) for r in rows)) if rows else len(h) for k, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(widths[k]) for k, h in enumerate(headers)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for r in rows:
        lines.append("  ".join(r[k].ljust(widths[k]) for k in range(len(headers))).rstrip())
    return "\n".join(lines)


def cmd_validate(game: Game, args) -> int:
    violations = validate(game)
    if args.format == "json":
        _emit_json(
            {
                "valid": not violations,
                "violations": [{"agent_id": v.agent_id, "message": v.message} for v in violations],
            }
        )
    elif args.format == "csv":
        _emit_csv(["agent_id", "message"], [[v.agent_id, v.message] for v in violations])
    else:
        if violations:
            for v in violations:
                print(f"agent {v.agent_id}: {v.message}")
        else:
            print(f"ok: {game.n} agents, s0={game.s0}, tolerance={game.tolerance}")
    return EXIT_INPUT if violations else EXIT_OK


def _outcome_payload(game: Game, outcome) -> dict:
    return {
        "structure": str(outcome.structure),
        "emissions": list(outcome.emissions),
        "total_stock": outcome.total_stock,
        "gross_welfare": list(outcome.gross_welfare),
        "total_welfare": outcome.total_welfare,
        "converged": outcome.converged,
        "iterations": outcome.iterations,
    }


def _print_outcome(game: Game, outcome, args) -> None:
    if args.format == "json":
        _emit_json(_outcome_payload(game, outcome))
        return
    if args.format == "csv":
        rows = [
            [i, repr(outcome.emissions[game.index(i)]), repr(outcome.gross_welfare[game.index(i)])]
            for i in sorted(game.ids)
        ]
        rows.append(["total", repr(outcome.total_stock), repr(outcome.total_welfare)])
        _emit_csv(["agent", "emission", "gross_welfare"], rows)
        return
    print(f"structure: {outcome.structure}")
    rows = [
        [str(i), fmt3(outcome.emissions[game.index(i)]), fmt3(outcome.gross_welfare[game.index(i)])]
        for i in sorted(game.ids)
    ]
    print(_grid(["agent", "emission", "welfare"], rows))
    print(
        f"total stock S = {fmt3(outcome.total_stock)}; "
        f"total welfare = {fmt3(outcome.total_welfare)}; iterations = {outcome.iterations}"
    )


def cmd_nash(game: Game, args) -> int:
    structure = CoalitionStructure.from_string(args.partition)
    if structure.n != game.n:
        raise ValueError(f"partition covers {structure.n} agents, game has {game.n}")
    _print_outcome(game, nash_equilibrium(game, structure), args)
    return EXIT_OK


def cmd_pareto(game: Game, args) -> int:
    _print_outcome(game, pareto_optimum(game), args)
    return EXIT_OK


def cmd_prices(game: Game, args) -> int:
    pareto = pareto_optimum(game)
    schedule = optimal_prices(game, pareto)
    residuals = net_price_condition(game, schedule, pareto.total_stock)
    if args.format == "json":
        _emit_json(
            {
                "t": schedule.t,
                "T": list(schedule.T),
                "t_bar": list(schedule.t_bar),
                "total_stock": pareto.total_stock,
                "net_price_residuals": list(residuals),
            }
        )
    elif args.format == "csv":
        _emit_csv(
            ["agent", "T", "net_price", "residual"],
            [
                [i, repr(schedule.T[game.index(i)]), repr(schedule.t - schedule.T[game.index(i)]), repr(residuals[game.index(i)])]
                for i in sorted(game.ids)
            ],
        )
    else:
        print(f"optimal stock S* = {fmt3(pareto.total_stock)}; permit price t = {fmt3(schedule.t)}")
        rows = [
            [str(i), fmt3(schedule.T[game.index(i)]), fmt3(schedule.t - schedule.T[game.index(i)]), f"{residuals[game.index(i)]:.1e}"]
            for i in sorted(game.ids)
        ]
        print(_grid(["agent", "T", "t - T", "residual"], rows))
    return EXIT_OK


def cmd_wvalue(game: Game, args) -> int:
    singles = nash_equilibrium(game, CoalitionStructure.singletons(game.n))
    pareto = pareto_optimum(game)
    schedule = optimal_prices(game, pareto)
    wv = w_value(game)
    improvement = tuple(v - w for v, w in zip(wv.values, singles.gross_welfare))
    if args.format == "json":
        _emit_json(
            {
                "s_tilde": list(singles.emissions),
                "s_star": list(pareto.emissions),
                "t": schedule.t,
                "T": list(schedule.T),
                "w_value": list(wv.values),
                "nash_welfare": list(singles.gross_welfare),
                "improvement": list(improvement),
                "total": wv.total,
            }
        )
    elif args.format == "csv":
        _emit_csv(
            ["agent", "s_tilde", "s_star", "T", "w_value", "nash_welfare", "improvement"],
            [
                [
                    i,
                    repr(singles.emissions[game.index(i)]),
                    repr(pareto.emissions[game.index(i)]),
                    repr(schedule.T[game.index(i)]),
                    repr(wv.values[game.index(i)]),
                    repr(singles.gross_welfare[game.index(i)]),
                    repr(improvement[game.index(i)]),
                ]
                for i in sorted(game.ids)
            ],
        )
    else:
        print(f"permit price t = {fmt3(schedule.t)}")
        rows = [
            [
                str(i),
                fmt3(singles.emissions[game.index(i)]),
                fmt3(pareto.emissions[game.index(i)]),
                fmt3(schedule.T[game.index(i)]),
                fmt3(wv.values[game.index(i)]),
                fmt3(singles.gross_welfare[game.index(i)]),
                fmt3(improvement[game.index(i)]),
            ]
            for i in sorted(game.ids)
        ]
        print(_grid(["agent", "s_tilde", "s_star", "T", "w_value", "nash", "gain"], rows))
        print(f"total w-value = {fmt3(wv.total)} (optimal total welfare)")
    return EXIT_OK


def cmd_gamma_core(game: Game, args) -> int:
    wv = w_value(game)
    report = gamma_core_test(game, wv)
    if args.format == "json":
        _emit_json(
            {
                "candidate": list(wv.values),
                "in_core": report.in_core,
                "rows": [
                    {
                        "coalition": list(r.coalition),
                        "structure": str(r.structure),
                        "nash_welfare": r.nash_welfare,
                        "candidate_welfare": r.candidate_welfare,
                        "surplus": r.surplus,
                    }
                    for r in report.rows
                ],
            }
        )
    elif args.format == "csv":
        _emit_csv(
            ["coalition", "structure", "nash_welfare", "candidate_welfare", "surplus"],
            [
                [
                    ",".join(str(i) for i in r.coalition),
                    str(r.structure),
                    repr(r.nash_welfare),
                    repr(r.candidate_welfare),
                    repr(r.surplus),
                ]
                for r in report.rows
            ],
        )
    else:
        rows = [
            [
                "{" + ",".join(str(i) for i in r.coalition) + "}",
                str(r.structure),
                fmt3(r.nash_welfare),
                fmt3(r.candidate_welfare),
                fmt3(r.surplus),
            ]
            for r in report.rows
        ]
        print(_grid(["coalition", "structure", "standalone", "candidate", "surplus"], rows))
        verdict = "yes" if report.in_core else "no"
        print(f"w-value in gamma core: {_paint(verdict, '32' if report.in_core else '31')}")
    return EXIT_OK


def cmd_report(game: Game, args) -> int:
    try:
        report = tables.build_report(game, args.table, args.golden_dir)
    except (FileNotFoundError, tables.FixtureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FIXTURE
    if args.format == "json":
        _emit_json(
            {
                "table": report.table_id,
                "passed": report.passed,
                "compared": report.compared,
                "rows": [
                    {
                        "row": r.key,
                        "cells": [
                            {
                                "name": c.name,
                                "computed": c.computed,
                                "golden": c.golden,
                                "flagged": c.flagged,
                                "ok": c.ok,
                                "note": c.note,
                            }
                            for c in r.cells
                        ],
                    }
                    for r in report.rows
                ],
            }
        )
    elif args.format == "csv":
        _emit_csv(
            ["row", "cell", "computed", "golden", "flagged", "ok"],
            [
                [r.key, c.name, repr(c.computed), repr(c.golden), c.flagged, c.ok]
                for r in report.rows
                for c in r.cells
            ],
        )
    else:
        _print_report_human(report)
    return EXIT_OK if report.passed else EXIT_DIFF


def _print_report_human(report: tables.TableReport) -> None:
    columns: list[str] = []
    for row in report.rows:
        for cell in row.cells:
            if cell.name not in columns:
                columns.append(cell.name)
    grid_rows = []
    for row in report.rows:
        by_name = {c.name: c for c in row.cells}
        line = [row.key]
        for name in columns:
            cell = by_name.get(name)
            if cell is None:
                line.append("")
            else:
                mark = "*" if cell.flagged else ("" if cell.ok else "!")
                line.append(fmt3(cell.computed) + mark)
        grid_rows.append(line)
    print(f"table {report.table_id} (computed values; * flagged, ! mismatch)")
    print(_grid(["row"] + columns, grid_rows))
    if report.flagged:
        print("flagged cells (excluded from pass/fail):")
        for key, cell in report.flagged:
            print(
                f"  {key}/{cell.name}: fixture {fmt3(cell.golden)} vs computed {fmt3(cell.computed)}"
                + (f" ({cell.note})" if cell.note else "")
            )
    for cell_owner, cell in ((r.key, c) for r in report.rows for c in r.cells):
        if not cell.flagged and not cell.ok:
            print(f"mismatch {cell_owner}/{cell.name}: computed {fmt3(cell.computed)} vs golden {fmt3(cell.golden)}")
    status = "PASS" if report.passed else "FAIL"
    print(
        f"{_paint(status, '32' if report.passed else '31')}: "
        f"{report.compared - len(report.mismatches)}/{report.compared} comparable cells within "
        f"{tables.CELL_TOLERANCE} after rounding"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permitgame",
        description="Equilibria, permit prices and welfare distributions for emission games.",
    )
    parser.add_argument("--game", metavar="FILE", help="game file (default: bundled 4-agent example)")
    parser.add_argument("--format", choices=("human", "csv", "json"), default="human")
    parser.add_argument("--tolerance", type=float, metavar="X", help="override the solver tolerance")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", help="check the game against the model constraints")
    p_nash = sub.add_parser("nash", help="equilibrium under a coalition structure")
    p_nash.add_argument("--partition", required=True, metavar="SPEC", help='e.g. "[1,2],[3],[4]"')
    sub.add_parser("pareto", help="welfare-maximizing emission profile")
    sub.add_parser("prices", help="optimal price schedule at the Pareto stock")
    sub.add_parser("wvalue", help="w-value distribution and its ingredients")
    sub.add_parser("gamma-core", help="blocking test of the w-value against every coalition")
    p_report = sub.add_parser("report", help="reproduce a reference table and diff against the fixture")
    p_report.add_argument("--table", type=int, choices=tables.TABLE_IDS, required=True)
    p_report.add_argument("--golden-dir", metavar="DIR", default=None, help=argparse.SUPPRESS)
    return parser


COMMANDS = {
    "validate": cmd_validate,
    "nash": cmd_nash,
    "pareto": cmd_pareto,
    "prices": cmd_prices,
    "wvalue": cmd_wvalue,
    "gamma-core": cmd_gamma_core,
    "report": cmd_report,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        game = load_game(args.game if args.game else example_game_path())
        if args.tolerance is not None:
            game = replace(game, tolerance=args.tolerance)
        return COMMANDS[args.command](game, args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SolverError, OracleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
