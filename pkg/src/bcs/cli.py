"""Command-line surface: solve, limits, check, automaton, conjecture, bids, play.

Exit codes: 0 on success, 1 when an invariant or ruleset check fails,
2 on usage errors, 3 when convergence is not reached by its bound.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import analysis, automaton, general, solver
from .core import (
    GameError,
    OutcomeRow,
    OutcomeTable,
    Side,
    classify_bid,
    make_position,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NO_CONVERGENCE = 3


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None or out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _render_value_table(tb: int, rows: list[tuple[int, ...]], first_label: str) -> str:
    header = [first_label] + [str(p) for p in range(tb, -1, -1)]
    body = [
        [str(x)] + [str(row[p]) for p in range(tb, -1, -1)]
        for x, row in enumerate(rows)
    ]
    return _render_columns([header] + body)


def _render_columns(lines: list[list[str]]) -> str:
    widths = [max(len(line[i]) for line in lines) for i in range(len(lines[0]))]
    rendered = [
        "  ".join(cell.rjust(w) for cell, w in zip(line, widths)) for line in lines
    ]
    return "\n".join(rendered) + "\n"


def _render_parity_rows(tb: int, even: Sequence[int], odd: Sequence[int]) -> str:
    lines = [
        ["p^"] + [str(p) for p in range(tb, -1, -1)],
        ["x even"] + [str(even[p]) for p in range(tb, -1, -1)],
        ["x odd"] + [str(odd[p]) for p in range(tb, -1, -1)],
    ]
    return _render_columns(lines)


def _table_json(table: solver.UnitaryTable) -> dict:
    return {
        "schema_version": 1,
        "tb": table.tb,
        "x_max": table.x_max,
        "rows": [
            {"x": x, "values": list(table.row(x))} for x in range(table.x_max + 1)
        ],
    }


def load_outcome_table_json(data: dict) -> OutcomeTable:
    """Rebuild an outcome table from the ``solve`` JSON schema."""
    if data.get("schema_version") != 1:
        raise ValueError(f"unsupported schema_version {data.get('schema_version')!r}")
    rows = tuple(
        OutcomeRow(heap=entry["x"], marker_left_values=tuple(entry["values"]))
        for entry in data["rows"]
    )
    return OutcomeTable(tb=data["tb"], rows=rows)


def cmd_solve(args: argparse.Namespace) -> int:
    table = solver.solve(args.tb, args.x_max)
    if args.format == "csv":
        lines = ["x,p,marker,value"]
        for x in range(table.x_max + 1):
            row = table.row(x)
            for p in range(table.tb + 1):
                lines.append(f"{x},{p},L,{row[p]}")
        _emit("\n".join(lines) + "\n", args.out)
    elif args.format == "json":
        _emit(json.dumps(_table_json(table), indent=2) + "\n", args.out)
    else:
        rows = [table.row(x) for x in range(table.x_max + 1)]
        _emit(_render_value_table(table.tb, rows, "x \\ p^"), args.out)
    return EXIT_OK


def cmd_limits(args: argparse.Namespace) -> int:
    bound = automaton.convergence_bound(args.tb)
    try:
        limits = solver.limit_rows(args.tb)
    except solver.ConvergenceBoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    if args.format == "json":
        payload = {
            "schema_version": 1,
            "tb": args.tb,
            "bound": bound,
            "x_star": limits.x_star,
            "even": list(limits.even_row),
            "odd": list(limits.odd_row),
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        text = f"tb = {args.tb}  B(tb) = {bound}  x_star = {limits.x_star}\n"
        text += _render_parity_rows(args.tb, limits.even_row, limits.odd_row)
        _emit(text, args.out)
    return EXIT_OK


def _report_payload(report: analysis.InvariantReport) -> dict:
    cex = None
    if report.counterexample is not None:
        c = report.counterexample
        cex = {"x": c.x, "p": c.p, "values": list(c.values), "note": c.note}
    return {
        "name": report.name,
        "tb": report.tb,
        "x_max": report.x_max,
        "passed": report.passed,
        "counterexample": cex,
    }


def _check_ruleset(args: argparse.Namespace) -> int:
    with open(args.ruleset, encoding="utf-8") as fh:
        ruleset = general.parse_ruleset(fh.read())
    report = general.check_property_U(ruleset)
    if args.format == "json":
        payload = {
            "schema_version": 1,
            "holds": report.holds,
            "violations": [
                {
                    "property": v.prop,
                    "position": str(v.node),
                    "budgets": list(v.budgets),
                    "lhs": v.lhs,
                    "rhs": v.rhs,
                    "detail": v.detail,
                }
                for v in report.violations
            ],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = []
        if report.holds:
            lines.append("uniqueness properties hold")
        for v in report.violations:
            relation = ">" if v.prop == "C" else "<"
            lines.append(
                f"FAIL property {v.prop} at {v.node} budgets={v.budgets}: "
                f"{v.lhs} {relation} {v.rhs}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if report.holds else EXIT_CHECK_FAILED


def cmd_check(args: argparse.Namespace) -> int:
    if args.ruleset is not None:
        return _check_ruleset(args)

    if args.from_json is not None:
        with open(args.from_json, encoding="utf-8") as fh:
            table: analysis.Table = load_outcome_table_json(json.load(fh))
        reports = analysis.run_invariant_suite_on(table)
    else:
        if args.tb is None:
            print("error: check needs --tb, --ruleset, or --from-json", file=sys.stderr)
            return EXIT_USAGE
        x_max = args.x_max
        if x_max is None:
            x_max = automaton.convergence_bound(args.tb) + 2
        reports = analysis.run_invariant_suite(args.tb, x_max)
        if args.with_oracle:
            reports.append(analysis.check_oracle_equivalence(args.tb, min(x_max, 40)))

    if args.format == "json":
        payload = {
            "schema_version": 1,
            "reports": [_report_payload(r) for r in reports],
            "passed": all(r.passed for r in reports),
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit("\n".join(str(r) for r in reports) + "\n", args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED


def cmd_automaton(args: argparse.Namespace) -> int:
    tb = args.tb
    bound = automaton.convergence_bound(tb)
    tables = {}
    if tb % 2 == 0:
        tables["alpha"] = automaton.automaton_fixed_point(tb)
    else:
        for mode in automaton.BETA_MODES:
            tables[f"beta_{mode}"] = automaton.automaton_fixed_point(
                tb, beta_mode=mode
            )
    if args.format == "json":
        payload = {
            "schema_version": 1,
            "tb": tb,
            "bound": bound,
            "tables": {
                name: {"even": list(t.even_state), "odd": list(t.odd_state)}
                for name, t in tables.items()
            },
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        text = f"tb = {tb}  B(tb) = {bound}\n"
        for name, t in tables.items():
            text += f"seed {name} (update rule: "
            text += "holds)\n" if t.update_rule_holds() else "FAILS)\n"
            text += _render_parity_rows(tb, t.even_state, t.odd_state)
        _emit(text, args.out)
    return EXIT_OK


def cmd_conjecture(args: argparse.Namespace) -> int:
    try:
        report = automaton.conjecture_report(args.tb)
    except solver.ConvergenceBoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    if args.format == "json":
        payload = {
            "schema_version": 1,
            "tb": report.tb,
            "bound": report.bound,
            "x_star": report.x_star,
            "even": list(report.even_row),
            "odd": list(report.odd_row),
            "update_rule_holds": report.update_rule_holds,
            "matches": report.matches,
            "diffs": {
                name: [list(d) for d in cells] for name, cells in report.diffs.items()
            },
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [
            f"tb = {report.tb}  B(tb) = {report.bound}  x_star = {report.x_star}",
            f"update rule on solver limits: "
            f"{'holds' if report.update_rule_holds else 'FAILS'}",
        ]
        for name, verdict in report.matches.items():
            lines.append(f"{name}: {verdict}")
            for parity, p, limit, entry in report.diffs.get(name, ()):
                lines.append(f"  {parity} p={p}: limit {limit} vs automaton {entry}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if report.update_rule_holds else EXIT_CHECK_FAILED


_KINDS = {
    "tie": analysis.BidGraphKind.TIE,
    "holder-win": analysis.BidGraphKind.HOLDER_WIN,
    "opponent-win": analysis.BidGraphKind.OPPONENT_WIN,
}


def cmd_bids(args: argparse.Namespace) -> int:
    graph = analysis.bid_graph(args.tb, _KINDS[args.kind], args.bid, args.reduced)
    if args.format == "json":
        _emit(
            json.dumps(analysis.bid_graph_to_json_dict(graph), indent=2) + "\n",
            args.out,
        )
    else:
        _emit(analysis.bid_graph_to_dot(graph), args.out)
    return EXIT_OK


def _engine_bid(table: solver.UnitaryTable, pos, engine_side: Side) -> int:
    canonical = min(solver.equilibrium_bids(table, pos))
    return canonical.left_bid if engine_side is Side.LEFT else canonical.right_bid


def cmd_play(args: argparse.Namespace) -> int:
    engine_side = Side.LEFT if args.engine_side == "L" else Side.RIGHT
    marker = Side.LEFT if args.marker == "L" else Side.RIGHT
    human_side = engine_side.opponent
    table = solver.solve(args.tb, args.x)
    pos = make_position(args.tb, args.x, args.p, marker)
    score = 0
    print(f"you play {human_side.name.title()}; the engine plays "
          f"{engine_side.name.title()}; bids are sealed")
    while pos.heap > 0:
        print(
            f"heap={pos.heap} score={score:+d} budgets L={pos.left_budget} "
            f"R={pos.right_budget} marker={pos.marker}"
        )
        engine_bid = _engine_bid(table, pos, engine_side)
        budget = (
            pos.left_budget if human_side is Side.LEFT else pos.right_budget
        )
        human_bid = None
        while human_bid is None:
            try:
                raw = input(f"your bid ({human_side.name.title()}, 0..{budget}): ")
            except EOFError:
                print("\naborted")
                return EXIT_OK
            try:
                n = int(raw.strip())
            except ValueError:
                print("enter a whole number of dollars")
                continue
            if 0 <= n <= budget:
                human_bid = n
            else:
                print(f"bid must be within 0..{budget}")
        if engine_side is Side.LEFT:
            l, r = engine_bid, human_bid
        else:
            l, r = human_bid, engine_bid
        bid, after = classify_bid(pos, l, r)
        winner = bid.winner.side
        removal = 1 if winner is Side.LEFT else -1
        score += removal
        how = "wins the tie" if bid.winner.is_tie else "wins the bid"
        print(
            f"bids: L={l} R={r} -> {winner.name.title()} {how}, removes a pebble"
            + (f", marker -> {after.marker}" if bid.winner.is_tie else "")
        )
        pos = make_position(args.tb, pos.heap - 1, after.left_budget, after.marker)
    print(f"game over, final score {score:+d}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcs",
        description=(
            "Exact equilibrium tables, limit rows, invariant checks, bid "
            "graphs, and interactive play for discrete-bid Richman games on "
            "pebble heaps."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a value table")
    p_solve.add_argument("--tb", type=int, required=True)
    p_solve.add_argument("--x-max", type=int, required=True)
    p_solve.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p_solve.add_argument("--out", default=None)
    p_solve.set_defaults(func=cmd_solve)

    p_limits = sub.add_parser("limits", help="stabilized per-parity rows")
    p_limits.add_argument("--tb", type=int, required=True)
    p_limits.add_argument("--format", choices=("table", "json"), default="table")
    p_limits.add_argument("--out", default=None)
    p_limits.set_defaults(func=cmd_limits)

    p_check = sub.add_parser("check", help="run invariant or ruleset checks")
    p_check.add_argument("--tb", type=int, default=None)
    p_check.add_argument("--x-max", type=int, default=None)
    p_check.add_argument("--with-oracle", action="store_true")
    p_check.add_argument("--ruleset", default=None, help="check a ruleset file")
    p_check.add_argument("--from-json", default=None, help="check a solved table")
    p_check.add_argument("--format", choices=("text", "json"), default="text")
    p_check.add_argument("--out", default=None)
    p_check.set_defaults(func=cmd_check)

    p_auto = sub.add_parser("automaton", help="zero-bid automaton tables")
    p_auto.add_argument("--tb", type=int, required=True)
    p_auto.add_argument("--format", choices=("table", "json"), default="table")
    p_auto.add_argument("--out", default=None)
    p_auto.set_defaults(func=cmd_automaton)

    p_conj = sub.add_parser("conjecture", help="limit rows vs automaton entries")
    p_conj.add_argument("--tb", type=int, required=True)
    p_conj.add_argument("--format", choices=("text", "json"), default="text")
    p_conj.add_argument("--out", default=None)
    p_conj.set_defaults(func=cmd_conjecture)

    p_bids = sub.add_parser("bids", help="export a bid graph")
    p_bids.add_argument("--tb", type=int, required=True)
    p_bids.add_argument("--kind", choices=sorted(_KINDS), required=True)
    p_bids.add_argument("--bid", type=int, required=True)
    p_bids.add_argument("--reduced", action="store_true")
    p_bids.add_argument("--format", choices=("dot", "json"), default="dot")
    p_bids.add_argument("--out", default=None)
    p_bids.set_defaults(func=cmd_bids)

    p_play = sub.add_parser("play", help="play against the engine")
    p_play.add_argument("--tb", type=int, required=True)
    p_play.add_argument("--x", type=int, required=True)
    p_play.add_argument("--p", type=int, required=True, help="Left's dollars")
    p_play.add_argument("--marker", choices=("L", "R"), required=True)
    p_play.add_argument("--engine-side", choices=("L", "R"), required=True)
    p_play.set_defaults(func=cmd_play)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
