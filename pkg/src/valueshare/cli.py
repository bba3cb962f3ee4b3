"""Command-line front end.

Exit codes: 0 success / all properties hold, 1 a property fails, 2 bad
input, 3 refused because the instance is too large to enumerate.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import analysis
from .game import (
    MAX_ORDER_PLAYERS,
    ArrivalOrder,
    Game,
    GameError,
    SizeLimitError,
    all_orders,
    format_fraction,
    load_game,
)
from .mechanisms import (
    Mechanism,
    MechanismError,
    WeightFunction,
    general_allocate,
    get_mechanism,
    layered,
    online_run,
)
from .shapley import decompose_layers, shapley_permutation, shapley_subset
from .structure import is_solvable, minimal_critical_prefix, order_structure
from .sweep import (
    SWEEP_PROPERTIES,
    enumerate_zero_one_monotone_games,
    run_sweep,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_SIZE = 0, 1, 2, 3
VERIFY_PROPERTIES = ("efficiency", "oir", "sf", "i4ea", "mos", "critical_support", "solvable")


@dataclass
class RunConfig:
    game: Game | None
    mechanism: Mechanism | None
    order: ArrivalOrder | None
    fmt: str
    decimals: int | None
    strict_i4ea: bool = False
    seed: int = 0


def _weights_for(name: str, text: str | None, game: Game | None) -> WeightFunction | None:
    if name.lower() != "wvs":
        if text is not None:
            raise MechanismError(f"--weights only applies to wvs, not {name!r}")
        return None
    if text is None:
        raise MechanismError("wvs needs --weights")
    w = WeightFunction.parse(text)
    if game is not None and len(w) < game.n:
        raise MechanismError(f"wvs needs at least {game.n} weights for this game, got {len(w)}")
    return w


def _config(args: argparse.Namespace) -> RunConfig:
    game = load_game(args.game) if getattr(args, "game", None) else None
    mechanism = None
    if getattr(args, "mechanism", None):
        mechanism = get_mechanism(args.mechanism, _weights_for(args.mechanism, args.weights, game))
    elif getattr(args, "weights", None):
        raise MechanismError("--weights given without --mechanism wvs")
    order = None
    if getattr(args, "order", None):
        order = ArrivalOrder.from_labels(game, args.order)
    return RunConfig(
        game,
        mechanism,
        order,
        args.format,
        args.decimals,
        getattr(args, "strict_i4ea", False),
        getattr(args, "seed", 0),
    )


def _num(value: Fraction, decimals: int | None) -> str:
    text = format_fraction(value)
    if decimals is not None:
        text += f" ({float(value):.{decimals}f})"
    return text


def _shares_text(labels: Sequence[str], values: Sequence[Fraction], decimals: int | None) -> str:
    return " ".join(f"{lab}={_num(v, decimals)}" for lab, v in zip(labels, values))


def _dump(doc: Any, out) -> None:
    out.write(json.dumps(doc, indent=2) + "\n")


def _labels(game: Game, players: Sequence[int]) -> list[str]:
    return [game.labels[i] for i in players]


# -- subcommands -------------------------------------------------------------


def cmd_shapley(cfg: RunConfig, out) -> int:
    g = cfg.game
    sub = shapley_subset(g)
    notice = None
    if g.n <= MAX_ORDER_PLAYERS:
        perm = shapley_permutation(g)
        if perm != sub:
            raise AssertionError("Shapley oracles disagree")
    else:
        notice = f"n={g.n} is too large for the permutation form; subset form only"
    if cfg.fmt == "json":
        doc = {"shapley": analysis.rational_map(g.labels, sub.values, cfg.decimals),
               "oracles": ["subset"] if notice else ["permutation", "subset"]}
        if notice:
            doc["notice"] = notice
        _dump(doc, out)
    elif cfg.fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["player", "shapley"])
        for lab, v in zip(g.labels, sub.values):
            writer.writerow([lab, format_fraction(v)])
    else:
        if notice:
            out.write(f"notice: {notice}\n")
        out.write(_shares_text(g.labels, sub.values, cfg.decimals) + "\n")
    return EXIT_OK


def _structure_record(g: Game, order: ArrivalOrder) -> dict[str, Any]:
    st = order_structure(g, order)
    rec: dict[str, Any] = {
        "order": "-".join(order.labels(g)),
        "critical": _labels(g, st.critical),
        "marginal": None if st.marginal is None else g.labels[st.marginal],
        "mcp": None,
        "mcp_critical": None,
    }
    if st.marginal is not None:
        mcp = minimal_critical_prefix(g, order)
        rec["mcp"] = "-".join(_labels(g, mcp.players))
        rec["mcp_critical"] = mcp.local_critical_count
    return rec


def cmd_structure(cfg: RunConfig, out) -> int:
    g = cfg.game
    g.require_zero_one_monotone()
    orders = [cfg.order] if cfg.order else list(all_orders(g.n))
    records = [_structure_record(g, o) for o in orders]
    if cfg.fmt == "json":
        _dump(records, out)
    elif cfg.fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=list(records[0]), lineterminator="\n")
        writer.writeheader()
        for r in records:
            writer.writerow({**r, "critical": ",".join(r["critical"])})
    else:
        for r in records:
            out.write(
                f"{r['order']}: critical {','.join(r['critical']) or '-'}; "
                f"marginal {r['marginal'] or '-'}; mcp {r['mcp'] or '-'}"
                + (f" (m'={r['mcp_critical']})" if r["mcp"] else "")
                + "\n"
            )
    return EXIT_OK


def cmd_solvable(cfg: RunConfig, out) -> int:
    g = cfg.game
    res = is_solvable(g)
    doc: dict[str, Any] = {"solvable": res.solvable}
    if not res.solvable:
        doc["witness"] = {"player": g.labels[res.player], "coalition": g.render(res.coalition).split(",")}
    if cfg.fmt == "json":
        _dump(doc, out)
    elif res.solvable:
        out.write("solvable\n")
    else:
        out.write(
            f"unsolvable: {g.labels[res.player]} is the only critical player of "
            f"{{{g.render(res.coalition)}}} but worthless alone\n"
        )
    return EXIT_OK if res.solvable else EXIT_FAIL


def cmd_run(cfg: RunConfig, out) -> int:
    g = cfg.game
    if cfg.order is None:
        raise GameError("run needs --order")
    mechanism = cfg.mechanism if g.is_zero_one else layered(cfg.mechanism)
    trace = online_run(g, cfg.order, mechanism)
    st = order_structure(g, cfg.order) if g.is_zero_one and g.is_monotone else None
    crit = set(_labels(g, st.critical)) if st else set()
    marginal = g.labels[st.marginal] if st and st.marginal is not None else None

    def mark(lab: str) -> str:
        return lab + ("*" if lab == marginal else "+" if lab in crit else "")

    final = trace.final()
    if cfg.fmt == "json":
        _dump(
            {
                "mechanism": mechanism.name,
                "order": list(trace.order),
                "critical": sorted(crit, key=trace.order.index),
                "marginal": marginal,
                "steps": [
                    {
                        "arrival": s.player,
                        "local_value": format_fraction(s.local_value),
                        "shares": analysis.rational_map(s.allocation.labels, s.allocation.values, cfg.decimals),
                        "warning": s.allocation.warning,
                    }
                    for s in trace.steps
                ],
                "final": analysis.rational_map(final.labels, final.values, cfg.decimals),
            },
            out,
        )
    elif cfg.fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["step", "arrival", "player", "share"])
        for k, s in enumerate(trace.steps, start=1):
            for lab, v in zip(s.allocation.labels, s.allocation.values):
                writer.writerow([k, s.player, lab, format_fraction(v)])
    else:
        out.write(f"mechanism {mechanism.name}; order {'-'.join(trace.order)}\n")
        for k, s in enumerate(trace.steps, start=1):
            alloc = s.allocation
            body = " ".join(
                f"{mark(lab)}={_num(v, cfg.decimals)}" for lab, v in zip(alloc.labels, alloc.values)
            )
            out.write(f"{k}. +{s.player} (v={format_fraction(s.local_value)}): {body}\n")
            if alloc.warning:
                out.write("   WARNING: v is not solvable; marginal player takes the whole value\n")
        out.write("final: " + _shares_text(final.labels, final.values, cfg.decimals) + "\n")
    return EXIT_OK


def _size_guard(g: Game) -> None:
    if g.n > MAX_ORDER_PLAYERS:
        raise SizeLimitError(f"{g.n}! orders is beyond the limit of n <= {MAX_ORDER_PLAYERS}")


def cmd_table(cfg: RunConfig, out, long_form: bool = False) -> int:
    g = cfg.game
    _size_guard(g)
    mechanism = cfg.mechanism if g.is_zero_one else layered(cfg.mechanism)
    if long_form:
        rows = analysis.allocation_rows(g, mechanism)
        writer = csv.DictWriter(out, fieldnames=list(analysis.ALLOCATION_CSV_COLUMNS), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return EXIT_OK
    report = analysis.expected_metrics(g, mechanism)
    zero_one = g.is_zero_one and g.is_monotone
    records = []
    for row, order in zip(report.rows, all_orders(g.n)):
        rec = _structure_record(g, order) if zero_one else {"order": "-".join(row.order)}
        rec["shares"] = {lab: v for lab, v in zip(row.allocation.labels, row.allocation.values)}
        rec["warning"] = row.allocation.warning
        rec["sd"] = row.sd
        rec["ew"] = row.ew
        records.append(rec)
    if cfg.fmt == "csv":
        fields = ["order", "critical", "marginal", "mcp"] + [f"share_{lab}" for lab in g.labels] + ["sd", "ew", "warning"]
        if cfg.decimals is not None:
            fields += [f"share_{lab}_decimal" for lab in g.labels]
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for rec in records:
            line = {
                "order": rec["order"],
                "critical": ",".join(rec.get("critical") or []),
                "marginal": rec.get("marginal") or "",
                "mcp": rec.get("mcp") or "",
                "sd": format_fraction(rec["sd"]),
                "ew": "" if rec["ew"] is None else format_fraction(rec["ew"]),
                "warning": str(rec["warning"]).lower(),
            }
            for lab, v in rec["shares"].items():
                line[f"share_{lab}"] = format_fraction(v)
                if cfg.decimals is not None:
                    line[f"share_{lab}_decimal"] = f"{float(v):.{cfg.decimals}f}"
            writer.writerow(line)
    elif cfg.fmt == "json":
        doc = report.to_document(cfg.decimals)
        doc["rows"] = [
            {
                **{k: v for k, v in rec.items() if k not in ("shares", "sd", "ew")},
                "shares": analysis.rational_map(list(rec["shares"]), list(rec["shares"].values()), cfg.decimals),
                "sd": analysis.rational(rec["sd"], cfg.decimals),
                "ew": None if rec["ew"] is None else analysis.rational(rec["ew"], cfg.decimals),
            }
            for rec in records
        ]
        _dump(doc, out)
    else:
        out.write(f"mechanism {report.mechanism}\n")
        for rec in records:
            shares = " ".join(f"{lab}={_num(v, cfg.decimals)}" for lab, v in rec["shares"].items() if v)
            parts = [rec["order"]]
            if zero_one:
                parts.append(f"CR {','.join(rec['critical']) or '-'}")
                parts.append(f"marginal {rec['marginal'] or '-'}")
                parts.append(f"MCP {rec['mcp'] or '-'}")
            parts.append(shares or "all 0")
            parts.append(f"SD {_num(rec['sd'], cfg.decimals)}")
            parts.append("EW " + ("-" if rec["ew"] is None else _num(rec["ew"], cfg.decimals)))
            if rec["warning"]:
                parts.append("WARNING unsolvable")
            out.write(" | ".join(parts) + "\n")
        out.write(f"expected SD {_num(report.expected_sd, cfg.decimals)}; expected EW "
                  + ("-" if report.expected_ew is None else _num(report.expected_ew, cfg.decimals))
                  + f" over {report.ew_orders} value-creating orders\n")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out, properties: Sequence[str]) -> int:
    g = cfg.game
    _size_guard(g)
    unknown = [p for p in properties if p not in VERIFY_PROPERTIES]
    if unknown:
        raise GameError(f"unknown properties {unknown}; choose from {', '.join(VERIFY_PROPERTIES)}")
    needs_mechanism = [p for p in properties if p != "solvable"]
    if needs_mechanism and cfg.mechanism is None:
        raise MechanismError("verify needs --mechanism for " + ", ".join(needs_mechanism))
    zero_one = g.is_zero_one and g.is_monotone
    mechanism = cfg.mechanism if zero_one or cfg.mechanism is None else layered(cfg.mechanism)
    table = analysis.OrderTable(g, mechanism) if mechanism is not None else None
    results: list[dict[str, Any]] = []
    lines = []
    failed = False
    for prop in properties:
        if prop == "solvable":
            res = is_solvable(g)
            doc: dict[str, Any] = {"property": "solvable", "verdict": "holds" if res else "fails"}
            line = "solvable: " + ("holds" if res else "fails")
            if not res:
                witness = {"player": g.labels[res.player], "coalition": g.render(res.coalition)}
                doc["counterexample"] = witness
                line += f" -- unsolvable, witness {witness['player']} in {{{witness['coalition']}}}"
            failed |= not res.solvable
            results.append(doc)
            lines.append(line)
            continue
        if prop == "efficiency":
            report = analysis.check_efficiency(g, mechanism, table=table)
        elif prop == "oir":
            report = analysis.check_oir(g, mechanism, table=table)
        elif prop == "sf":
            report = analysis.check_sf(g, mechanism, table=table)
        elif prop == "i4ea":
            report = analysis.check_i4ea(g, mechanism, table=table, strict=cfg.strict_i4ea)
        elif prop == "mos":
            report = analysis.check_mos(g, mechanism, table=table)
        else:
            report = analysis.check_critical_support(g, mechanism, table=table)
        failed |= not report.holds
        results.append(report.to_document())
        lines.append(report.render())
    if cfg.fmt == "json":
        _dump({"mechanism": None if mechanism is None else mechanism.name, "results": results}, out)
    else:
        if mechanism is not None:
            out.write(f"mechanism {mechanism.name}\n")
        out.write("\n".join(lines) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


def _parse_mechanism_spec(spec: str, game: Game) -> Mechanism:
    name, _, weights = spec.partition(":")
    return get_mechanism(name, _weights_for(name, weights or None, game))


def cmd_compare(cfg: RunConfig, out, specs: Sequence[str]) -> int:
    g = cfg.game
    _size_guard(g)
    mechanisms = [_parse_mechanism_spec(s, g) for s in specs]
    if not (g.is_zero_one and g.is_monotone):
        mechanisms = [layered(m) for m in mechanisms]
    comparison = analysis.compare_mechanisms(g, mechanisms)
    names = [r.mechanism for r in comparison.reports]
    if cfg.fmt == "json":
        _dump(
            {
                "mechanisms": [r.to_document(cfg.decimals) for r in comparison.reports],
                "ew_dominates": comparison.ew_dominates,
            },
            out,
        )
    elif cfg.fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["mechanism", "expected_sd", "expected_ew"] + [f"ew_ge_{n}" for n in names])
        for r in comparison.reports:
            writer.writerow(
                [r.mechanism, format_fraction(r.expected_sd),
                 "" if r.expected_ew is None else format_fraction(r.expected_ew)]
                + [str(comparison.ew_dominates[r.mechanism][n]).lower() for n in names]
            )
    else:
        for r in comparison.reports:
            ew = "-" if r.expected_ew is None else _num(r.expected_ew, cfg.decimals)
            out.write(f"{r.mechanism}: expected SD {_num(r.expected_sd, cfg.decimals)}; expected EW {ew}\n")
        out.write("per-order EW dominance (row >= column on every order):\n")
        for a in names:
            cells = " ".join(f"{b}:{'yes' if comparison.ew_dominates[a][b] else 'no'}" for b in names)
            out.write(f"  {a}: {cells}\n")
    return EXIT_OK


def cmd_decompose(cfg: RunConfig, out, apply: str | None, weights: str | None, all_orders_flag: bool) -> int:
    g = cfg.game
    dec = decompose_layers(g)
    doc: dict[str, Any] = {
        "layers": [
            {"coefficient": format_fraction(c), "minimal_winning": [list(x) for x in layer.minimal_winning()]}
            for c, layer in dec.layers
        ]
    }
    lines = [f"{len(dec.layers)} layer(s)"]
    for k, (c, layer) in enumerate(dec.layers, start=1):
        mw = " | ".join("+".join(x) for x in layer.minimal_winning())
        lines.append(f"  layer {k}: coefficient {_num(c, cfg.decimals)}; winning supersets of {mw}")
    if apply:
        mechanism = get_mechanism(apply, _weights_for(apply, weights, g))
        if cfg.order is not None:
            alloc = general_allocate(g, cfg.order, mechanism)
            doc["order"] = "-".join(cfg.order.labels(g))
            doc["allocation"] = analysis.rational_map(alloc.labels, alloc.values, cfg.decimals)
            lines.append(f"{mechanism.name} on {doc['order']}: " + _shares_text(alloc.labels, alloc.values, cfg.decimals))
        if all_orders_flag:
            _size_guard(g)
            mean = analysis.expected_shares(g, layered(mechanism))
            sv = shapley_subset(g)
            doc["expected_shares"] = analysis.rational_map(mean.labels, mean.values, cfg.decimals)
            doc["shapley"] = analysis.rational_map(sv.labels, sv.values, cfg.decimals)
            doc["shapley_fair"] = mean == sv
            lines.append("average over all orders: " + _shares_text(mean.labels, mean.values, cfg.decimals))
            lines.append("Shapley value:           " + _shares_text(sv.labels, sv.values, cfg.decimals))
            lines.append("shapley-fair: " + ("yes" if mean == sv else "no"))
    if cfg.fmt == "json":
        _dump(doc, out)
    else:
        out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, cfg: RunConfig, out) -> int:
    n = args.n
    if n > MAX_ORDER_PLAYERS:
        raise SizeLimitError(f"sweeps enumerate n! orders; n <= {MAX_ORDER_PLAYERS} required")
    if args.samples is None and n > 4:
        raise SizeLimitError("exhaustive sweeps are limited to n <= 4; pass --samples for larger n")
    if cfg.mechanism is None:
        raise MechanismError("sweep needs --mechanism")
    if cfg.mechanism.name.startswith("wvs"):
        w = WeightFunction.parse(args.weights)
        if len(w) < n:
            raise MechanismError(f"wvs needs at least {n} weights for n={n}")
    properties = args.properties.split(",") if args.properties else list(SWEEP_PROPERTIES)
    games = list(
        enumerate_zero_one_monotone_games(
            n, sample=args.samples, seed=cfg.seed, solvable_only=not args.include_unsolvable
        )
    )
    result = run_sweep(games, cfg.mechanism, properties)
    mode = "exhaustive" if args.samples is None else f"sampled {args.samples}"
    counts = result.counts()
    if args.corpus and result.failures:
        corpus = Path(args.corpus)
        corpus.mkdir(parents=True, exist_ok=True)
        for k, v in enumerate(result.failures):
            record = {
                "game": v.game.to_document(),
                "solvable": v.solvable,
                "mechanism": result.mechanism,
                "failures": [r.to_document() for r in v.reports.values() if not r.holds],
            }
            (corpus / f"counterexample_{k:04d}.json").write_text(json.dumps(record, indent=2) + "\n")
    if cfg.fmt == "json":
        _dump(
            {
                "n": n,
                "mode": mode,
                "seed": cfg.seed,
                "mechanism": result.mechanism,
                "properties": properties,
                "counts": counts,
                "games": [
                    {
                        "minimal_winning": [list(c) for c in v.game.minimal_winning()],
                        "solvable": v.solvable,
                        "verdicts": {k: r.verdict for k, r in v.reports.items()},
                    }
                    for v in result.verdicts
                ],
            },
            out,
        )
    else:
        out.write(f"# sweep n={n} mode={mode} seed={cfg.seed} mechanism={result.mechanism}\n")
        for v in result.verdicts:
            verdicts = " ".join(f"{k}={r.verdict}" for k, r in v.reports.items())
            flag = "" if v.solvable else " [unsolvable]"
            out.write(f"{v.describe()}{flag}: {verdicts}\n")
            for r in v.reports.values():
                if not r.holds:
                    out.write(f"    {r.render()}\n")
        out.write("totals: " + " ".join(f"{k}={c}" for k, c in counts.items()) + "\n")
    return EXIT_FAIL if result.failures else EXIT_OK


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="valueshare", description="Online value sharing for 0-1 monotone cooperative games."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--decimals", type=int, default=None, help="add rounded decimals (display only)")
    with_game = argparse.ArgumentParser(add_help=False, parents=[common])
    with_game.add_argument("--game", required=True, help="path to a game document (JSON)")
    with_mech = argparse.ArgumentParser(add_help=False)
    with_mech.add_argument("--mechanism", choices=("rfc", "evs", "wvs"), default=None)
    with_mech.add_argument("--weights", default=None, help="wvs weights, e.g. 1,1/2,1/4")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("shapley", parents=[with_game], help="exact Shapley values")
    p = sub.add_parser("structure", parents=[with_game], help="critical/marginal players and minimal critical prefix")
    p.add_argument("--order")
    sub.add_parser("solvable", parents=[with_game], help="solvability with witness")
    p = sub.add_parser("run", parents=[with_game, with_mech], help="online trace for one order")
    p.add_argument("--order", required=True)
    p = sub.add_parser("table", parents=[with_game, with_mech], help="allocations for every order")
    p.add_argument("--long", action="store_true", help="long CSV: order,player,share,is_critical,is_marginal")
    p = sub.add_parser("verify", parents=[with_game, with_mech], help="check properties over all orders")
    p.add_argument("--properties", default=",".join(VERIFY_PROPERTIES))
    p.add_argument("--strict-i4ea", action="store_true", help="compare every delay, not only adjacent swaps")
    p = sub.add_parser("compare", parents=[with_game], help="expected SD / EW side by side")
    p.add_argument("--mechanisms", nargs="+", required=True, metavar="SPEC",
                   help="rfc, evs or wvs:<weights>, e.g. wvs:1,1/2,1/4,1/8")
    p = sub.add_parser("decompose", parents=[with_game], help="threshold layers of a monotone game")
    p.add_argument("--apply", choices=("rfc", "evs", "wvs"))
    p.add_argument("--weights")
    p.add_argument("--order")
    p.add_argument("--all-orders", action="store_true", help="average the layered mechanism over all orders")
    p = sub.add_parser("sweep", parents=[common, with_mech], help="check properties over enumerated games")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--properties", default=None)
    p.add_argument("--include-unsolvable", action="store_true")
    p.add_argument("--corpus", help="directory for counterexample documents")
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "decompose":
            cfg = _config(argparse.Namespace(**{**vars(args), "mechanism": None, "weights": None}))
            return cmd_decompose(cfg, out, args.apply, args.weights, args.all_orders)
        cfg = _config(args)
        if args.command in ("run", "table") and cfg.mechanism is None:
            raise MechanismError(f"{args.command} needs --mechanism")
        if args.command == "shapley":
            return cmd_shapley(cfg, out)
        if args.command == "structure":
            return cmd_structure(cfg, out)
        if args.command == "solvable":
            return cmd_solvable(cfg, out)
        if args.command == "run":
            return cmd_run(cfg, out)
        if args.command == "table":
            return cmd_table(cfg, out, long_form=args.long)
        if args.command == "verify":
            return cmd_verify(cfg, out, [p.strip() for p in args.properties.split(",") if p.strip()])
        if args.command == "compare":
            return cmd_compare(cfg, out, args.mechanisms)
        return cmd_sweep(args, cfg, out)
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (GameError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
