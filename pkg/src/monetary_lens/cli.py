"""``monetary-lens`` command line.

Exit codes: 0 success, 1 data or invariant error, 2 usage error.
"""

from __future__ import annotations

import argparse
import io
import json
import re
import sys
from pathlib import Path
from typing import Sequence

from . import exchange as ex
from .chart import ChartSpec, write_svg
from .errors import DataIOError, MonetaryLensError, ParseError, UnknownSeriesError
from .ingest import _lines, default_manifest, fixtures_dir, format_decimal, load_manifest, parse_decimal, read_table
from .normalize import AggregateSpec, DebtRow, NormalizedSeries, compose_aggregate, normalize, normalize_debt_row
from .series import TimeSeries

SCENARIOS = ("fisher", "doubled", "shift")
GOODS_COLUMNS = ("good", "quantity", "unit_price", "exchanges", "total_spend", "is_final")
NORMALIZED_COLUMNS = ("year", "raw", "money", "normalized")
DEBT_REQUIRED = ("country", "debt_start", "debt_end", "multiplier")
DEBT_OPTIONAL = (
    "alt_multiplier",
    "printed_normalized",
    "printed_pct",
    "printed_alt_normalized",
    "printed_alt_pct",
)
DEBT_COLUMNS = (
    "country",
    "debt_start",
    "debt_end",
    "multiplier",
    "alt_multiplier",
    "normalized_end",
    "pct_change",
    "alt_normalized_end",
    "alt_pct_change",
    "flag",
)
# how far a recomputed table entry may sit from the printed one
VALUE_TOL = 0.5
PCT_TOL = 1

_URL = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*://")


def local_path(text: str) -> Path:
    if _URL.match(text):
        raise argparse.ArgumentTypeError(f"{text!r}: only local files are accepted (no fetching)")
    return Path(text)


def _amount(x: float) -> str:
    if x == int(x):
        return f"{int(x):,}"
    return f"{x:,.6g}"


def _price(p: float) -> str:
    return f"{p:.2f}" if round(p, 2) == p else f"{p:.6g}"


# ---------------------------------------------------------------- simulate


def _scenario_economy(args: argparse.Namespace) -> ex.Economy:
    base = ex.fisher_economy()
    if args.scenario == "fisher":
        return base
    if args.scenario == "doubled":
        return ex.scale_production(base, 2)
    if args.scenario == "shift":
        return ex.shift_flows(base, args.source, args.target, args.count)
    with open(args.scenario, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", args.scenario, exc.lineno) from None
    return ex.economy_from_dict(data)


def render_economy_text(e: ex.Economy, title: str) -> str:
    s = ex.summarize(e)
    out = io.StringIO()
    out.write(f"Scenario: {title}\n")
    out.write(f"Money stock M: ${_amount(e.money_stock)}\n\n")
    rows = [("good", "quantity", "unit price", "exchanges", "total spend", "final")]
    for r in ex.goods_table(e):
        rows.append(
            (
                str(r["good"]),
                _amount(r["quantity"]),  # type: ignore[arg-type]
                "$" + _price(r["unit_price"]),  # type: ignore[arg-type]
                str(r["exchanges"]),
                "$" + _amount(r["total_spend"]),  # type: ignore[arg-type]
                "yes" if r["is_final"] else "no",
            )
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    for row in rows:
        out.write("  ".join(cell.ljust(w) if i == 0 else cell.rjust(w) for i, (cell, w) in enumerate(zip(row, widths))).rstrip())
        out.write("\n")

    out.write("\nExchanges (each moves the whole money stock):\n")
    out.write(f"${_amount(e.money_stock)} x V =\n")
    for g in e.goods:
        n = e.exchanges[g.name]
        per = g.quantity / n
        out.write(f"    x {n:<3} + {n} x {_amount(per)} {g.name} x ${_price(s.prices[g.name])}\n")

    out.write("\n")
    out.write(f"Velocity V:          {_amount(s.velocity)}\n")
    out.write(f"Money side M x V:    ${_amount(s.money_side)}\n")
    out.write(f"Goods side sum p*q:  ${_amount(s.goods_side)}\n")
    out.write(f"Price level P:       {s.price_level:.6g}\n")
    out.write(f"Units exchanged T:   {_amount(s.transaction_count)}\n")
    out.write(f"GDP (final goods):   ${_amount(s.gdp)}\n")
    out.write(f"Ledger:              {s.n_transactions} transactions\n")
    return out.getvalue()


def render_economy_csv(e: ex.Economy) -> str:
    s = ex.summarize(e)
    out = io.StringIO()
    out.write(f"# velocity: {format_decimal(s.velocity)}\n")
    out.write(f"# goods_side: {format_decimal(s.goods_side)}\n")
    out.write(f"# gdp: {format_decimal(s.gdp)}\n")
    out.write(",".join(GOODS_COLUMNS) + "\n")
    for r in ex.goods_table(e):
        out.write(
            ",".join(
                [
                    str(r["good"]),
                    format_decimal(r["quantity"]),  # type: ignore[arg-type]
                    format_decimal(r["unit_price"]),  # type: ignore[arg-type]
                    str(r["exchanges"]),
                    format_decimal(r["total_spend"]),  # type: ignore[arg-type]
                    "true" if r["is_final"] else "false",
                ]
            )
            + "\n"
        )
    return out.getvalue()


def cmd_simulate(args: argparse.Namespace) -> int:
    e = _scenario_economy(args)
    title = args.scenario if args.scenario in SCENARIOS else Path(args.scenario).name
    if args.scenario == "shift":
        title = f"shift {args.count} exchanges {args.source} -> {args.target}"
    if args.format == "csv":
        sys.stdout.write(render_economy_csv(e))
    else:
        sys.stdout.write(render_economy_text(e, title))
    if args.check:
        problems = ex.check_invariants(e)
        for p in problems:
            print(f"invariant violated: {p}", file=sys.stderr)
        if problems:
            return 1
        print("check: all invariants hold", file=sys.stderr)
    return 0


# --------------------------------------------------------------- normalize


def resolve_money(universe: dict[str, TimeSeries], label: str) -> tuple[TimeSeries, list[TimeSeries]]:
    """A money series by label, or composed from an expression like ``M2-RMF``.

    Returns the measure and its component series (empty for a plain label).
    """
    if label in universe:
        return universe[label], []
    spec = AggregateSpec.parse(label)
    components = [universe[t] for t, _ in spec.terms if t in universe]
    return compose_aggregate(spec, universe), components


def _file_stem(country: str, label: str) -> str:
    return re.sub(r"[^A-Za-z0-9._+-]", "_", f"{country}_{label}")


def normalized_csv(n: NormalizedSeries, country: str) -> str:
    out = io.StringIO()
    out.write(f"# country: {country}\n")
    out.write(f"# raw: {n.raw.label}\n")
    out.write(f"# money: {n.money.label}\n")
    out.write(f"# base: {n.base}\n")
    out.write(f"# currency: {n.raw.currency}\n")
    out.write(f"# unit_scale: {format_decimal(n.raw.unit_scale)}\n")
    out.write(",".join(NORMALIZED_COLUMNS) + "\n")
    for year, raw, money, value in n.rows():
        out.write(f"{year:04d},{format_decimal(raw)},{format_decimal(money)},{format_decimal(value)}\n")
    return out.getvalue()


def cmd_normalize(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.manifest or default_manifest())
    if not manifest.entries_for(args.country):
        raise UnknownSeriesError(f"no datasets for country {args.country!r} in {manifest.path}")
    universe = manifest.load_country(args.country)
    try:
        money, components = resolve_money(universe, args.money)
    except UnknownSeriesError as exc:
        raise UnknownSeriesError(f"({args.country}, {args.money}): {exc}") from None
    if args.gdp not in universe:
        raise UnknownSeriesError(f"no dataset ({args.country}, {args.gdp})")
    raw = universe[args.gdp]
    n = normalize(raw, money, args.base)

    out_dir: Path = args.out
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = _file_stem(args.country, args.money)
    csv_path = out_dir / f"{stem}_normalized.csv"
    with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(normalized_csv(n, args.country))
    print(f"wrote {csv_path}")

    if args.svg:
        lines = [(args.gdp, n.raw), (args.money, n.money)]
        years = (n.values.years[0], n.values.years[-1])
        for c in components:
            lines.append((c.label, c.window(*years).rescaled(n.raw.unit_scale)))
        panels = [
            ChartSpec(f"{args.country}: GDP and money supply", tuple(lines), base=args.base),
            ChartSpec(
                f"{args.country}: GDP normalized by {args.money}",
                ((f"{args.gdp} / ({args.money} growth since {args.base})", n.values),),
                base=args.base,
            ),
        ]
        svg_path = write_svg(panels, out_dir / f"{stem}_normalized.svg")
        print(f"wrote {svg_path}")

    last = n.values.years[-1]
    print(
        f"{args.country} {args.gdp} normalized by {args.money} (base {args.base}): "
        f"{last} raw {n.raw[last]:.6g} -> normalized {n.values[last]:.6g}"
    )
    return 0


# -------------------------------------------------------------- debt-table


def _optional_number(text: str, path: str, line: int) -> float | None:
    return None if text.strip() == "" else parse_decimal(text.strip(), path, line)


def read_debt_input(path: Path) -> list[tuple[DebtRow, str]]:
    if not path.is_file():
        raise DataIOError(f"no such file: {path}")
    text = path.read_text(encoding="utf-8")
    if not any(line and not line.startswith("#") for line in _lines(text)):
        return []
    header, rows = read_table(path)
    missing = [c for c in DEBT_REQUIRED if c not in header]
    unknown = [c for c in header if c not in DEBT_REQUIRED + DEBT_OPTIONAL]
    if missing or unknown:
        raise ParseError(f"bad header: missing {missing}, unknown {unknown}", str(path), None)
    out = []
    for lineno, fields in rows:
        rec = dict(zip(header, fields))
        nums = {k: _optional_number(rec.get(k, ""), str(path), lineno) for k in header if k != "country"}
        for k in DEBT_REQUIRED[1:]:
            if nums[k] is None:
                raise ParseError(f"{k} is required", str(path), lineno)
        try:
            row = normalize_debt_row(
                rec["country"], nums["debt_start"], nums["debt_end"], nums["multiplier"], nums.get("alt_multiplier")  # type: ignore[arg-type]
            )
        except MonetaryLensError as exc:
            raise ParseError(str(exc), str(path), lineno) from exc
        out.append((row, _mismatch(row, nums)))
    return out


def _mismatch(row: DebtRow, printed: dict[str, float | None]) -> str:
    """Describe where recomputed figures disagree with printed ones."""
    notes = []
    checks = [
        ("printed_normalized", row.normalized_end, VALUE_TOL, "normalized"),
        ("printed_alt_normalized", row.alt_normalized_end, VALUE_TOL, "alt normalized"),
    ]
    for key, computed, tol, name in checks:
        p = printed.get(key)
        if p is not None and computed is not None and abs(computed - p) > tol:
            notes.append(f"{name}: printed {p:g}, computed {computed:.2f}")
    pct_checks = [
        ("printed_pct", row.pct_rounded, "pct"),
        ("printed_alt_pct", row.alt_pct_rounded, "alt pct"),
    ]
    for key, computed_pct, name in pct_checks:
        p = printed.get(key)
        if p is not None and computed_pct is not None and abs(computed_pct - round(p)) > PCT_TOL:
            notes.append(f"{name}: printed {p:g}%, computed {computed_pct}%")
    return "; ".join(notes)


def _opt(x: float | None, fmt: str = "{:g}") -> str:
    return "" if x is None else fmt.format(x)


def render_debt_csv(rows: list[tuple[DebtRow, str]]) -> str:
    out = io.StringIO()
    out.write(",".join(DEBT_COLUMNS) + "\n")
    for r, flag in rows:
        fields = [
            r.country,
            format_decimal(r.debt_start),
            format_decimal(r.debt_end),
            format_decimal(r.multiplier),
            "" if r.alt_multiplier is None else format_decimal(r.alt_multiplier),
            format_decimal(r.normalized_end),
            str(r.pct_rounded),
            "" if r.alt_normalized_end is None else format_decimal(r.alt_normalized_end),
            "" if r.alt_pct_rounded is None else str(r.alt_pct_rounded),
            flag.replace(",", ";"),
        ]
        out.write(",".join(fields) + "\n")
    return out.getvalue()


def render_debt_text(rows: list[tuple[DebtRow, str]]) -> str:
    table = [("Country", "Start", "End", "Money Supply Multiplier", "Normalized End", "% increase")]
    for r, flag in rows:
        mult = f"{r.multiplier:.1f}" + (f" ({r.alt_multiplier:.1f})" if r.alt_multiplier is not None else "")
        norm = f"{r.normalized_end:,.2f}" + (f" ({r.alt_normalized_end:,.2f})" if r.alt_normalized_end is not None else "")
        pct = f"{r.pct_rounded:+d}%" + (f" ({r.alt_pct_rounded:+d}%)" if r.alt_pct_rounded is not None else "")
        table.append((r.country + (" *" if flag else ""), f"{r.debt_start:,g}", f"{r.debt_end:,g}", mult, norm, pct))
    widths = [max(len(row[i]) for row in table) for i in range(len(table[0]))]
    lines = ["  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths))).rstrip() for row in table]
    lines.insert(1, "-" * len(lines[0]))
    flagged = [(r, f) for r, f in rows if f]
    if flagged:
        lines.append("")
        lines.append("* differs from the printed table:")
        lines.extend(f"  {r.country}: {f}" for r, f in flagged)
    return "\n".join(lines) + "\n"


def cmd_debt_table(args: argparse.Namespace) -> int:
    path = args.input or fixtures_dir() / "debt_table.csv"
    rows = read_debt_input(path)
    sys.stdout.write(render_debt_csv(rows) if args.format == "csv" else render_debt_text(rows))
    return 0


# -------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monetary-lens",
        description="Equation-of-exchange simulator and money-supply normalization (offline only).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run an equation-of-exchange scenario")
    sim.add_argument("scenario", help="fisher, doubled, shift, or a JSON economy file")
    sim.add_argument("--check", action="store_true", help="verify the exchange identities; exit 1 on violation")
    sim.add_argument("--format", choices=("text", "csv"), default="text")
    sim.add_argument("--from", dest="source", default="coal", help="shift: good losing exchanges")
    sim.add_argument("--to", dest="target", default="bread", help="shift: good gaining exchanges")
    sim.add_argument("--count", type=int, default=2, help="shift: number of exchanges moved")
    sim.set_defaults(func=cmd_simulate)

    norm = sub.add_parser("normalize", help="normalize a GDP or debt series by money growth")
    norm.add_argument("--manifest", type=local_path, default=None, help="dataset manifest (default: bundled fixtures)")
    norm.add_argument("--country", required=True)
    norm.add_argument("--money", required=True, help="money label or expression such as M2-RMF or M1+M2")
    norm.add_argument("--gdp", required=True, help="label of the series to normalize")
    norm.add_argument("--base", type=int, required=True, help="base year")
    norm.add_argument("--svg", action="store_true", help="also write a two-panel SVG chart")
    norm.add_argument("--out", type=local_path, required=True, help="output directory")
    norm.set_defaults(func=cmd_normalize)

    debt = sub.add_parser("debt-table", help="normalize government debt rows by money multipliers")
    debt.add_argument("--input", type=local_path, default=None, help="CSV input (default: bundled table)")
    debt.add_argument("--format", choices=("text", "csv"), default="text")
    debt.set_defaults(func=cmd_debt_table)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate" and args.scenario not in SCENARIOS:
        if _URL.match(args.scenario):
            parser.error(f"{args.scenario!r}: only local files are accepted (no fetching)")
        if not Path(args.scenario).is_file():
            parser.error(f"unknown scenario {args.scenario!r}; choose from {', '.join(SCENARIOS)} or a JSON file")
    try:
        return args.func(args)
    except (MonetaryLensError, OSError) as exc:
        print(f"monetary-lens: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
