"""Command-line surface, polytope file parsing and report serialization.

Input format: ``#`` comment lines, one ``d n`` header line, then n lines
of d signed integers (vertices).  Exit codes: 0 success, 2 parse error,
3 precondition violation, 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import corpus
from .chow import chow_ranks, verify_hqq_equals_chow
from .duality import (
    build_bundle,
    g_vanishing,
    g_vanishing_holds,
    stalk_dimension_laws,
    vanishing_theorem_check,
    verify_c_identity,
    verify_ses,
)
from .errors import (
    DimensionMismatch,
    InvariantError,
    ParseError,
    PreconditionError,
    Z2HodgeError,
)
from .fan import Fan, face_fan, normal_fan, regularity_depth
from .hodge import (
    HodgeReport,
    HodgeTable,
    cell_complex,
    collapse_and_betti,
    fan_h_vector,
    hodge_table,
    rightmost_column,
)
from .polytope import LatticePolytope


def parse_polytope(text: str) -> LatticePolytope:
    """Parse the polytope text format into a canonicalized polytope."""
    header: tuple[int, int] | None = None
    rows: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", line=lineno) from None
        if header is None:
            if len(values) != 2:
                raise ParseError("expected header 'd n'", line=lineno)
            header = (values[0], values[1])
            if header[0] < 1 or header[1] < 1:
                raise ParseError("header entries must be positive", line=lineno)
            continue
        if len(values) != header[0]:
            raise DimensionMismatch(
                f"line {lineno}: vertex has {len(values)} coordinates, expected {header[0]}"
            )
        rows.append(tuple(values))
    if header is None:
        raise ParseError("empty input")
    if len(rows) != header[1]:
        raise ParseError(f"expected {header[1]} vertex rows, found {len(rows)}")
    try:
        p = LatticePolytope(rows)
    except PreconditionError:
        raise
    if p.dropped_points:
        print(
            f"warning: dropped {len(p.dropped_points)} non-extreme point(s)",
            file=sys.stderr,
        )
    return p


@dataclass
class RunConfig:
    corpus_name: str | None = None
    path: str | None = None
    fan: str = "normal"
    fmt: str = "table"
    threads: int | None = None


def load_polytope(config: RunConfig) -> LatticePolytope:
    if (config.corpus_name is None) == (config.path is None):
        raise PreconditionError("exactly one of --corpus or an input path is required")
    if config.corpus_name is not None:
        return corpus.polytope(config.corpus_name)
    with open(config.path, encoding="utf-8") as handle:
        return parse_polytope(handle.read())


def select_fan(delta: LatticePolytope, kind: str) -> Fan:
    return normal_fan(delta) if kind == "normal" else face_fan(delta)


def full_report(delta: LatticePolytope, fan_kind: str = "normal", threads: int | None = None) -> HodgeReport:
    """Run every analysis and verification for one polytope."""
    fan = select_fan(delta, fan_kind)
    table = hodge_table(fan, threads=threads)
    betti = cell_complex(fan).homology_ranks()
    collapsed, betti_complex, maximal = collapse_and_betti(table, betti)
    s_rank, predicted = rightmost_column(fan)
    chow = chow_ranks(fan)
    h_vec = fan_h_vector(fan)
    d = fan.dim
    checks: dict[str, bool | None] = {
        "hqq_equals_chow": verify_hqq_equals_chow(fan, table),
        "rightmost_column": all(
            table.rank(d, q) == predicted[q] for q in range(d + 1)
        )
        and betti[d] == 1 << (d - s_rank),
        "h_vector_euler": all(
            table.row_euler(q) == (-1) ** q * h_vec[q] for q in range(d + 1)
        ),
        "column_sum_bound": all(
            s >= b for s, b in zip(table.column_sums(), betti)
        ),
        "c_identity": None,
        "ses_exact": None,
        "stalk_dimensions": None,
        "g_vanishing": None,
        "vanishing_theorem": None,
    }
    depth = None
    if delta.is_lattice and delta.origin_interior():
        depth = regularity_depth(face_fan(delta))
    if delta.is_reflexive() and fan_kind == "normal":
        bundle = build_bundle(delta)
        checks["c_identity"] = verify_c_identity(bundle)
        checks["ses_exact"] = verify_ses(bundle)
        checks["stalk_dimensions"] = stalk_dimension_laws(bundle)
        checks["g_vanishing"] = g_vanishing_holds(bundle, g_vanishing(bundle, d))
        checks["vanishing_theorem"] = vanishing_theorem_check(bundle, table)
    return HodgeReport(
        dim=d,
        f_vector=delta.f_vector(),
        reflexive=delta.is_reflexive(),
        regularity_depth=depth,
        table=table,
        betti_real=betti,
        collapsed=collapsed,
        betti_complex=betti_complex,
        maximal=maximal,
        s_rank=s_rank,
        chow=chow,
        h_vector=h_vec,
        checks=checks,
    )


def report_to_dict(report: HodgeReport) -> dict:
    return {
        "dim": report.dim,
        "f_vector": list(report.f_vector),
        "reflexive": report.reflexive,
        "regularity_depth": report.regularity_depth,
        "hodge_table": [list(row) for row in report.table.rows],
        "betti_real": list(report.betti_real),
        "betti_complex": list(report.betti_complex) if report.betti_complex is not None else None,
        "collapsed": report.collapsed,
        "maximal": report.maximal,
        "s_rank": report.s_rank,
        "chow_ranks": list(report.chow),
        "h_vector": list(report.h_vector),
        "checks": dict(report.checks),
    }


def to_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _tristate(value: bool | None) -> str:
    return "unknown" if value is None else ("yes" if value else "no")


def report_to_text(report: HodgeReport) -> str:
    lines = []
    lines.append(f"dimension       {report.dim}")
    lines.append(f"f-vector        {list(report.f_vector)}")
    lines.append(f"reflexive       {_tristate(report.reflexive)}")
    if report.regularity_depth is not None:
        lines.append(f"dual fan regular up to dimension {report.regularity_depth}")
    lines.append("")
    lines.append("hodge table (rank H_pq; row q, columns p = q..d):")
    lines.append(report.table.pretty())
    lines.append("")
    lines.append(f"real betti      {list(report.betti_real)}")
    lines.append(f"collapsed       {_tristate(report.collapsed)}")
    if report.betti_complex is not None:
        lines.append(f"complex betti   {list(report.betti_complex)}")
    lines.append(f"maximal         {_tristate(report.maximal)}")
    lines.append(f"ray span rank   {report.s_rank}")
    lines.append(f"chow ranks      {list(report.chow)}")
    lines.append(f"h-vector        {list(report.h_vector)}")
    lines.append("")
    lines.append("checks:")
    for name in sorted(report.checks):
        lines.append(f"  {name:<18} {_tristate(report.checks[name])}")
    return "\n".join(lines) + "\n"


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("path", nargs="?", help="polytope file (see --corpus for built-ins)")
    parser.add_argument("--corpus", dest="corpus_name", metavar="NAME", help="built-in polytope")
    parser.add_argument("--fan", choices=["normal", "face"], default="normal")
    parser.add_argument("--format", dest="fmt", choices=["table", "json"], default="table")
    parser.add_argument("--threads", type=int, default=None, help="worker threads (default: cpu count)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="z2hodge",
        description="Mod-2 Hodge spaces, Betti numbers and Chow ranks of toric fans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("hodge", "Hodge table of the selected fan"),
        ("betti", "mod-2 Betti numbers of the real points"),
        ("chow", "torus-invariant Chow ranks"),
        ("regularity", "mod-2 regularity depth of the selected fan"),
        ("duality-check", "verify the reflexive duality package"),
        ("report", "all analyses and checks"),
    ]:
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
    p = sub.add_parser("corpus", help="list built-in polytopes")
    p.add_argument("--format", dest="fmt", choices=["table", "json"], default="table")
    return parser


def _threads(config: RunConfig) -> int:
    if config.threads is not None:
        return max(1, config.threads)
    return os.cpu_count() or 1


def run(config: RunConfig, command: str) -> str:
    """Execute one subcommand and return its output text."""
    if command == "corpus":
        if config.fmt == "json":
            return to_json(corpus.names())
        return "\n".join(corpus.names()) + "\n"
    delta = load_polytope(config)
    if command == "report":
        report = full_report(delta, config.fan, threads=_threads(config))
        if config.fmt == "json":
            return to_json(report_to_dict(report))
        return report_to_text(report)
    if command == "hodge":
        fan = select_fan(delta, config.fan)
        table = hodge_table(fan, threads=_threads(config))
        if config.fmt == "json":
            return to_json({"dim": fan.dim, "hodge_table": [list(r) for r in table.rows]})
        return table.pretty() + "\n"
    if command == "betti":
        fan = select_fan(delta, config.fan)
        table = hodge_table(fan, threads=_threads(config))
        betti = cell_complex(fan).homology_ranks()
        collapsed, betti_complex, maximal = collapse_and_betti(table, betti)
        payload = {
            "betti_real": list(betti),
            "betti_complex": list(betti_complex) if betti_complex is not None else None,
            "collapsed": collapsed,
            "maximal": maximal,
        }
        if config.fmt == "json":
            return to_json(payload)
        return (
            f"real betti      {payload['betti_real']}\n"
            f"collapsed       {_tristate(collapsed)}\n"
            f"complex betti   {payload['betti_complex']}\n"
            f"maximal         {_tristate(maximal)}\n"
        )
    if command == "chow":
        fan = select_fan(delta, config.fan)
        ranks = chow_ranks(fan)
        if config.fmt == "json":
            return to_json({"chow_ranks": list(ranks)})
        return f"chow ranks      {list(ranks)}\n"
    if command == "regularity":
        fan = select_fan(delta, config.fan)
        depth = regularity_depth(fan)
        if config.fmt == "json":
            return to_json({"regularity_depth": depth, "fan": config.fan})
        return f"regularity depth of {config.fan} fan: {depth}\n"
    if command == "duality-check":
        bundle = build_bundle(delta)  # raises NotReflexive -> exit 3
        table = hodge_table(bundle.sigma, threads=_threads(config))
        checks = {
            "stalk_dimensions": stalk_dimension_laws(bundle),
            "c_identity": verify_c_identity(bundle),
            "ses_exact": verify_ses(bundle),
            "g_vanishing": g_vanishing_holds(bundle, g_vanishing(bundle, bundle.sigma.dim)),
            "vanishing_theorem": vanishing_theorem_check(bundle, table),
        }
        if config.fmt == "json":
            return to_json({"checks": checks})
        return "".join(f"{name:<18} {_tristate(v)}\n" for name, v in sorted(checks.items()))
    raise PreconditionError(f"unknown command {command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(
        corpus_name=getattr(args, "corpus_name", None),
        path=getattr(args, "path", None),
        fan=getattr(args, "fan", "normal"),
        fmt=getattr(args, "fmt", "table"),
        threads=getattr(args, "threads", None),
    )
    try:
        output = run(config, args.command)
    except ParseError as exc:
        print(f"z2hodge: parse error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(f"z2hodge: internal invariant failure: {exc}", file=sys.stderr)
        return 4
    except PreconditionError as exc:
        print(f"z2hodge: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"z2hodge: {exc}", file=sys.stderr)
        return 2
    except Z2HodgeError as exc:
        print(f"z2hodge: {exc}", file=sys.stderr)
        return 4
    sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
