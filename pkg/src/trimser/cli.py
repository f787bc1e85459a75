"""Command-line front end.

    trimser dims    --n 1..4 --r 1..7 [--verify-basis]
    trimser table2  --r 1..4
    trimser basis   --space Sminus --n 2 --k 1 --r 2
    trimser dofs    --n 3 --k 1 --r 2 [--list]
    trimser check   SUITE --n 1..3 --r 1..3

Exit status: 0 on success, 1 when a verification fails, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from trimser.dofs import dof_count, dof_functionals, interior_dof_count, minimality_identity, unisolvence_check
from trimser.forms import render
from trimser.properties import (
    FAIL,
    FAMILIES,
    PASS,
    PropertyReport,
    check_decompositions,
    check_exactness,
    check_inclusion,
    check_J_identities,
    check_lemma_identities,
    check_serendipity_structure,
    check_subcomplex,
    check_trace,
)
from trimser.proxy import check_prop_AC, check_prop_CF
from trimser.spaces import QMINUS, SMINUS, SpaceKind, dim_formula, dim_qminus, dim_s, dim_sminus, generate_space

log = logging.getLogger("trimser")

BASIS_SOFT_LIMIT = 4
FORMULA_SOFT_LIMIT = 5

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SUITES = ("inclusion", "subcomplex", "exactness", "trace", "decomposition", "unisolvence", "minimality", "proxy")


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"3"`` -> [3]; ``"1..4"`` -> [1, 2, 3, 4]."""
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; use N or A..B") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


@dataclass(frozen=True)
class RunConfig:
    command: str
    ns: list[int]
    ks: list[int] | None
    rs: list[int]
    fmt: str
    out: str | None

    def k_values(self, n: int) -> list[int]:
        return [k for k in (self.ks if self.ks is not None else range(n + 1)) if 0 <= k <= n]

    def cells(self) -> Iterator[tuple[int, int, int]]:
        for n in self.ns:
            for k in self.k_values(n):
                for r in self.rs:
                    yield n, k, r


def _config(args: argparse.Namespace, n_default: str, r_default: str) -> RunConfig:
    ns = parse_range(args.n or n_default)
    rs = parse_range(args.r or r_default)
    ks = parse_range(args.k) if getattr(args, "k", None) else None
    if ns[0] < 1:
        raise UsageError("n must be at least 1")
    if rs[0] < 1:
        raise UsageError("r must be at least 1")
    if ks is not None and ks[0] < 0:
        raise UsageError("k must be non-negative")
    return RunConfig(args.command, ns, ks, rs, args.format, args.out)


def _warn_size(cfg: RunConfig, builds_bases: bool) -> None:
    limit = BASIS_SOFT_LIMIT if builds_bases else FORMULA_SOFT_LIMIT
    if cfg.ns[-1] > limit:
        kind = "basis construction" if builds_bases else "formula evaluation"
        log.warning("n=%d is above the soft limit %d for %s; this may be slow", cfg.ns[-1], limit, kind)


def _csv(header: list[str], rows: Iterable[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _ndjson(records: Iterable[dict]) -> str:
    return "".join(json.dumps(rec, ensure_ascii=False) + "\n" for rec in records)


def _text_table(header: list[str], rows: list[list]) -> str:
    cells = [header] + [[str(x) for x in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() + "\n" for row in cells)


def _tabular(fmt: str, header: list[str], rows: list[list], records: list[dict]) -> str:
    if fmt == "csv":
        return _csv(header, rows)
    if fmt == "json":
        return _ndjson(records)
    return _text_table(header, rows)


# --- subcommands ------------------------------------------------------------


def cmd_dims(cfg: RunConfig, verify_basis: bool = False) -> tuple[str, int]:
    _warn_size(cfg, verify_basis)
    header = ["n", "k"] + [f"r={r}" for r in cfg.rs]
    rows, records, status = [], [], EXIT_OK
    for n in cfg.ns:
        for k in cfg.k_values(n):
            dims = [dim_sminus(n, k, r) for r in cfg.rs]
            rows.append([n, k] + dims)
            records += [{"n": n, "k": k, "r": r, "dim": d} for r, d in zip(cfg.rs, dims)]
            if verify_basis:
                for r, d in zip(cfg.rs, dims):
                    built = generate_space(SMINUS, n, k, r).dim
                    if built != d:
                        log.error("basis mismatch at n=%d k=%d r=%d: built %d, formula %d", n, k, r, built, d)
                        status = EXIT_FAIL
    return _tabular(cfg.fmt, header, rows, records), status


TABLE2_HEADER = ["r", "qminus_2", "qminus_3", "qminus_sum", "s_2", "s_3", "s_sum", "sminus_2", "sminus_3", "sminus_sum"]


def table2_row(r: int) -> list[int]:
    """Per-cube counts on the 3-cube for three (2-form, 3-form) pairs at order r."""
    q2, q3 = dim_qminus(3, 2, r), dim_qminus(3, 3, r)
    s2, s3 = dim_s(3, 2, r), dim_s(3, 3, r - 1)
    m2, m3 = dim_sminus(3, 2, r), dim_sminus(3, 3, r)
    return [r, q2, q3, q2 + q3, s2, s3, s2 + s3, m2, m3, m2 + m3]


def cmd_table2(cfg: RunConfig) -> tuple[str, int]:
    rows = [table2_row(r) for r in cfg.rs]
    if cfg.fmt == "text":
        lines = ["r  Qminus_r(2)+Qminus_r(3)  S_r(2)+S_{r-1}(3)  Sminus_r(2)+Sminus_r(3)\n"]
        for row in rows:
            r = row[0]
            groups = [f"{a}+{b} = {c}" for a, b, c in (row[1:4], row[4:7], row[7:10])]
            lines.append(f"{r}  " + "  |  ".join(groups) + "\n")
        return "".join(lines), EXIT_OK
    records = [dict(zip(TABLE2_HEADER, row)) for row in rows]
    return _tabular(cfg.fmt, TABLE2_HEADER, rows, records), EXIT_OK


def cmd_basis(cfg: RunConfig, space: str) -> tuple[str, int]:
    try:
        kind = SpaceKind.parse(space)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if kind == QMINUS:
        raise UsageError("Qminus_dim_only has no basis; only its dimension is available")
    if len(cfg.ns) != 1 or len(cfg.rs) != 1 or cfg.ks is None or len(cfg.ks) != 1:
        raise UsageError("basis takes single values for --n, --k and --r")
    n, k, r = cfg.ns[0], cfg.ks[0], cfg.rs[0]
    if not 0 <= k <= n:
        raise UsageError(f"k={k} outside [0, {n}]")
    _warn_size(cfg, True)
    basis = generate_space(kind, n, k, r).basis
    if cfg.fmt == "json":
        records = []
        for i, f in enumerate(basis):
            terms = [
                {"coeff": str(c), "alpha": list(alpha), "sigma": [s + 1 for s in sigma]}
                for (alpha, sigma), c in f.sorted_items()
            ]
            records.append({"space": str(kind), "n": n, "k": k, "r": r, "index": i, "form": render(f), "terms": terms})
        return _ndjson(records), EXIT_OK
    if cfg.fmt == "csv":
        return _csv(["index", "form"], [[i, render(f)] for i, f in enumerate(basis)]), EXIT_OK
    return "".join(render(f) + "\n" for f in basis), EXIT_OK


def cmd_dofs(cfg: RunConfig, listing: bool = False) -> tuple[str, int]:
    _warn_size(cfg, listing)
    if listing:
        header = ["n", "k", "r", "face_dim", "face", "part", "weight"]
        rows = []
        for n, k, r in cfg.cells():
            for phi in dof_functionals(n, k, r):
                rows.append([n, k, r, phi.face.dim, phi.face.label(), phi.part, render(phi.weight)])
        records = [dict(zip(header, row)) for row in rows]
        return _tabular(cfg.fmt, header, rows, records), EXIT_OK
    header = ["n", "k", "r", "dof_count", "interior", "dim", "match"]
    rows, status = [], EXIT_OK
    for n, k, r in cfg.cells():
        count, dim = dof_count(n, k, r), dim_sminus(n, k, r)
        rows.append([n, k, r, count, interior_dof_count(n, k, r), dim, "yes" if count == dim else "no"])
        if count != dim:
            status = EXIT_FAIL
    records = [dict(zip(header, row)) for row in rows]
    return _tabular(cfg.fmt, header, rows, records), status


def _unisolvence_report(n: int, k: int, r: int) -> PropertyReport:
    rep = unisolvence_check(n, k, r)
    detail = (
        f"{rep.rows}x{rep.cols} rank {rep.rank}; vanishing-trace dim {rep.vanishing_trace_dim}, "
        f"interior rank {rep.interior_rank}"
    )
    ok = rep.unisolvent and rep.lemma_holds
    witness = None if ok else ("matrix not square" if not rep.square else "rank deficit" if not rep.unisolvent else "interior functionals do not separate bubbles")
    return PropertyReport("unisolvence", n, k, r, PASS if ok else FAIL, detail, witness)


def _dof_count_report(n: int, k: int, r: int) -> PropertyReport:
    count, dim = dof_count(n, k, r), dim_formula(SMINUS, n, k, r)
    ok = count == dim
    return PropertyReport("dof_count", n, k, r, PASS if ok else FAIL, f"count {count}, dim {dim}", None if ok else f"{count} != {dim}")


def _minimality_report(n: int, k: int, r: int) -> PropertyReport:
    ok = minimality_identity(n, k, r)
    detail = f"interior count {interior_dof_count(n, k, r)}"
    return PropertyReport("minimality", n, k, r, PASS if ok else FAIL, detail, None if ok else "interior count differs from the dimension identity")


def run_suite(suite: str, cfg: RunConfig) -> Iterator[PropertyReport]:
    per_cell = {
        "inclusion": [check_inclusion],
        "subcomplex": [check_subcomplex],
        "trace": [check_trace],
        "decomposition": [check_decompositions, check_J_identities, check_lemma_identities, check_serendipity_structure],
        "unisolvence": [_unisolvence_report],
        "minimality": [_dof_count_report, _minimality_report],
    }
    if suite == "exactness":
        for n in cfg.ns:
            for r in cfg.rs:
                for family in FAMILIES:
                    yield check_exactness(n, r, family)
    elif suite == "proxy":
        for r in cfg.rs:
            if 2 in cfg.ns:
                yield check_prop_AC(r)
            for n in cfg.ns:
                if n in (2, 3):
                    yield check_prop_CF(n, r)
    else:
        for n, k, r in cfg.cells():
            for check in per_cell[suite]:
                yield check(n, k, r)


def cmd_check(cfg: RunConfig, suite: str) -> tuple[str, int]:
    if suite != "all" and suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    _warn_size(cfg, True)
    reports = [rep for s in (SUITES if suite == "all" else (suite,)) for rep in run_suite(s, cfg)]
    status = EXIT_OK if all(rep.passed for rep in reports) else EXIT_FAIL
    records = [rep.record() for rep in reports]
    if cfg.fmt == "json":
        return _ndjson(records), status
    header = ["property", "n", "k", "r", "verdict", "detail"]
    rows = [["" if rec[h] is None else rec[h] for h in header] for rec in records]
    if cfg.fmt == "csv":
        return _csv(header, rows), status
    lines = []
    for rec in records:
        k = "" if rec["k"] is None else f" k={rec['k']}"
        lines.append(f"{rec['verdict'].upper()} {rec['property']} n={rec['n']}{k} r={rec['r']}: {rec['detail']}\n")
    return "".join(lines), status


# --- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trimser", description="Trimmed serendipity form spaces on cubes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, fmt: str, with_k: bool = True) -> None:
        if with_k:
            p.add_argument("--n", help="dimension, N or A..B")
            p.add_argument("--k", help="form order, N or A..B (default: all)")
        p.add_argument("--r", help="order, N or A..B")
        p.add_argument("--format", choices=("csv", "json", "text"), default=fmt)
        p.add_argument("--out", help="write output here instead of standard output")

    p = sub.add_parser("dims", help="dimension table of the trimmed serendipity spaces")
    common(p, "csv")
    p.add_argument("--verify-basis", action="store_true", help="also build every basis and compare")
    p = sub.add_parser("table2", help="per-cube counts for three mixed pairs on the 3-cube")
    common(p, "csv", with_k=False)
    p = sub.add_parser("basis", help="list an echelonised basis")
    common(p, "text")
    p.add_argument("--space", default="Sminus", help="space kind, e.g. Sminus, Pminus, J, d(J), H_linear:1")
    p = sub.add_parser("dofs", help="degree-of-freedom counts or listings")
    common(p, "csv")
    p.add_argument("--list", action="store_true", help="list every functional")
    p = sub.add_parser("check", help="run a verification suite")
    p.add_argument("suite", help=f"all, {', '.join(SUITES)}")
    common(p, "json")
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(format="%(levelname)s: %(message)s", stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        if args.command == "dims":
            output, status = cmd_dims(_config(args, "1..4", "1..7"), args.verify_basis)
        elif args.command == "table2":
            args.n = args.k = None
            output, status = cmd_table2(_config(args, "3", "1..4"))
        elif args.command == "basis":
            output, status = cmd_basis(_config(args, "2", "1"), args.space)
        elif args.command == "dofs":
            output, status = cmd_dofs(_config(args, "1..3", "1..3"), args.list)
        else:
            output, status = cmd_check(_config(args, "1..3", "1..3"), args.suite)
    except UsageError as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(output)
        else:
            sys.stdout.write(output)
    except OSError as exc:
        log.error("cannot write output: %s", exc)
        return EXIT_USAGE
    return status


if __name__ == "__main__":
    sys.exit(main())
