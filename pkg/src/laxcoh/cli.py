"""Command-line driver.

    laxcoh build   --config cfg.json [--out DIR] [--pole-budget D]
    laxcoh cocycle --config cfg.json --which gamma1|gamma2|combo
                   [--cycle SPEC] [--out DIR] [--no-plot]
    laxcoh verify  --config cfg.json --suite NAME [--samples N]
                   [--omega-prime PATH] [--out DIR] [--no-plot]

Exit codes: 0 success; 1 configuration/parse errors or failed checks;
2 mathematical errors (non-generic data, infeasible connection).
All file outputs are UTF-8; scalars travel as exact strings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cocycle import Gamma1, Gamma2, materialize
from .config import ConfigError, InstanceConfig
from .connection import ConnectionFormError, build_connection, check_connection
from .jsonio import (
    basis_to_json,
    connection_to_json,
    matratfun_from_json,
    sphere_to_json,
)
from .laxalg import GradedBasis, NonGenericError, WindowExceededError
from .matfun import Cycle
from .report import TOOL_VERSION
from .suites import SUITES, run_suite

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MATH = 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="laxcoh",
        description="exact Lax operator algebras and their central "
                    "extensions on the sphere",
    )
    p.add_argument("--version", action="version", version=TOOL_VERSION)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", required=True,
                        help="instance configuration JSON file")
        sp.add_argument("--out", default="laxcoh-out",
                        help="output directory (created if missing)")

    b = sub.add_parser("build", help="construct basis and connection")
    common(b)
    b.add_argument("--pole-budget", type=int, default=None,
                   help="override the connection pole budget at infinity")

    c = sub.add_parser("cocycle", help="materialize a cocycle table")
    common(c)
    c.add_argument("--which", choices=("gamma1", "gamma2", "combo"),
                   default="gamma1")
    c.add_argument("--cycle", default=None,
                   help="cycle spec: comma list of labels (P+,g0,...) or "
                        "JSON {\"enclosed\": [...]}")
    c.add_argument("--pole-budget", type=int, default=None)
    c.add_argument("--no-plot", action="store_true",
                   help="skip the PNG figure")

    v = sub.add_parser("verify", help="run a verification suite")
    common(v)
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--samples", type=int, default=None,
                   help="sample budget for the grid checks")
    v.add_argument("--omega-prime", default=None,
                   help="connection JSON used as the mismatched action "
                        "connection in invariance checks")
    v.add_argument("--pole-budget", type=int, default=None)
    v.add_argument("--no-plot", action="store_true")
    return p


def _load_config(args) -> InstanceConfig:
    cfg = InstanceConfig.load(args.config)
    if getattr(args, "pole_budget", None) is not None:
        cfg.pole_budget = args.pole_budget
    return cfg


def _outdir(args) -> str:
    os.makedirs(args.out, exist_ok=True)
    return args.out


def _parse_cycle(spec: str, sphere) -> Cycle:
    spec = spec.strip()
    if spec.startswith("{"):
        labels = json.loads(spec)["enclosed"]
    else:
        labels = [x for x in spec.split(",") if x]
    return Cycle.from_labels(labels, sphere)


def cmd_build(args) -> int:
    cfg = _load_config(args)
    out = _outdir(args)
    basis = GradedBasis(cfg.tyurin, cfg.degree_window)
    payload = {
        "tool_version": TOOL_VERSION,
        "config": cfg.as_dict(),
        "sphere": sphere_to_json(cfg.tyurin.sphere),
        "elements": basis_to_json(basis, cfg.degree_window),
    }
    with open(os.path.join(out, "basis.json"), "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
    omega = build_connection(cfg.tyurin, cfg.pole_budget)
    with open(os.path.join(out, "connection.json"), "w",
              encoding="utf-8") as fh:
        json.dump({
            "tool_version": TOOL_VERSION,
            "config": cfg.as_dict(),
            "connection": connection_to_json(omega),
        }, fh, indent=2)
    n_el = len(payload["elements"])
    print(f"wrote {n_el} basis elements and the connection to {out}/")
    return EXIT_OK


def cmd_cocycle(args) -> int:
    cfg = _load_config(args)
    out = _outdir(args)
    cycle = cfg.cycle
    if args.cycle:
        cycle = _parse_cycle(args.cycle, cfg.tyurin.sphere)
    lo, hi = cfg.degree_window
    margin = (2 * lo - 2, 2 * hi + cfg.pole_budget + 2)
    basis = GradedBasis(cfg.tyurin, margin)
    omega = build_connection(cfg.tyurin, cfg.pole_budget)
    if args.which == "gamma1":
        coc = Gamma1(omega, cycle)
    elif args.which == "gamma2":
        coc = Gamma2(cycle)
    else:
        coc = Gamma1(omega, cycle) + Gamma2(cycle)
    table = materialize(coc, basis, cfg.degree_window)
    payload = {
        "tool_version": TOOL_VERSION,
        "config": cfg.as_dict(),
        "which": args.which,
        "cycle": cycle.labels(),
        "level_bounds": table.level_bounds(),
        "table": table.as_dict(),
    }
    with open(os.path.join(out, "table.json"), "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
    with open(os.path.join(out, "table.csv"), "w", encoding="utf-8") as fh:
        fh.write("n,r,m,s,value\n")
        for key in sorted(table.entries):
            n, r, m, s = key
            fh.write(f"{n},{r},{m},{s},{table.entries[key]}\n")
    if not args.no_plot:
        from .plotting import save_table_figure
        save_table_figure(table, os.path.join(out, "table.png"),
                          title=f"{args.which} over {'+'.join(cycle.labels())}")
    print(f"{args.which}: {len(table.entries)} entries, "
          f"level bounds {table.level_bounds()}; wrote table.json/.csv"
          + ("" if args.no_plot else "/.png") + f" to {out}/")
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _load_config(args)
    out = _outdir(args)
    omega_prime = None
    if args.omega_prime:
        with open(args.omega_prime, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        w = matratfun_from_json(data["connection"]["matratfun"],
                                cfg.tyurin.sphere)
        omega_prime = check_connection(w, cfg.tyurin,
                                       data["connection"].get("order2",
                                                              False))
    report = run_suite(args.suite, cfg, samples=args.samples,
                       omega_prime=omega_prime)
    with open(os.path.join(out, "report.json"), "w", encoding="utf-8") as fh:
        fh.write(report.to_json())
    with open(os.path.join(out, "report.csv"), "w", encoding="utf-8") as fh:
        fh.write(report.to_csv())
    if not args.no_plot:
        from .plotting import save_report_figure
        save_report_figure(report, os.path.join(out, "report.png"))
    for line in report.summary_lines():
        print(line)
    n_fail = len(report.failures)
    print(f"suite '{args.suite}': "
          f"{len(report.checks) - n_fail}/{len(report.checks)} checks pass")
    return EXIT_OK if report.all_passed else EXIT_USAGE


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "build":
            return cmd_build(args)
        if args.command == "cocycle":
            return cmd_cocycle(args)
        return cmd_verify(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonGenericError, ConnectionFormError, WindowExceededError) as exc:
        print(f"mathematical obstruction: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (OSError, json.JSONDecodeError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
