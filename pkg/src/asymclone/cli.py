"""Command-line front end: sweeps, optimization, verification, reports.

Commands
--------
sweep-universal     quality figures of the universal family over a mix grid
sweep-pc            optimal phase-covariant frontier over an eta_A grid
optimize            one frontier point (requires --eta-a)
verify-nosignaling  JSON feasibility report; exit 1 on a violated bound
entanglement        separability/tangle survey of the qubit machines
selftest            run the acceptance suite; exit 1 on any failure

Exit codes: 0 success, 1 verification failure, 2 usage error.
Identical configurations (including --seed) produce byte-identical files.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

from . import selftest as selftest_mod
from . import sweeps
from .nosignal import nosignaling_report

TABLE_COMMANDS = ("sweep-universal", "sweep-pc", "optimize", "entanglement")


@dataclass(frozen=True)
class RunConfig:
    command: str
    d: int = 2
    grid: int = 100
    eta_a: float | None = None
    theta: float | None = None
    seed: int = 0
    output_path: str = "-"
    format: str = "csv"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asymclone",
        description="Asymmetric cloning machines: trade-off sweeps, "
        "no-signaling verification, and entanglement reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, fmt_default="csv"):
        p.add_argument("--d", type=int, default=2, help="local dimension (>= 2)")
        p.add_argument("--grid", type=int, default=100, help="grid resolution (>= 2)")
        p.add_argument("--eta-a", type=float, default=None, dest="eta_a",
                       help="clone-A shrinking factor in [0, 1]")
        p.add_argument("--theta", type=float, default=None,
                       help="Bloch polar angle in [0, pi]")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized paths")
        p.add_argument("--out", default="-", dest="output_path",
                       help="output file, '-' for stdout")
        p.add_argument("--format", choices=("csv", "json"), default=fmt_default)
        return p

    add_common(sub.add_parser("sweep-universal", help="universal-family quality sweep"))
    add_common(sub.add_parser("sweep-pc", help="optimal phase-covariant frontier"))
    add_common(sub.add_parser("optimize", help="one optimal frontier point"))
    add_common(sub.add_parser("verify-nosignaling", help="feasibility report"),
               fmt_default="json")
    add_common(sub.add_parser("entanglement", help="separability and tangle survey"))
    st = add_common(sub.add_parser("selftest", help="run the acceptance suite"))
    st.add_argument("--inject-failure", action="store_true", help=argparse.SUPPRESS)
    return parser


def _validate(parser: argparse.ArgumentParser, ns: argparse.Namespace) -> RunConfig:
    if ns.d < 2:
        parser.error(f"--d must be >= 2, got {ns.d}")
    if ns.grid < 2:
        parser.error(f"--grid must be >= 2, got {ns.grid}")
    if ns.eta_a is not None and not 0.0 <= ns.eta_a <= 1.0:
        parser.error(f"--eta-a must lie in [0, 1], got {ns.eta_a}")
    if ns.theta is not None and not 0.0 <= ns.theta <= math.pi:
        parser.error(f"--theta must lie in [0, pi], got {ns.theta}")
    if ns.seed < 0:
        parser.error(f"--seed must be nonnegative, got {ns.seed}")
    if ns.command == "optimize" and ns.eta_a is None:
        parser.error("optimize requires --eta-a")
    if ns.command == "verify-nosignaling":
        if ns.format != "json":
            parser.error("verify-nosignaling only emits json")
        if ns.grid < 100:
            parser.error("verify-nosignaling needs --grid >= 100")
    return RunConfig(
        command=ns.command,
        d=ns.d,
        grid=ns.grid,
        eta_a=ns.eta_a,
        theta=ns.theta,
        seed=ns.seed,
        output_path=ns.output_path,
        format=ns.format,
    )


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _emit_table(cfg: RunConfig, header, rows) -> None:
    if cfg.format == "json":
        _write(cfg.output_path, sweeps.render_json_table(header, rows))
    else:
        _write(cfg.output_path, sweeps.render_csv(header, rows))


def run_table_command(cfg: RunConfig) -> int:
    if cfg.command == "sweep-universal":
        header, rows = sweeps.universal_sweep_rows(cfg.d, cfg.grid, cfg.seed)
    elif cfg.command == "sweep-pc":
        header, rows = sweeps.pc_sweep_rows(cfg.d, cfg.grid)
    elif cfg.command == "optimize":
        header, rows = sweeps.optimize_rows(cfg.d, cfg.eta_a)
    else:
        theta = math.pi / 2 if cfg.theta is None else cfg.theta
        header, rows = sweeps.entanglement_rows(cfg.grid, theta)
    _emit_table(cfg, header, rows)
    return 0


def run_verify(cfg: RunConfig) -> int:
    report = nosignaling_report(grid=cfg.grid, seed=cfg.seed)
    _write(cfg.output_path, sweeps.render_json(report))
    quality_ok = 1.0 - 3.0 / cfg.grid <= report["max_quality"] <= 1.0 + 1e-6
    mismatch_ok = report["inequality_crosscheck_mismatches"] == 0
    return 0 if quality_ok and mismatch_ok else 1


def run_selftest(cfg: RunConfig, inject_failure: bool) -> int:
    results = selftest_mod.run_all(seed=cfg.seed, inject_failure=inject_failure)
    if cfg.format == "json":
        payload = {
            "schema_version": 1,
            "seed": cfg.seed,
            "all_passed": all(r.passed for r in results),
            "checks": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "value": r.value,
                    "target": r.target,
                    "tolerance": r.tolerance,
                    "detail": r.detail,
                }
                for r in results
            ],
        }
        _write(cfg.output_path, sweeps.render_json(payload))
    else:
        lines = []
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            value = "-" if r.value is None else f"{r.value:.12g}"
            target = "-" if r.target is None else f"{r.target:.12g}"
            tol = "-" if r.tolerance is None else f"{r.tolerance:.1e}"
            lines.append(f"[{status}] {r.name}  value={value} target={target} tol={tol}")
            if not r.passed and r.detail:
                lines.append(f"       {r.detail}")
        lines.append(
            "all checks passed"
            if all(r.passed for r in results)
            else "FAILED: "
            + ", ".join(r.name for r in results if not r.passed)
        )
        _write(cfg.output_path, "\n".join(lines) + "\n")
    return 0 if all(r.passed for r in results) else 1


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = _validate(parser, ns)
    try:
        if cfg.command in TABLE_COMMANDS:
            return run_table_command(cfg)
        if cfg.command == "verify-nosignaling":
            return run_verify(cfg)
        return run_selftest(cfg, getattr(ns, "inject_failure", False))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
