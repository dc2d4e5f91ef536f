"""``verify`` command line entry point."""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import fields, replace

import numpy as np

from ..belavin import rk_matrix
from ..errors import ConfigError, EllipticIRFError, ParameterError
from ..theta import DELTA_GEN, lattice_distance
from .config import ALL, SUITES, SWEEP_PARAMS, SuiteConfig, load_config_file, to_jsonable
from .report import build_report, dumps, sweep_csv
from .suites import run_checks

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="verify",
        description="Run residual checks for the elliptic R-operator, IRF weights, "
                    "intertwiners, L-operators and the Belavin R-matrix.")
    p.add_argument("suite", choices=SUITES + (ALL,))
    p.add_argument("--config", metavar="PATH", help="JSON file with SuiteConfig fields")
    p.add_argument("--tau", help="modular parameter, e.g. 0.2+1.0i")
    p.add_argument("--mu", help="shift parameter mu")
    p.add_argument("--window", metavar="K1,K2", help="weight window indices")
    p.add_argument("--k", type=int, help="restrict k-indexed suites to this k")
    p.add_argument("--lambda", dest="lam", metavar="L1,L2,...", help="explicit weight values")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--xi", metavar="X1,X2,...", help="explicit spectral parameters")
    src.add_argument("--draws", type=int, metavar="N", help="number of random spectral draws")
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--sweep", choices=SWEEP_PARAMS, help="sweep one parameter over --grid")
    p.add_argument("--grid", metavar="V1,V2,...", help="grid values for --sweep")
    return p


def resolve_config(args: argparse.Namespace) -> SuiteConfig:
    """Defaults, then the config file, then explicit flags."""
    values = {}
    if args.config:
        values.update(load_config_file(args.config))
    for f in fields(SuiteConfig):
        if f.name == "suite":
            continue
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    if args.xi is not None:
        values.pop("draws", None)
    if args.draws is not None:
        values.pop("xi", None)
    values["suite"] = args.suite
    return SuiteConfig(**values).validate()


def run_suite(cfg: SuiteConfig) -> dict:
    start = time.perf_counter()
    checks = run_checks(cfg)
    return build_report(cfg, checks, time.perf_counter() - start)


def _skip_reason(cfg: SuiteConfig, value) -> str | None:
    if cfg.sweep == "xi" and lattice_distance(value, cfg.tau) <= DELTA_GEN:
        return "xi lies on the period lattice Z + Z tau"
    if cfg.sweep == "tau-imag" and value <= 0:
        return "Im(tau) must be positive"
    if cfg.sweep == "mu" and lattice_distance(value, cfg.tau) <= DELTA_GEN:
        return "mu lies on the period lattice Z + Z tau"
    return None


def run_sweep(cfg: SuiteConfig) -> dict:
    start = time.perf_counter()
    rows = []
    for value in cfg.grid:
        row = {"param": cfg.sweep, "value": to_jsonable(value)}
        reason = _skip_reason(cfg, value)
        if reason is None:
            if cfg.sweep == "xi":
                point = replace(cfg, xi=[value], draws=None)
            elif cfg.sweep == "mu":
                point = replace(cfg, mu=complex(value))
            else:
                point = replace(cfg, tau=complex(cfg.tau.real, value))
            try:
                rep = build_report(point, run_checks(point), 0.0)
            except (ParameterError, ConfigError) as exc:
                reason = str(exc)
            else:
                row.update(max_residual=rep["max_residual"], **{"pass": rep["pass"]})
                if cfg.sweep == "xi" and cfg.suite in ("ybe-matrix", "belavin-props"):
                    from ..theta import ModularParams
                    m = rk_matrix(cfg.k or 2, value, ModularParams(cfg.tau, cfg.mu))
                    row["matrix_norm"] = float(np.linalg.norm(m))
        if reason is not None:
            row.update(skipped=True, reason=reason, max_residual=None, **{"pass": None})
        rows.append(row)
    done = [r for r in rows if not r.get("skipped")]
    return {
        "schema": 1,
        "suite": cfg.suite,
        "sweep": cfg.sweep,
        "params": cfg.echo(),
        "rows": rows,
        "pass": bool(done) and all(r["pass"] for r in done),
        "wall_time": round(time.perf_counter() - start, 6),
    }


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        if cfg.sweep:
            report = run_sweep(cfg)
            text = sweep_csv(report["rows"]) if cfg.format == "csv" else dumps(report)
        else:
            report = run_suite(cfg)
            text = dumps(report)
    except (ConfigError, EllipticIRFError) as exc:
        print(f"verify: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    _emit(text, cfg.out)
    status = "PASS" if report["pass"] else "FAIL"
    print(f"verify {cfg.suite}: {status}", file=sys.stderr)
    return EXIT_PASS if report["pass"] else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
