"""Deterministic JSON reports and sweep tables."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math

from .config import SuiteConfig, to_jsonable
from .suites import Check

SCHEMA = 1


def inputs_digest(inputs: dict) -> str:
    blob = json.dumps(to_jsonable(inputs), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def check_passes(check: Check, tol: float) -> bool:
    return check.error is None and check.residual is not None and check.residual < tol


def build_report(cfg: SuiteConfig, checks: list, wall_time: float) -> dict:
    rows = []
    for c in sorted(checks, key=lambda c: c.name):
        row = {"name": c.name, "inputs_digest": inputs_digest(c.inputs),
               "residual": c.residual, "pass": check_passes(c, cfg.tol)}
        if c.error is not None:
            row["error"] = c.error
        rows.append(row)
    finite = [c.residual for c in checks if c.residual is not None]
    max_res = max(finite) if finite else None
    ok = bool(rows) and all(r["pass"] for r in rows)
    return {
        "schema": SCHEMA,
        "suite": cfg.suite,
        "params": cfg.echo(),
        "checks": rows,
        "max_residual": max_res,
        "pass": ok,
        "wall_time": round(wall_time, 6),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"


def format_value(v) -> str:
    if isinstance(v, complex):
        return f"{v.real!r}{'+' if v.imag >= 0 or math.isnan(v.imag) else '-'}{abs(v.imag)!r}i"
    return repr(v)


def sweep_csv(rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["param", "value", "max_residual", "pass"])
    for r in rows:
        val = r["value"]
        val = complex(*val) if isinstance(val, list) else val
        if r.get("skipped"):
            w.writerow([r["param"], format_value(val), "", "skipped"])
        else:
            res = "" if r["max_residual"] is None else repr(r["max_residual"])
            w.writerow([r["param"], format_value(val), res, "true" if r["pass"] else "false"])
    return buf.getvalue()
