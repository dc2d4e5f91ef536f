"""Suite configuration: defaults, JSON config files and value parsing."""

from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass, field, fields
from typing import Optional

from ..errors import ConfigError

SUITES = (
    "theta", "ybe-pointwise", "subspace", "belavin-props", "ybe-matrix",
    "irf-star-triangle", "vertex-irf", "duality", "weyl-kac", "exchange",
    "rll", "belavin-vertex-irf", "belavin-rll",
)
ALL = "all"
SWEEP_PARAMS = ("xi", "mu", "tau-imag")

_COMPLEX_RE = re.compile(r"^\s*[-+0-9.eE]+(\s*[-+]\s*[0-9.eE]*[ij])?\s*$|^\s*[-+0-9.eE]*[ij]\s*$")


def parse_complex(value) -> complex:
    """'0.2+1.0i', '0.3', '-1.5j', [re, im] or a number."""
    if isinstance(value, bool):
        raise ConfigError(f"not a complex number: {value!r}")
    if isinstance(value, (int, float, complex)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        try:
            return complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"not a complex number: {value!r}") from exc
    if isinstance(value, str) and _COMPLEX_RE.match(value):
        try:
            return complex(value.replace(" ", "").replace("i", "j"))
        except ValueError:
            pass
    raise ConfigError(f"not a complex number: {value!r}")


def parse_complex_list(value) -> list:
    if isinstance(value, str):
        return [parse_complex(v) for v in value.split(",") if v.strip()]
    if isinstance(value, (list, tuple)):
        # a bare [re, im] pair is ambiguous; require a list of values
        return [parse_complex(v) for v in value]
    raise ConfigError(f"expected a list of complex numbers, got {value!r}")


def parse_window(value) -> tuple:
    if isinstance(value, str):
        parts = value.split(",")
    else:
        parts = list(value)
    if len(parts) != 2:
        raise ConfigError(f"window must be K1,K2, got {value!r}")
    try:
        k1, k2 = (int(p) for p in parts)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"window must be two integers, got {value!r}") from exc
    if k2 < k1:
        raise ConfigError(f"window needs K1 <= K2, got {value!r}")
    return k1, k2


@dataclass
class SuiteConfig:
    suite: str = ALL
    tau: complex = 0.2 + 1.0j
    mu: complex = 0.41421356237309515
    window: tuple = (0, 3)
    k: Optional[int] = None
    lam: Optional[list] = None
    xi: Optional[list] = None
    draws: Optional[int] = None
    seed: int = 42
    tol: float = 1e-8
    out: Optional[str] = None
    format: str = "json"
    sweep: Optional[str] = None
    grid: Optional[list] = field(default=None)

    def validate(self) -> "SuiteConfig":
        if self.suite != ALL and self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES + (ALL,))}")
        self.tau = parse_complex(self.tau)
        if self.tau.imag <= 0:
            raise ConfigError(f"tau must have positive imaginary part, got {self.tau!r}")
        self.mu = parse_complex(self.mu)
        self.window = parse_window(self.window)
        if self.k is not None:
            self.k = int(self.k)
            if not 1 <= self.k <= 6:
                raise ConfigError(f"k must be in 1..6, got {self.k}")
        if self.lam is not None:
            self.lam = parse_complex_list(self.lam)
            if not self.lam:
                raise ConfigError("explicit lambda list is empty")
        if self.xi is not None:
            self.xi = parse_complex_list(self.xi)
        if self.draws is not None:
            self.draws = int(self.draws)
            if self.draws < 1:
                raise ConfigError("draws must be >= 1")
        self.seed = int(self.seed)
        self.tol = float(self.tol)
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        if self.format not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, got {self.format!r}")
        if self.sweep is not None:
            if self.sweep not in SWEEP_PARAMS:
                raise ConfigError(f"sweep parameter must be one of {SWEEP_PARAMS}")
            if not self.grid:
                raise ConfigError("a sweep needs a non-empty grid")
            self.grid = parse_complex_list(self.grid) if self.sweep == "xi" else [
                float(parse_complex(v).real) for v in (self.grid.split(",") if isinstance(self.grid, str) else self.grid)]
        elif self.format == "csv":
            raise ConfigError("csv output is only available for sweeps")
        return self

    def echo(self) -> dict:
        """JSON-ready parameter echo (complex as [re, im]; output fields omitted)."""
        out = {}
        for f in fields(self):
            if f.name in ("out", "format"):
                continue
            out[f.name] = to_jsonable(getattr(self, f.name))
        return out


def to_jsonable(value):
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: to_jsonable(v) for k, v in value.items()}
    return value


def load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    known = {f.name for f in fields(SuiteConfig)}
    aliases = {"lambda": "lam"}
    out = {}
    for key, val in data.items():
        key = aliases.get(key, key.replace("-", "_"))
        if key not in known:
            raise ConfigError(f"unknown config field {key!r}")
        out[key] = val
    return out


def default_dict() -> dict:
    return asdict(SuiteConfig())
