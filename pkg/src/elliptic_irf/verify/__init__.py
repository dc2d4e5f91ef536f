"""Verification harness: seeded residual suites, JSON reports and the ``verify`` CLI."""

from .cli import main, run_suite, run_sweep
from .config import SuiteConfig

__all__ = ["SuiteConfig", "main", "run_suite", "run_sweep"]
