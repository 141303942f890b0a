"""Command-line front end: scenario files, runners and reports."""

from __future__ import annotations

from .main import main
from .report import CheckResult, Report, render
from .runner import run_scenario
from .scenario import Scenario, ScenarioError, emit_scenario, parse_scenario

__all__ = [
    "CheckResult",
    "Report",
    "Scenario",
    "ScenarioError",
    "emit_scenario",
    "main",
    "parse_scenario",
    "render",
    "run_scenario",
]
