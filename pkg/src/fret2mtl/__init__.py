"""Compile FRETISH requirements into MTL and check translations by bounded enumeration."""
from .equiv import CheckConfig, Counterexample, Equivalent, Valid, check_equiv, check_implication
from .fretish import Requirement, enumerate_templates, parse_requirement, render_requirement
from .mtl import Formula, MetricsReport, metrics
from .text import Dialect, parse_formula, print_formula
from .traces import LassoTrace, Trace, eval_lasso, evaluate
from .translator import Semantics, translate

__all__ = [
    "CheckConfig",
    "Counterexample",
    "Dialect",
    "Equivalent",
    "Formula",
    "LassoTrace",
    "MetricsReport",
    "Requirement",
    "Semantics",
    "Trace",
    "Valid",
    "check_equiv",
    "check_implication",
    "enumerate_templates",
    "eval_lasso",
    "evaluate",
    "metrics",
    "parse_formula",
    "parse_requirement",
    "print_formula",
    "render_requirement",
    "translate",
]
