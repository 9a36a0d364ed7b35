"""
Laws - randomized checks of the algebraic, entropic and closure properties.

Laws register themselves with ``@law`` (see ``grc.laws.suites``); ``run_laws`` runs
them under hypothesis with a fixed seed and reports the shrunk counterexample of each.
"""

from .base import Law, LawEnv, LawRegistry, get_law_registry, law
from .runner import LawReport, LawResult, run_law, run_laws

__all__ = [
    "Law",
    "LawEnv",
    "LawRegistry",
    "LawReport",
    "LawResult",
    "get_law_registry",
    "law",
    "run_law",
    "run_laws",
]
