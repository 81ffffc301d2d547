"""Symmetry computations for Cayley graphs of the extraspecial group of order p^3, exponent p."""

__version__ = "0.1.0"

from .errors import CayleyError, ConfigError  # noqa: E402
from .group_core import GroupElement, GroupParams  # noqa: E402
from .graph_core import Graph  # noqa: E402
from .perm_core import PermGroup, Permutation  # noqa: E402
from .cayley import CayleyContext, build_cayley  # noqa: E402
from .aut_search import automorphism_group, search_automorphisms  # noqa: E402
from .clique_coset import build_coset_graph, sigma_for  # noqa: E402
from .symmetry import CheckResult  # noqa: E402
from .report import SuiteConfig, VerificationReport, export, run_suite  # noqa: E402

__all__ = [
    "CayleyContext",
    "CayleyError",
    "CheckResult",
    "ConfigError",
    "Graph",
    "GroupElement",
    "GroupParams",
    "PermGroup",
    "Permutation",
    "SuiteConfig",
    "VerificationReport",
    "automorphism_group",
    "build_cayley",
    "build_coset_graph",
    "export",
    "run_suite",
    "search_automorphisms",
    "sigma_for",
]
