"""Certifying toolkit for odd holes, pentagonal graphs and chromatic bounds."""

from __future__ import annotations

from .errors import BudgetExhausted, CapabilityError, OddHolesError, UsageError
from .graph import Graph, from_edgelist, from_graph6, to_edgelist, to_graph6

__version__ = "0.1.0"

__all__ = ["BudgetExhausted", "CapabilityError", "Graph", "OddHolesError", "UsageError",
           "from_edgelist", "from_graph6", "to_edgelist", "to_graph6", "__version__"]
