"""Depth-restricted rectilinear Steiner arborescences."""
from .model import (ORIGIN, ROOT, EmbeddedSolution, Instance, MalformedSolution,
                    Point, Terminal, Topology, ValidationReport, hanan_grid,
                    validate_instance, verify_solution)
from .feasibility import (Infeasible, KraftResult, build_depth_topology,
                          kraft_check, trivial_solution)
from .embedding import BindingError, optimal_embed
from .exact import BudgetExceeded, enumerate_topologies, solve_exact

__version__ = "0.1.0"
