"""Barycentric rational interpolation on scaled nodes for functions with
algebraic or logarithmic singularities at the origin."""

from .barycentric import (BarycentricInterpolant, build_interpolant, cardinal_matrix,
                          differentiation_matrix, eval_derivative, eval_many, evaluate)
from .errors import AccuracyLossError, PoleError, SolverError
from .levin import LevinProblem, LevinResult, reference_oscillatory_integral, solve_levin
from .maps import (LogMap, PolyMap, PowerPlain, PowerScaled, SinhMap, SymmetricPower,
                   TanMap, mapped_nodes, symmetric_power_nodes)
from .newman import newman_abs, newman_sqrt
from .nodes import (GaussJacobiRule, NodeSet, chebyshev_points, chebyshev_weights,
                    gauss_jacobi_rule, jacobi_gauss_lobatto, jacobi_simplified_weights)
from .potential import (PotentialContext, RateFit, fit_convergence, potential_U_field,
                        potential_U_node, potential_V, rate_level_R)
from .volterra import (VolterraProblem, VolterraSystem, assemble_volterra, mittag_leffler,
                       solve_volterra)

__version__ = "0.1.0"

__all__ = [
    "AccuracyLossError", "BarycentricInterpolant", "GaussJacobiRule", "LevinProblem",
    "LevinResult", "LogMap", "NodeSet", "PoleError", "PolyMap", "PotentialContext",
    "PowerPlain", "PowerScaled", "RateFit", "SinhMap", "SolverError", "SymmetricPower",
    "TanMap", "VolterraProblem", "VolterraSystem", "assemble_volterra", "build_interpolant",
    "cardinal_matrix", "chebyshev_points", "chebyshev_weights", "differentiation_matrix",
    "eval_derivative", "eval_many", "evaluate", "fit_convergence", "gauss_jacobi_rule",
    "jacobi_gauss_lobatto", "jacobi_simplified_weights", "mapped_nodes", "mittag_leffler",
    "newman_abs", "newman_sqrt", "potential_U_field", "potential_U_node", "potential_V",
    "rate_level_R", "reference_oscillatory_integral", "solve_levin", "solve_volterra",
    "symmetric_power_nodes",
]
