"""troplin — exact tropical linear algebra on small ground sets.

Min-plus conventions throughout: tropical sum is ``min``, tropical product
is ``+``, and the tropical zero is ``INF``.  All finite values are exact
``fractions.Fraction``s; floats are rejected at the boundary so that
tie-breaking (which drives all the combinatorics here) is never left to
rounding.  Ground-set elements are 1-based everywhere, in the library and
in every file format.
"""

from .cells import (
    Cell,
    EnumerationLimit,
    FVector,
    adjacency_dot,
    adjacency_graph,
    bound_bounded,
    bound_total,
    check_facet_bound,
    enumerate_cells,
    enumerate_local_cells,
    f_vector,
    mixed_interior_count,
    mixed_total_count,
)
from .chart import LocalContext, LoopyMatroidError, project_any
from .conical import (
    HeightMatrix,
    Tree,
    build_tree,
    is_caterpillar,
    is_conical,
    local_complex_is_fine,
    random_height_matrix,
    tau,
)
from .diffcon import Constraint, DifferenceSystem, make_constraint, solve
from .kernels import BACKEND
from .matroid import ExchangeError, Matroid
from .plucker import NotValidatedError, PlueckerVector, ValuatedCircuit
from .semiring import INF, as_scalar, format_scalar, is_finite, parse_scalar, tdet

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Cell",
    "Constraint",
    "DifferenceSystem",
    "EnumerationLimit",
    "ExchangeError",
    "FVector",
    "HeightMatrix",
    "INF",
    "LocalContext",
    "LoopyMatroidError",
    "Matroid",
    "NotValidatedError",
    "PlueckerVector",
    "Tree",
    "ValuatedCircuit",
    "adjacency_dot",
    "adjacency_graph",
    "as_scalar",
    "bound_bounded",
    "bound_total",
    "build_tree",
    "check_facet_bound",
    "enumerate_cells",
    "enumerate_local_cells",
    "f_vector",
    "format_scalar",
    "is_caterpillar",
    "is_conical",
    "is_finite",
    "local_complex_is_fine",
    "make_constraint",
    "mixed_interior_count",
    "mixed_total_count",
    "parse_scalar",
    "project_any",
    "random_height_matrix",
    "solve",
    "tau",
    "tdet",
    "__version__",
]
