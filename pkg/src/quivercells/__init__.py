"""Exact cross-verification of three tree-indexed counts on a quiver.

Three independently computed objects agree coefficientwise, and this package
computes all three and insists on the agreement:

  * the activity generating function: q^extact(T) summed over spanning trees,
    which equals the Tutte evaluation T(1, q);
  * the orbit-count polynomial of indecomposable rank-one representations
    over F_p, interpolated exactly from small primes;
  * stable-orbit counts of doubled-quiver moment fibers, decomposed into
    cells indexed by spanning trees, with q^betti times the activity sum as
    the total.
"""

from .activity import ActivityTrace, extact, extact_trace, tree_sum, tutte_full, tutte_one_q
from .counting import backend_name
from .errors import DecomposableError, DichotomyError, GenericityError, VerificationError
from .exactmath import (
    BivarPolynomial,
    IntPolynomial,
    InterpolationError,
    PrimeFieldElem,
    field_solve_linear,
    first_primes,
    interpolate,
)
from .graphs import (
    Edge,
    IncidenceVector,
    Quiver,
    QuiverFormatError,
    SpanningTree,
    betti,
    contract,
    contract_params,
    delete,
    incidence,
    load_quiver,
    parse_quiver,
    spanning_trees,
)
from .reps import (
    ToricRep,
    canonical_rep,
    classify_rep,
    count_indecomposable_orbits,
    inversion_graph,
    is_indecomposable,
    kac_polynomial,
)
from .varieties import (
    CellTable,
    DoublePoint,
    HKParams,
    OrientedInversionGraph,
    OrientedTree,
    assign_tree,
    auto_theta,
    canonical_gauge,
    canonical_point,
    cell_decompose,
    cell_points,
    contract_point,
    delete_point,
    destabilizers,
    enumerate_Zlambda,
    gauge_point,
    is_generic,
    is_generic_pair,
    is_stable,
    lift_point,
    min_destabilizer,
    moment_residual,
    orient_tree,
    poincare,
    restrict_point,
    split_point,
    stability_via_trees,
)

__version__ = "0.1.0"

__all__ = [
    "ActivityTrace",
    "BivarPolynomial",
    "CellTable",
    "DecomposableError",
    "DichotomyError",
    "DoublePoint",
    "Edge",
    "GenericityError",
    "HKParams",
    "IncidenceVector",
    "IntPolynomial",
    "InterpolationError",
    "OrientedInversionGraph",
    "OrientedTree",
    "PrimeFieldElem",
    "Quiver",
    "QuiverFormatError",
    "SpanningTree",
    "ToricRep",
    "VerificationError",
    "assign_tree",
    "auto_theta",
    "backend_name",
    "betti",
    "canonical_gauge",
    "canonical_point",
    "canonical_rep",
    "cell_decompose",
    "cell_points",
    "classify_rep",
    "contract",
    "contract_params",
    "contract_point",
    "count_indecomposable_orbits",
    "delete",
    "delete_point",
    "destabilizers",
    "enumerate_Zlambda",
    "extact",
    "extact_trace",
    "field_solve_linear",
    "first_primes",
    "gauge_point",
    "incidence",
    "interpolate",
    "inversion_graph",
    "is_generic",
    "is_generic_pair",
    "is_indecomposable",
    "is_stable",
    "kac_polynomial",
    "lift_point",
    "load_quiver",
    "min_destabilizer",
    "moment_residual",
    "orient_tree",
    "parse_quiver",
    "poincare",
    "restrict_point",
    "spanning_trees",
    "split_point",
    "stability_via_trees",
    "tree_sum",
    "tutte_full",
    "tutte_one_q",
]
