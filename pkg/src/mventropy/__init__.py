"""Desk-scale laboratory for entropies of multivalued dynamical systems.

Exact rational interval algebra and finite metric carriers; large/small
preimages; partition, cover, orbit and bottleneck entropies; invariant
measures with the strong-invariance check; continuous selections; and a
declarative scenario runner.
"""

__version__ = "0.1.0"

from .intervals import Boundary, IntervalSet, as_fraction, normalize
from .carriers import (
    FiniteMetricSpace,
    FiniteRelation,
    HyperspaceLift,
    PLBranch,
    PLFunc,
    PLMultiMap,
    compose,
    discretize,
    full_relation,
    hausdorff_distance,
    hyperspace_lift,
    identity_relation,
    iterate_relation,
    singleton_relation,
)
from .preimage import iterated_large_preimage, large_preimage, small_preimage
from .partitions import (
    FiniteMeasure,
    IntervalMeasure,
    OrderedPartition,
    conditional_entropy,
    disjointify,
    entropy_le_log_count_check,
    join_partitions,
    metric_entropy_estimate,
    nz_count,
    partition_entropy,
    refinement_sequence,
    xlogx,
)
from .covers import (
    Cover,
    OpennessViolation,
    SubcoverResult,
    cover_entropy_estimate,
    cover_entropy_ladder,
    cover_join,
    finite_ball_cover,
    interval_ball_cover,
    iterate_refinement_check,
    minimal_subcover,
    pullback_cover,
)
from .orbits import (
    CountResult,
    OrbitCapError,
    OrbitSet,
    bottleneck_distance,
    bottleneck_distance_matrix,
    bottleneck_entropy_estimates,
    bottleneck_separated_count,
    bottleneck_spanning_count,
    count_orbits,
    dn_distance,
    enumerate_orbits,
    hyperspace_entropy_estimate,
    orbit_entropy_estimates,
    orbit_separated_count,
    orbit_spanning_count,
)
from .measures import (
    FamilyNotClosedError,
    InvarianceResult,
    StrongInvarianceReport,
    equivalent_forms_check,
    find_invariant_measure,
    interval_algebra_family,
    invariance_report,
    strong_invariance_report,
    verify_invariance_bruteforce,
    verify_invariance_flow,
    verify_strong_invariance,
)
from .selections import (
    SelectionError,
    SelectionFamily,
    enumerate_selections,
    pl_selection,
    sandwich_report,
    selection_entropy,
)
from .estimates import EntropyEstimate, build_estimate, count_estimate
from .scenarios import (
    BUILTIN_SCENARIOS,
    PROPERTY_SUITES,
    ScenarioError,
    run_property_suite,
    run_scenario,
)
