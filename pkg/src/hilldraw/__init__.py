"""Antipodal geodesic drawings of complete graphs on the unit sphere.

Doubling a general-position point set with its antipodes and joining every
non-antipodal pair by a shorter geodesic yields drawings whose crossing
totals hit the Hill number H(n) exactly once pairwise disjoint matching
half-circles are added.  This package constructs such drawings, counts
crossings geometrically two independent ways, verifies every closed-form
count by exact integer comparison, and measures how random geodesic
drawings approach the same bound.
"""

from .construct import (BlowupPlan, ConstructionError, HalfCircleArrangement,
                        PerturbationError, blowup, default_plan_chain,
                        perturb, recursive_construct, seed_four, seed_single,
                        seed_two)
from .drawing import (AntipodalConfig, CrossingReport, Drawing, DrawingKind,
                      Edge, HalfCircleAssignment, VerificationReport,
                      add_apex, add_random_apex, build_cocktail_party,
                      complete_drawing_from_points, config_from_drawing,
                      count_crossings, count_crossings_by_circle_pairs,
                      delete_vertex, double, extend_partial_matching,
                      extend_to_complete, make_assignment, random_assignment,
                      strength, verify)
from .formulas import hill_number, partial_matching_target, per_vertex_target
from .geom import (DEFAULT_TOL, DegenerateConfigurationError, GeodesicArc,
                   HalfCircle, ToleranceConfig, angular_distance, antipode,
                   arcs_cross, half_circle_crosses_arc, half_circles_cross,
                   is_general_position, orient, rotate, unit)
from .montecarlo import (CensusResult, DistributionSpec, ExperimentConfig,
                         ExperimentResult, SamplingError, k4_census,
                         random_drawing_cr, ratio_experiment, sample_points)

__version__ = "1.0.0"

__all__ = [
    "AntipodalConfig", "BlowupPlan", "CensusResult", "ConstructionError",
    "CrossingReport", "DEFAULT_TOL", "DegenerateConfigurationError",
    "DistributionSpec", "Drawing", "DrawingKind", "Edge", "ExperimentConfig",
    "ExperimentResult", "GeodesicArc", "HalfCircle", "HalfCircleArrangement",
    "HalfCircleAssignment", "PerturbationError", "SamplingError",
    "ToleranceConfig", "VerificationReport", "add_apex", "add_random_apex",
    "angular_distance", "antipode", "arcs_cross", "blowup",
    "build_cocktail_party", "complete_drawing_from_points",
    "config_from_drawing", "count_crossings",
    "count_crossings_by_circle_pairs", "default_plan_chain", "delete_vertex",
    "double", "extend_partial_matching", "extend_to_complete",
    "half_circle_crosses_arc", "half_circles_cross", "hill_number",
    "is_general_position", "k4_census", "make_assignment", "orient",
    "partial_matching_target", "per_vertex_target", "perturb",
    "random_assignment", "random_drawing_cr", "ratio_experiment",
    "recursive_construct", "rotate", "sample_points", "seed_four",
    "seed_single", "seed_two", "strength", "unit", "verify",
]
