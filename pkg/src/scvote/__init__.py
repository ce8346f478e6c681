"""Single-candidate-vote mechanisms for eliminating candidates in metric spaces."""

from .distortion import (DistortionReport, cost_bound_lemma, expected_cost,
                         expected_utility, g_function, opt_cost, opt_utility,
                         utility_bound_lemma, worst_case_distortion)
from .election import (Committee, Election, Outcome, all_committees, eliminate,
                       is_consistent, projection_distance_point,
                       projection_distance_set, social_cost, social_utility,
                       tally)
from .mechanisms import (MECHANISMS, left_or_right, max_projection,
                         min_projection, power_proportionality,
                         proportionality)
from .metric import (FiniteMetric, distance_to_set, line_metric,
                     simplex_metric, validate)

__version__ = "0.1.0"

__all__ = [
    "DistortionReport", "cost_bound_lemma", "expected_cost", "expected_utility", "g_function",
    "opt_cost", "opt_utility", "utility_bound_lemma", "worst_case_distortion",
    "Committee", "Election", "Outcome", "all_committees", "eliminate", "is_consistent",
    "projection_distance_point", "projection_distance_set", "social_cost", "social_utility",
    "tally", "MECHANISMS", "left_or_right", "max_projection", "min_projection",
    "power_proportionality", "proportionality", "FiniteMetric", "distance_to_set",
    "line_metric", "simplex_metric", "validate",
]
