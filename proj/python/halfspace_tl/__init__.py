"""Tester-learner for homogeneous halfspaces under Gaussian marginals."""

import json

from ._htl import (
    ERROR_CONSTANT,
    empirical_error,
    estimate_chow,
    gaussian_moment,
    generate,
    planted_direction,
    required_sample_count,
)
from . import _htl

__all__ = [
    "ERROR_CONSTANT",
    "empirical_error",
    "estimate_chow",
    "gaussian_moment",
    "generate",
    "learn",
    "moment_test",
    "planted_direction",
    "required_sample_count",
    "wedge_test",
]


def learn(x, y, epsilon=0.05, tau=0.1, seed=0, k_cap=4, c_a=2.0, slack=6.0,
          strict_constant=None):
    """Runs the tester-learner; returns the report as a dict."""
    return json.loads(_htl.learn_json(x, y, epsilon, tau, seed, k_cap, c_a, slack,
                                      strict_constant))


def moment_test(x, k, slack=6.0, strict_constant=None):
    """Degree-k moment-matching test against N(0, I); returns a dict."""
    return json.loads(_htl.moment_test_json(x, k, slack, strict_constant))


def wedge_test(x, v, eta):
    """Wedge-bound certificate for direction v at radius eta; returns a dict."""
    return json.loads(_htl.wedge_test_json(x, v, eta))
