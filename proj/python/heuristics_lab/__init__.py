"""Randomized search heuristics under noise.

Settings are dictionaries of dotted keys (see ``config_keys()``) with string
values, the same form the ``hlab`` command line accepts in config files.
"""

import json

from . import _core
from ._core import (
    HlabError,
    check_dominated,
    config_keys,
    geom_tail,
    mean_ci,
    run_acceptance,
)

__all__ = [
    "HlabError",
    "check_dominated",
    "config_keys",
    "dist",
    "drift",
    "eval_benchmark",
    "expected_hitting_time",
    "geom_tail",
    "mean_ci",
    "oracle",
    "resolve_config",
    "run",
    "run_acceptance",
]


def _settings(settings):
    return {str(k): str(v) for k, v in settings.items()}


def run(settings, threads=0):
    """Runs the configured replicates; returns records plus CSV and JSON text."""
    return _core.run_experiment(_settings(settings), threads)


def oracle(settings, start=None, horizon=None, chain="auto"):
    """Exact report for a small instance, parsed from JSON."""
    return json.loads(_core.oracle_report(_settings(settings), start, horizon, chain))


def dist(settings, confidence=0.99, threads=0):
    return json.loads(_core.dist_report(_settings(settings), confidence, threads))


def drift(settings, levels, samples=10000, epsilon=None, threads=0):
    return json.loads(_core.drift_report(_settings(settings), list(levels), samples, epsilon, threads))


def resolve_config(settings):
    """Every config key with its resolved value, defaults included."""
    return _core.resolve_config(_settings(settings))


def eval_benchmark(settings, bits):
    return _core.eval_benchmark(_settings(settings), bits)


def expected_hitting_time(settings, start):
    """Exact E[T] from a start string on the full chain; None if the optimum is unreachable."""
    return _core.expected_hitting_time(_settings(settings), start)
