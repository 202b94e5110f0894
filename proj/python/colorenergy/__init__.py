"""Colored complete graphs, color energy and low-color clique witnesses."""

import json

from . import _colorenergy as _core
from ._colorenergy import (
    ColoredGraph,
    Error,
    PrunedEnergyGraph,
    build_pruned,
    coloring_from_json,
    generate_coloring,
    is_pq_coloring,
    is_proper,
    max_color_degree,
    properize,
    repetitions_of_subset,
    run_cli,
    version,
)

__all__ = [
    "ColoredGraph",
    "Error",
    "PrunedEnergyGraph",
    "build_pruned",
    "color_energy",
    "coloring_from_json",
    "exact_f",
    "exponent_entry",
    "extract_subKt",
    "extract_theta",
    "generate_coloring",
    "greedy_low_color_clique",
    "holder_lower_bound",
    "is_pq_coloring",
    "is_proper",
    "max_color_degree",
    "properize",
    "repetitions_of_subset",
    "run_cli",
    "version",
]


def color_energy(g):
    return int(_core.color_energy(g))


def holder_lower_bound(g, r=2):
    out = json.loads(_core.holder_lower_bound(g, r))
    out["power_sum"] = int(out["power_sum"])
    return out


def exact_f(n, p, q):
    return json.loads(_core.exact_f(n, p, q))


def exponent_entry(theorem, **params):
    return json.loads(_core.exponent_entry(theorem, params))


def extract_subKt(pg, t=3):
    return json.loads(_core.extract_subKt(pg, t))


def extract_theta(pg, a, b):
    return json.loads(_core.extract_theta(pg, a, b))


def greedy_low_color_clique(g, k, m):
    return json.loads(_core.greedy_low_color_clique(g, k, m))
