"""Python access to the iazf verification core.

Exact values come back from the extension as "num/den" strings; the wrappers
here hand them out as fractions.Fraction.
"""

import json
from fractions import Fraction

from . import _iazf
from ._iazf import (
    DomainError,
    assignment_entries,
    consistency_check,
    count_matrices_at_node,
    render_table,
    run_cli,
    validate_table_json,
    verify_independence,
    zero_forcing_failures,
)

_FRACTION_KEYS = ("dof_per_node", "sdof_achievable", "sdof_upper", "delta_achievable", "delta_noncoop_lb", "gap")


def dof_per_node(K):
    return Fraction(_iazf.dof_per_node(K))


def ndt_achievable(K):
    return Fraction(_iazf.ndt_achievable(K))


def ndt_noncoop_lb(K):
    return Fraction(_iazf.ndt_noncoop_lb(K))


def corollary_gap(K):
    return Fraction(_iazf.corollary_gap(K))


def sdof_upper(K):
    return Fraction(_iazf.sdof_upper(K))


def tradeoff_curve(kmin, kmax):
    points = _iazf.tradeoff_curve(kmin, kmax)
    for p in points:
        for key in _FRACTION_KEYS:
            p[key] = Fraction(p[key])
    return points


def converse_report(K):
    report = json.loads(_iazf.converse_report_json(K))
    report["sdof_upper"] = Fraction(report["sdof_upper"])
    return report


def k5_block_report(seed=42, points=100):
    return json.loads(_iazf.k5_block_report_json(seed, points))


__all__ = [
    "DomainError",
    "assignment_entries",
    "consistency_check",
    "converse_report",
    "corollary_gap",
    "count_matrices_at_node",
    "dof_per_node",
    "k5_block_report",
    "ndt_achievable",
    "ndt_noncoop_lb",
    "render_table",
    "run_cli",
    "sdof_upper",
    "tradeoff_curve",
    "validate_table_json",
    "verify_independence",
    "zero_forcing_failures",
]
