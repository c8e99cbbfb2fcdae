"""Greedy coding-first construction of fractional schedules.

The scheduler serves a per-link demand by repeatedly picking a maximal
conflict-free set of hyperarcs, always scanning broadcasts of larger
weight first, and running it for the smallest remaining demand among the
picked vertices. Each round settles at least one link, so the loop runs
at most once per link, and the produced schedule delivers the demand
exactly. Its length never exceeds the worst closed-neighborhood demand,
which also yields a simple sufficient test for fitting a unit time frame.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .conflict import ConflictGraph, Neighborhoods
from .errors import SolverError, ValidationError
from .model import Network
from .schedule import FractionalSchedule

__all__ = [
    "CodingFirstOrdering",
    "coding_first_ordering",
    "coding_first_mwis",
    "cfs_schedule",
    "cfs_length_bound",
    "inductive_polytope_membership",
]

_RESIDUAL_EPS = 1e-12


@dataclass(frozen=True)
class CodingFirstOrdering:
    """Hyperarc vertices sorted by descending weight, then ascending index."""

    order: tuple[int, ...]


def coding_first_ordering(gh: ConflictGraph) -> CodingFirstOrdering:
    """The scan order used by the greedy scheduler."""
    order = sorted(range(1, gh.vertex_count + 1), key=lambda v: (-gh.weights[v - 1], v))
    return CodingFirstOrdering(order=tuple(order))


def coding_first_mwis(
    candidates: Iterable[int], omega: CodingFirstOrdering, gh: ConflictGraph
) -> frozenset[int]:
    """Greedy maximal independent set scanned in coding-first order.

    Scans the ordering, keeps candidates, and adds every vertex not in
    conflict with one already chosen. The result always contains the
    first candidate in the ordering.
    """
    remaining = set(candidates)
    if not remaining:
        raise ValidationError("empty candidate set")
    chosen: list[int] = []
    taken: set[int] = set()
    for v in omega.order:
        if v in remaining and not (gh.adjacency[v - 1] & taken):
            chosen.append(v)
            taken.add(v)
    return frozenset(chosen)


def cfs_schedule(
    network: Network, gh: ConflictGraph, omega: CodingFirstOrdering, demand
) -> FractionalSchedule:
    """Greedy fractional schedule delivering the demand exactly.

    Every round: each surviving vertex is assigned the minimum residual
    demand over its sub-links, zero-demand vertices leave for good, one
    conflict-free set is chosen coding-first, runs for the smallest
    assigned demand among its members, and that time is subtracted from
    every sub-link it serves.
    """
    n = network.link_count
    if gh.link_count != n:
        raise ValidationError("conflict graph does not match the network")
    d = np.asarray(demand, dtype=float)
    if d.shape != (n,):
        raise ValidationError(f"demand has shape {d.shape}, expected ({n},)")
    if not np.all(np.isfinite(d)) or np.any(d < 0):
        raise ValidationError("demand must be finite and nonnegative")

    residual = d.copy()
    surviving = set(range(1, gh.vertex_count + 1))
    entries: list[tuple[frozenset[int], float]] = []
    for _ in range(n + 2):
        if not surviving:
            break
        assigned = {
            v: min(residual[a - 1] for a in gh.sublinks[v - 1]) for v in surviving
        }
        surviving = {v for v in surviving if assigned[v] > _RESIDUAL_EPS}
        if not surviving:
            break
        picked = coding_first_mwis(surviving, omega, gh)
        lam = min(assigned[v] for v in picked)
        entries.append((picked, float(lam)))
        for v in picked:
            for a in gh.sublinks[v - 1]:
                left = residual[a - 1] - lam
                residual[a - 1] = left if left > _RESIDUAL_EPS else 0.0
    else:
        raise SolverError("scheduling failed to settle every link")  # unreachable
    return FractionalSchedule(tuple(entries))


def cfs_length_bound(demand, neighborhoods: Neighborhoods) -> float:
    """Worst closed-neighborhood demand: the greedy length never exceeds it."""
    d = np.asarray(demand, dtype=float)
    if d.shape != (len(neighborhoods.sets),):
        raise ValidationError(
            f"demand has shape {d.shape}, expected ({len(neighborhoods.sets)},)"
        )
    return max(
        (float(sum(d[a - 1] for a in nb)) for nb in neighborhoods.sets), default=0.0
    )


def inductive_polytope_membership(demand, neighborhoods: Neighborhoods) -> bool:
    """Sufficient schedulability test: every closed-neighborhood demand fits one unit."""
    return cfs_length_bound(demand, neighborhoods) <= 1.0 + 1e-12
