"""Fractional schedules and the per-link delivered-rate function."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ValidationError
from .model import Network

__all__ = ["FractionalSchedule", "link_capacity_function"]


def link_capacity_function(
    weighted_sets: Iterable[tuple[Iterable[int], float]], link_count: int
) -> np.ndarray:
    """Per-link delivered rate of a weighted collection of link sets.

    Each pair is (link indices, weight); a link's rate is the sum of the
    weights of the sets containing it.
    """
    rates = np.zeros(link_count)
    for links, lam in weighted_sets:
        lam = float(lam)
        if not math.isfinite(lam):
            raise ValidationError("non-finite schedule weight")
        for a in links:
            if not 1 <= a <= link_count:
                raise ValidationError(f"link index {a} outside 1..{link_count}")
            rates[a - 1] += lam
    return rates


@dataclass(frozen=True, eq=False)
class FractionalSchedule:
    """Weighted sequence of conflict-free hyperarc sets.

    Entries are (hyperarc index set, positive weight). The total weight is
    the schedule length; lengths above one are legal and simply mean the
    schedule does not fit one unit time frame.
    """

    entries: tuple[tuple[frozenset[int], float], ...]

    def __post_init__(self) -> None:
        cleaned = []
        for vertices, lam in self.entries:
            lam = float(lam)
            if not math.isfinite(lam) or lam <= 0:
                raise ValidationError(f"schedule weight must be positive, got {lam}")
            cleaned.append((frozenset(vertices), lam))
        object.__setattr__(self, "entries", tuple(cleaned))

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def length(self) -> float:
        return float(sum(lam for _, lam in self.entries))

    def sublink_sets(self, network: Network) -> list[tuple[frozenset[int], float]]:
        """Expand each entry's hyperarcs into the union of their sub-links."""
        arcs = network.hyperarcs
        expanded = []
        for vertices, lam in self.entries:
            links: frozenset[int] = frozenset()
            for v in sorted(vertices):
                if not 1 <= v <= len(arcs):
                    raise ValidationError(f"hyperarc index {v} outside 1..{len(arcs)}")
                links |= network.sublink_indices(arcs[v - 1])
            expanded.append((links, lam))
        return expanded

    def capacity(self, network: Network) -> np.ndarray:
        """The delivered per-link rates of this schedule on a network."""
        return link_capacity_function(self.sublink_sets(network), network.link_count)
