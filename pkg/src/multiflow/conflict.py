"""Protocol-model conflict graphs over links and hyperarcs.

Two links conflict when either transmitter sits within interference range
of the other's receiver; the comparison is inclusive with no slack. Two
hyperarcs conflict when any pair of their sub-links does, so hyperarcs
sharing a tail always conflict. Schedulable sets are the independent sets
of these graphs; the catalog enumerates the maximal ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import EnumerationCapError, ValidationError
from .model import Hyperarc, Link, Network, Node, distance

__all__ = [
    "DEFAULT_ENUMERATION_CAP",
    "ConflictGraph",
    "SchedulableSetCatalog",
    "Neighborhoods",
    "links_conflict",
    "hyperarcs_conflict",
    "build_conflict_graph",
    "enumerate_schedulable_sets",
    "closed_neighborhoods",
    "inductive_schedulable_number",
]

DEFAULT_ENUMERATION_CAP = 24


def _endpoints_conflict(i: int, j: int, i2: int, j2: int, nodes: Mapping[int, Node]) -> bool:
    # transmitter of one within interference range of the other's receiver
    return (
        distance(nodes[i2], nodes[j]) <= nodes[i2].interf_radius
        or distance(nodes[i], nodes[j2]) <= nodes[i].interf_radius
    )


def links_conflict(l: Link, l2: Link, nodes: Mapping[int, Node]) -> bool:
    """Protocol-model interference test for two distinct links."""
    return _endpoints_conflict(l.tail, l.head, l2.tail, l2.head, nodes)


def hyperarcs_conflict(h: Hyperarc, h2: Hyperarc, nodes: Mapping[int, Node]) -> bool:
    """Existential sub-link test: true when some sub-link pair interferes."""
    for j in h.heads:
        for j2 in h2.heads:
            if _endpoints_conflict(h.tail, j, h2.tail, j2, nodes):
                return True
    return False


@dataclass(frozen=True, eq=False)
class ConflictGraph:
    """A conflict graph with 1-based vertices aligned to link or hyperarc indices.

    ``sublinks[v-1]`` holds the link indices delivered by vertex v, which
    is ``{v}`` itself at link level.
    """

    level: str
    items: tuple
    weights: tuple[int, ...]
    sublinks: tuple[frozenset[int], ...]
    link_count: int
    edges: frozenset[tuple[int, int]]
    adjacency: tuple[frozenset[int], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.items)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v - 1]

    def conflicts(self, u: int, v: int) -> bool:
        return v in self.adjacency[u - 1]

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = sorted(set(vertices))
        return all(v not in self.adjacency[u - 1] for u, v in itertools.combinations(vs, 2))


def build_conflict_graph(network: Network, level: str = "link") -> ConflictGraph:
    """Build the conflict graph of a network at link or hyperarc level."""
    if level == "link":
        items: tuple = network.links
        sublinks = tuple(frozenset((lk.index,)) for lk in network.links)
        weights = tuple(1 for _ in network.links)
    elif level == "hyperarc":
        items = network.hyperarcs
        sublinks = tuple(network.sublink_indices(h) for h in network.hyperarcs)
        weights = tuple(h.weight for h in network.hyperarcs)
    else:
        raise ValidationError(f"unknown conflict graph level {level!r}")

    nodes = network.node_map
    count = len(items)
    edges = set()
    adj: list[set[int]] = [set() for _ in range(count)]
    for p, q in itertools.combinations(range(count), 2):
        if level == "link":
            hit = links_conflict(items[p], items[q], nodes)
        else:
            hit = hyperarcs_conflict(items[p], items[q], nodes)
        if hit:
            edges.add((p + 1, q + 1))
            adj[p].add(q + 1)
            adj[q].add(p + 1)
    return ConflictGraph(
        level=level,
        items=items,
        weights=weights,
        sublinks=sublinks,
        link_count=network.link_count,
        edges=frozenset(edges),
        adjacency=tuple(frozenset(a) for a in adj),
    )


@dataclass(frozen=True, eq=False)
class SchedulableSetCatalog:
    """Maximal schedulable sets with their sub-link expansions.

    ``hyperarc_sets[k]`` is a maximal independent set of graph vertices;
    ``sublink_sets[k]`` is the union of those vertices' sub-links; and
    ``incidence[k]`` is its 0/1 row over the link ordering.
    """

    hyperarc_sets: tuple[frozenset[int], ...]
    sublink_sets: tuple[frozenset[int], ...]
    incidence: np.ndarray
    link_count: int

    def __len__(self) -> int:
        return len(self.hyperarc_sets)


def _maximal_independent_sets(cg: ConflictGraph) -> tuple[frozenset[int], ...]:
    # Bron-Kerbosch with pivot, run on the complement graph.
    n = cg.vertex_count
    if n == 0:
        return ()
    allv = frozenset(range(1, n + 1))
    nonadj = tuple(allv - cg.adjacency[v - 1] - {v} for v in range(1, n + 1))
    found: list[frozenset[int]] = []

    def expand(chosen: tuple[int, ...], cand: set[int], excl: set[int]) -> None:
        if not cand and not excl:
            found.append(frozenset(chosen))
            return
        pivot = max(sorted(cand | excl), key=lambda u: len(cand & nonadj[u - 1]))
        for v in sorted(cand - nonadj[pivot - 1]):
            expand(chosen + (v,), cand & nonadj[v - 1], excl & nonadj[v - 1])
            cand = cand - {v}
            excl = excl | {v}

    expand((), set(allv), set())
    found.sort(key=lambda s: tuple(sorted(s)))
    return tuple(found)


def enumerate_schedulable_sets(
    cg: ConflictGraph, cap: int = DEFAULT_ENUMERATION_CAP
) -> SchedulableSetCatalog:
    """Enumerate every maximal independent set of the conflict graph.

    Raises EnumerationCapError when the graph has more than ``cap``
    vertices; large instances should use the greedy scheduler instead.
    The output order is deterministic (sorted by vertex tuple).
    """
    if cg.vertex_count > cap:
        raise EnumerationCapError(
            f"{cg.vertex_count} vertices exceed the exact enumeration cap of {cap}; "
            f"raise the cap or use the greedy scheduler"
        )
    sets = _maximal_independent_sets(cg)
    sublink_sets = tuple(
        frozenset().union(*(cg.sublinks[v - 1] for v in s)) for s in sets
    )
    incidence = np.zeros((len(sets), cg.link_count))
    for k, ls in enumerate(sublink_sets):
        for a in ls:
            incidence[k, a - 1] = 1.0
    return SchedulableSetCatalog(
        hyperarc_sets=sets,
        sublink_sets=sublink_sets,
        incidence=incidence,
        link_count=cg.link_count,
    )


@dataclass(frozen=True)
class Neighborhoods:
    """Closed conflict neighborhoods of every link, plus the maximum degree."""

    sets: tuple[frozenset[int], ...]
    max_conflict_degree: int


def closed_neighborhoods(g: ConflictGraph) -> Neighborhoods:
    """Closed neighborhood of each link vertex in the link-level graph."""
    if g.level != "link":
        raise ValidationError("closed neighborhoods are defined over the link-level graph")
    sets = tuple(frozenset({v} | g.adjacency[v - 1]) for v in range(1, g.vertex_count + 1))
    degree = max((len(s) - 1 for s in sets), default=0)
    return Neighborhoods(sets=sets, max_conflict_degree=degree)


def inductive_schedulable_number(
    catalog: SchedulableSetCatalog, neighborhoods: Neighborhoods
) -> int:
    """Largest overlap between a schedulable sub-link set and a closed neighborhood.

    This is the factor by which the greedy schedule length can exceed the
    optimal fractional length.
    """
    if not catalog.sublink_sets:
        raise ValidationError("empty schedulable-set catalog")
    if not neighborhoods.sets:
        raise ValidationError("no links, so no conflict neighborhoods")
    return max(
        len(ls & nb) for ls in catalog.sublink_sets for nb in neighborhoods.sets
    )
