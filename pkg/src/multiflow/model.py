"""Geometric wireless network model: nodes, directed links, broadcast hyperarcs.

A node reaches receivers within its communication radius and occupies the
medium within its interference radius, which is never smaller. Links are
the ordered in-range pairs, indexed 1..n in lexicographic (tail, head)
order. A hyperarc (i, J) is one broadcast transmission from node i heard
by every head in J; its sub-links (i, j) for j in J must all exist as
links, and every link doubles as the weight-1 hyperarc delivering just
itself.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ValidationError

__all__ = [
    "DEFAULT_MAX_CODING_DEGREE",
    "Node",
    "Link",
    "Hyperarc",
    "Network",
    "distance",
    "build_links",
    "build_network",
    "generate_hyperarcs",
]

DEFAULT_MAX_CODING_DEGREE = 3


@dataclass(frozen=True)
class Node:
    """A radio at a fixed position with communication and interference radii."""

    id: int
    x: float
    y: float
    comm_radius: float
    interf_radius: float

    def __post_init__(self) -> None:
        values = (self.x, self.y, self.comm_radius, self.interf_radius)
        if not all(math.isfinite(float(v)) for v in values):
            raise ValidationError(f"node {self.id}: non-finite coordinate or radius")
        if self.comm_radius <= 0:
            raise ValidationError(f"node {self.id}: communication radius must be positive")
        if self.interf_radius < self.comm_radius:
            raise ValidationError(
                f"node {self.id}: interference radius {self.interf_radius} is smaller "
                f"than the communication radius {self.comm_radius}"
            )


def distance(u: Node, v: Node) -> float:
    """Euclidean distance between two nodes."""
    return math.hypot(u.x - v.x, u.y - v.y)


@dataclass(frozen=True)
class Link:
    """A directed in-range pair (tail, head) with its 1-based canonical index."""

    tail: int
    head: int
    index: int

    def __post_init__(self) -> None:
        if self.tail == self.head:
            raise ValidationError(f"link ({self.tail}, {self.head}): tail equals head")

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.tail, self.head)


@dataclass(frozen=True)
class Hyperarc:
    """A broadcast transmission (tail, heads) with its 1-based index.

    The weight is the number of heads; weight-1 hyperarcs are exactly the
    links and share the link's index.
    """

    tail: int
    heads: frozenset[int]
    index: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "heads", frozenset(self.heads))
        if not self.heads:
            raise ValidationError(f"hyperarc at node {self.tail}: empty head set")
        if self.tail in self.heads:
            raise ValidationError(f"hyperarc at node {self.tail}: tail listed among heads")

    @property
    def weight(self) -> int:
        return len(self.heads)


def build_links(nodes: Iterable[Node]) -> tuple[Link, ...]:
    """Derive all links of a node set.

    A link (i, j) exists when 0 < d(i, j) <= comm_radius(i); the relation
    is asymmetric under heterogeneous radii. The result is ordered
    lexicographically by (tail id, head id) and indexed from 1, and does
    not depend on the input ordering.
    """
    ordered = sorted(nodes, key=lambda nd: nd.id)
    ids = [nd.id for nd in ordered]
    if len(set(ids)) != len(ids):
        dup = sorted({i for i in ids if ids.count(i) > 1})
        raise ValidationError(f"duplicate node ids: {dup}")
    links = []
    for u, v in itertools.permutations(ordered, 2):
        d = distance(u, v)
        if 0 < d <= u.comm_radius:
            links.append((u.id, v.id))
    return tuple(Link(t, h, k + 1) for k, (t, h) in enumerate(links))


class Network:
    """Immutable network over a node set.

    Links are derived from the geometry. Hyperarcs always contain one
    weight-1 entry per link, with the link's index, followed by the coded
    head sets sorted by (tail, weight, sorted heads). Instances are meant
    to be treated as read-only after construction.
    """

    def __init__(self, nodes: Iterable[Node], coded: Iterable[tuple[int, Iterable[int]]] = ()):
        self._nodes = tuple(sorted(nodes, key=lambda nd: nd.id))
        self._node_map = {nd.id: nd for nd in self._nodes}
        self._links = build_links(self._nodes)
        self._by_ends = {(lk.tail, lk.head): lk for lk in self._links}
        out: dict[int, list[Link]] = {nd.id: [] for nd in self._nodes}
        inc: dict[int, list[Link]] = {nd.id: [] for nd in self._nodes}
        for lk in self._links:
            out[lk.tail].append(lk)
            inc[lk.head].append(lk)
        self._out = {nid: tuple(ls) for nid, ls in out.items()}
        self._in = {nid: tuple(ls) for nid, ls in inc.items()}

        seen: set[tuple[int, frozenset[int]]] = set()
        coded_sets: list[tuple[int, frozenset[int]]] = []
        for tail, heads in coded:
            hs = frozenset(heads)
            self._validate_heads(tail, hs)
            if len(hs) == 1:
                continue  # already present as the weight-1 hyperarc of that link
            if (tail, hs) in seen:
                raise ValidationError(f"duplicate hyperarc ({tail}, {sorted(hs)})")
            seen.add((tail, hs))
            coded_sets.append((tail, hs))
        coded_sets.sort(key=lambda th: (th[0], len(th[1]), tuple(sorted(th[1]))))
        arcs = [Hyperarc(lk.tail, frozenset((lk.head,)), lk.index) for lk in self._links]
        base = len(self._links)
        arcs.extend(Hyperarc(t, hs, base + k + 1) for k, (t, hs) in enumerate(coded_sets))
        self._hyperarcs = tuple(arcs)

    def _validate_heads(self, tail: int, heads: frozenset[int]) -> None:
        if tail not in self._node_map:
            raise ValidationError(f"hyperarc tail {tail}: unknown node id")
        if not heads:
            raise ValidationError(f"hyperarc at node {tail}: empty head set")
        for j in sorted(heads):
            if j == tail:
                raise ValidationError(f"hyperarc at node {tail}: tail listed among heads")
            if j not in self._node_map:
                raise ValidationError(f"hyperarc ({tail}, {sorted(heads)}): unknown head id {j}")
            if (tail, j) not in self._by_ends:
                raise ValidationError(
                    f"hyperarc ({tail}, {sorted(heads)}): sub-link ({tail}, {j}) is not a link"
                )

    @property
    def nodes(self) -> tuple[Node, ...]:
        return self._nodes

    @property
    def node_map(self) -> Mapping[int, Node]:
        return self._node_map

    @property
    def links(self) -> tuple[Link, ...]:
        return self._links

    @property
    def hyperarcs(self) -> tuple[Hyperarc, ...]:
        return self._hyperarcs

    @property
    def link_count(self) -> int:
        return len(self._links)

    @property
    def hyperarc_count(self) -> int:
        return len(self._hyperarcs)

    @property
    def max_weight(self) -> int:
        return max((h.weight for h in self._hyperarcs), default=0)

    def node(self, node_id: int) -> Node:
        try:
            return self._node_map[node_id]
        except KeyError:
            raise ValidationError(f"unknown node id {node_id}") from None

    def find_link(self, tail: int, head: int) -> Link | None:
        return self._by_ends.get((tail, head))

    def links_out(self, node_id: int) -> tuple[Link, ...]:
        self.node(node_id)
        return self._out[node_id]

    def links_in(self, node_id: int) -> tuple[Link, ...]:
        self.node(node_id)
        return self._in[node_id]

    def out_neighbors(self, node_id: int) -> tuple[int, ...]:
        return tuple(lk.head for lk in self.links_out(node_id))

    def sub_links(self, arc: Hyperarc) -> tuple[Link, ...]:
        """The links (tail, j) delivered by a hyperarc, sorted by index."""
        try:
            found = [self._by_ends[(arc.tail, j)] for j in arc.heads]
        except KeyError:
            raise ValidationError(
                f"hyperarc ({arc.tail}, {sorted(arc.heads)}) does not belong to this network"
            ) from None
        return tuple(sorted(found, key=lambda lk: lk.index))

    def sublink_indices(self, arc: Hyperarc) -> frozenset[int]:
        return frozenset(lk.index for lk in self.sub_links(arc))


def generate_hyperarcs(
    network: Network,
    coding_nodes: Iterable[int],
    max_coding_degree: int = DEFAULT_MAX_CODING_DEGREE,
) -> tuple[Hyperarc, ...]:
    """Enumerate the hyperarc set for a choice of coding nodes.

    Returns every weight-1 hyperarc plus, for each coding node i, one
    hyperarc (i, J) per subset J of i's out-neighbors with
    2 <= |J| <= max_coding_degree, in the canonical ordering.
    """
    if max_coding_degree < 2:
        raise ValidationError(f"max_coding_degree must be at least 2, got {max_coding_degree}")
    coded: list[tuple[int, frozenset[int]]] = []
    for nid in sorted(set(coding_nodes)):
        nbrs = sorted(network.out_neighbors(nid))
        top = min(max_coding_degree, len(nbrs))
        for size in range(2, top + 1):
            coded.extend((nid, frozenset(combo)) for combo in itertools.combinations(nbrs, size))
    return Network(network.nodes, coded).hyperarcs


def build_network(
    nodes: Iterable[Node],
    hyperarcs: Iterable[tuple[int, Iterable[int]]] | None = None,
    coding_nodes: Iterable[int] | None = None,
    max_coding_degree: int = DEFAULT_MAX_CODING_DEGREE,
) -> Network:
    """Assemble a network from nodes plus either explicit or generated hyperarcs.

    Explicit head sets win when both are given; otherwise the coding-node
    generator supplies them. With neither, the hyperarcs are exactly the
    links.
    """
    base = Network(nodes)
    if hyperarcs is not None:
        return Network(base.nodes, hyperarcs)
    if coding_nodes:
        generated = generate_hyperarcs(base, coding_nodes, max_coding_degree)
        return Network(base.nodes, [(h.tail, h.heads) for h in generated if h.weight > 1])
    return base
