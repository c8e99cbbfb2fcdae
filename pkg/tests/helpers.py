"""Shared fixtures, random generators, and brute-force oracles for the tests.

The oracles here are deliberately independent of the package internals:
maximal independent sets come from filtering every vertex subset, and
linear programs are solved by enumerating basis vertices with exact
rational arithmetic.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from multiflow import (
    Commodity,
    ConflictGraph,
    Network,
    Node,
    build_conflict_graph,
    build_network,
    closed_neighborhoods,
)

# ---------------------------------------------------------------------------
# canonical two-way relay fixtures

BOUNDS_EPS = 1e-9
VALUE_EPS = 1e-6


def relay_nodes() -> list[Node]:
    """Two endpoints at distance 2 and a relay in the middle, unit radii."""
    return [
        Node(1, 0.0, 0.0, 1.0, 1.0),
        Node(2, 2.0, 0.0, 1.0, 1.0),
        Node(3, 1.0, 0.0, 1.0, 1.0),
    ]


def relay_plain() -> Network:
    return build_network(relay_nodes())


def relay_coded() -> Network:
    return build_network(relay_nodes(), hyperarcs=[(3, (1, 2))])


def relay_commodities() -> tuple[Commodity, Commodity]:
    return (Commodity(1, 2), Commodity(2, 1))


# ---------------------------------------------------------------------------
# synthetic conflict graphs


def make_conflict_graph(
    n: int,
    edges,
    weights=None,
    sublinks=None,
    link_count=None,
) -> ConflictGraph:
    """Build a conflict graph directly, without any geometry behind it."""
    norm = frozenset((min(u, v), max(u, v)) for u, v in edges)
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in norm:
        adj[u - 1].add(v)
        adj[v - 1].add(u)
    if sublinks is None:
        sublinks = tuple(frozenset({v}) for v in range(1, n + 1))
        if link_count is None:
            link_count = n
    else:
        sublinks = tuple(frozenset(s) for s in sublinks)
        if link_count is None:
            link_count = max((max(s) for s in sublinks if s), default=0)
    if weights is None:
        weights = tuple(len(s) for s in sublinks)
    return ConflictGraph(
        level="hyperarc",
        items=tuple(range(1, n + 1)),
        weights=tuple(weights),
        sublinks=sublinks,
        link_count=link_count,
        edges=norm,
        adjacency=tuple(frozenset(a) for a in adj),
    )


def brute_force_max_independent_sets(cg: ConflictGraph) -> set[frozenset[int]]:
    """All maximal independent sets, by filtering every subset of vertices."""
    verts = list(range(1, cg.vertex_count + 1))
    found = set()
    for mask in range(1 << len(verts)):
        subset = [verts[i] for i in range(len(verts)) if mask >> i & 1]
        if any(v in cg.adjacency[u - 1] for u, v in itertools.combinations(subset, 2)):
            continue
        chosen = set(subset)
        extendable = any(
            v not in chosen and not (cg.adjacency[v - 1] & chosen) for v in verts
        )
        if not extendable:
            found.add(frozenset(chosen))
    return found


# ---------------------------------------------------------------------------
# exact brute-force linear programming oracle


def _exact_gauss(matrix, rhs):
    """Solve a square rational system; None when the matrix is singular."""
    k = len(matrix)
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(k):
        piv = next((r for r in range(col, k) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col]
        aug[col] = [v / inv for v in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [aug[r][k] for r in range(k)]


def _satisfies(x, rows) -> bool:
    for coeffs, rel, b in rows:
        lhs = sum(a * v for a, v in zip(coeffs, x))
        if rel == "<=" and lhs > b:
            return False
        if rel == ">=" and lhs < b:
            return False
        if rel == "=" and lhs != b:
            return False
    return True


def brute_force_lp(objective, rows):
    """Maximize c.x over the rows plus x >= 0 by exact vertex enumeration.

    Data must be integers (or exact fractions). Returns (status, value)
    with a Fraction value for optimal outcomes. The feasible region lies
    in the nonnegative orthant, so it is pointed: when nonempty it has a
    vertex, and enumeration over all n-subsets of constraint and axis
    planes visits every vertex. Unboundedness is a feasible recession
    direction with positive objective, found the same way on the
    normalized recession polytope.
    """
    n = len(objective)
    c = [Fraction(v) for v in objective]
    frows = [([Fraction(v) for v in coeffs], rel, Fraction(b)) for coeffs, rel, b in rows]
    axis = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    planes = [(coeffs, b) for coeffs, _, b in frows] + [(a, Fraction(0)) for a in axis]

    best = None
    for combo in itertools.combinations(planes, n):
        x = _exact_gauss([p[0] for p in combo], [p[1] for p in combo])
        if x is None or any(v < 0 for v in x) or not _satisfies(x, frows):
            continue
        value = sum(cv * xv for cv, xv in zip(c, x))
        if best is None or value > best:
            best = value
    if best is None:
        return "infeasible", None

    recession = [(coeffs, rel, Fraction(0)) for coeffs, rel, _ in frows]
    rec_planes = [(coeffs, Fraction(0)) for coeffs, _, _ in recession] + [
        (a, Fraction(0)) for a in axis
    ]
    ones = [Fraction(1)] * n
    for combo in itertools.combinations(rec_planes, n - 1):
        mat = [p[0] for p in combo] + [ones]
        rhs = [p[1] for p in combo] + [Fraction(1)]
        d = _exact_gauss(mat, rhs)
        if d is None or any(v < 0 for v in d) or not _satisfies(d, recession):
            continue
        if sum(cv * dv for cv, dv in zip(c, d)) > 0:
            return "unbounded", None
    return "optimal", best


def random_lp(rng):
    """Small random integer LP for comparison against the oracle."""
    n = int(rng.integers(1, 5))
    m = int(rng.integers(1, 6))
    objective = [int(rng.integers(-5, 6)) for _ in range(n)]
    rows = []
    for _ in range(m):
        coeffs = [int(rng.integers(-4, 5)) for _ in range(n)]
        rel = ("<=", "<=", "<=", ">=", "=")[int(rng.integers(0, 5))]
        rows.append((coeffs, rel, int(rng.integers(-5, 9))))
    return objective, rows


# ---------------------------------------------------------------------------
# random instances


def random_graph(rng, min_n: int = 1, max_n: int = 10) -> ConflictGraph:
    n = int(rng.integers(min_n, max_n + 1))
    p = float(rng.uniform(0.1, 0.9))
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(1, n + 1), 2)
        if rng.random() < p
    ]
    return make_conflict_graph(n, edges)


def random_network(
    rng,
    min_nodes: int = 3,
    max_nodes: int = 8,
    allow_coding: bool = True,
    require_conflict: bool = False,
) -> Network:
    """Random geometric network with a handful of links.

    Draws nodes in a 3 by 3 box with varied radii, keeps instances with 1
    to 16 links, and optionally attaches one random broadcast hyperarc to
    up to two nodes of out-degree at least two. ``require_conflict``
    rejects networks whose link conflict graph has no edge at all.
    """
    for _ in range(400):
        count = int(rng.integers(min_nodes, max_nodes + 1))
        nodes = []
        for i in range(count):
            r = float(rng.uniform(0.7, 1.6))
            nodes.append(
                Node(
                    i + 1,
                    float(rng.uniform(0.0, 3.0)),
                    float(rng.uniform(0.0, 3.0)),
                    r,
                    r * float(rng.uniform(1.0, 1.4)),
                )
            )
        net = build_network(nodes)
        if not 1 <= net.link_count <= 16:
            continue
        if allow_coding and rng.random() < 0.75:
            eligible = sorted(
                nd.id for nd in net.nodes if len(net.out_neighbors(nd.id)) >= 2
            )
            coded = []
            for tail in eligible[: int(rng.integers(0, 3))]:
                outs = sorted(net.out_neighbors(tail))
                size = int(rng.integers(2, min(3, len(outs)) + 1))
                picked = rng.choice(len(outs), size=size, replace=False)
                coded.append((tail, tuple(outs[i] for i in picked)))
            if coded:
                net = build_network(nodes, hyperarcs=coded)
        if net.hyperarc_count > 24:
            continue
        if require_conflict:
            g = build_conflict_graph(net, "link")
            if closed_neighborhoods(g).max_conflict_degree < 1:
                continue
        return net
    raise AssertionError("random network generation kept rejecting instances")


def random_commodities(rng, net: Network, max_count: int = 3):
    ids = [nd.id for nd in net.nodes]
    coms = []
    for _ in range(int(rng.integers(1, max_count + 1))):
        s, t = rng.choice(len(ids), size=2, replace=False)
        coms.append(Commodity(ids[int(s)], ids[int(t)]))
    return tuple(coms)


def random_demand(rng, net: Network, low: float = 0.0, high: float = 1.0) -> np.ndarray:
    return rng.uniform(low, high, net.link_count)


# ---------------------------------------------------------------------------
# solution checkers


def schedule_capacity(sol, bandwidth=None) -> np.ndarray:
    """Per-link capacity granted by a solution's schedule weights."""
    n = sol.catalog.link_count
    bw = np.ones(n) if bandwidth is None else np.asarray(bandwidth, dtype=float)
    cap = np.zeros(n)
    for j, w in sol.schedule_weights.items():
        cap += w * sol.catalog.incidence[j]
    return cap * bw


def assert_valid_solution(net: Network, commodities, sol, bandwidth=None) -> None:
    """Independent feasibility audit of a throughput solution."""
    assert sum(sol.schedule_weights.values()) <= 1.0 + BOUNDS_EPS
    assert np.all(sol.flows >= -BOUNDS_EPS)
    total = sol.flows.sum(axis=0)
    cap = schedule_capacity(sol, bandwidth)
    assert np.all(total <= cap + 1e-6), (total, cap)
    for i, com in enumerate(commodities):
        for node in net.nodes:
            if node.id in (com.source, com.sink):
                continue
            inflow = sum(sol.flows[i, lk.index - 1] for lk in net.links_in(node.id))
            outflow = sum(sol.flows[i, lk.index - 1] for lk in net.links_out(node.id))
            assert abs(inflow - outflow) <= 1e-6
    assert abs(sum(sol.per_commodity) - sol.throughput) <= 1e-6
