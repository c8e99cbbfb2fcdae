"""Maximum multiflow over schedulable-set polytopes.

The throughput LP routes one fractional flow per commodity and buys time
shares of schedulable sets: flow variables per (commodity, link), one
share variable per catalog set, conservation at non-terminals, per-link
capacity rows coupling total flow to the bought shares, and a unit budget
on the shares. Link bandwidths divide the flow terms in the capacity
rows, so a link of bandwidth 2 carries twice the flow per unit of airtime.

The same catalog machinery answers membership queries (is a per-link
demand rate achievable within one time unit?) and computes optimal
fractional schedules, whose length is the minimum total airtime needed to
serve a demand vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .conflict import (
    DEFAULT_ENUMERATION_CAP,
    SchedulableSetCatalog,
    build_conflict_graph,
    enumerate_schedulable_sets,
)
from .errors import SolverError, UncoverableDemandError, ValidationError
from .lp import LinearProgram, solve_lp
from .model import Network
from .schedule import FractionalSchedule, link_capacity_function

__all__ = [
    "MODES",
    "Commodity",
    "MmfSolution",
    "Membership",
    "flow_value",
    "demand_vector",
    "validate_demand",
    "solve_mmf",
    "polytope_membership",
    "optimal_fractional_schedule",
    "link_capacity_function",
]

MODES = ("plain", "coding")
_WEIGHT_EPS = 1e-12


@dataclass(frozen=True)
class Commodity:
    """A source-sink pair to be routed."""

    source: int
    sink: int

    def __post_init__(self) -> None:
        if self.source == self.sink:
            raise ValidationError(f"commodity {self.source}->{self.sink}: source equals sink")


@dataclass(frozen=True, eq=False)
class MmfSolution:
    """Result of a throughput solve.

    ``flows[i]`` is commodity i's per-link rates; ``schedule_weights``
    maps catalog set positions (0-based) to their time shares, which form
    the schedule certificate together with ``catalog``.
    """

    mode: str
    throughput: float
    per_commodity: tuple[float, ...]
    flows: np.ndarray
    schedule_weights: dict[int, float]
    catalog: SchedulableSetCatalog
    exact_throughput: Fraction | None = None


@dataclass(frozen=True, eq=False)
class Membership:
    """Outcome of a polytope membership query."""

    inside: bool
    certificate: dict[int, float] | None = None


def flow_value(network: Network, flow, source: int) -> float:
    """Net rate leaving the source: outflow minus inflow."""
    f = validate_demand(network, flow)
    out = sum(f[lk.index - 1] for lk in network.links_out(source))
    into = sum(f[lk.index - 1] for lk in network.links_in(source))
    return float(out - into)


def validate_demand(network: Network, demand) -> np.ndarray:
    """Check a per-link vector: right length, finite, nonnegative."""
    d = np.asarray(demand, dtype=float)
    if d.shape != (network.link_count,):
        raise ValidationError(
            f"per-link vector has shape {d.shape}, expected ({network.link_count},)"
        )
    if not np.all(np.isfinite(d)):
        raise ValidationError("per-link vector has non-finite entries")
    if np.any(d < 0):
        raise ValidationError("per-link vector has negative entries")
    return d.copy()


def demand_vector(network: Network, amounts: Mapping[tuple[int, int], float]) -> np.ndarray:
    """Build a per-link vector from a mapping of (tail, head) to rate."""
    d = np.zeros(network.link_count)
    for (tail, head), value in amounts.items():
        lk = network.find_link(tail, head)
        if lk is None:
            raise ValidationError(f"({tail}, {head}) is not a link of this network")
        d[lk.index - 1] = float(value)
    return validate_demand(network, d)


def _validate_bandwidth(network: Network, bandwidth) -> np.ndarray:
    if bandwidth is None:
        return np.ones(network.link_count)
    b = np.asarray(bandwidth, dtype=float)
    if b.shape != (network.link_count,):
        raise ValidationError(
            f"bandwidth vector has shape {b.shape}, expected ({network.link_count},)"
        )
    if not np.all(np.isfinite(b)) or np.any(b <= 0):
        raise ValidationError("bandwidths must be finite and positive")
    return b


def solve_mmf(
    network: Network,
    commodities: Iterable[Commodity],
    mode: str = "plain",
    bandwidth=None,
    cap: int = DEFAULT_ENUMERATION_CAP,
    exact_check: bool = False,
) -> MmfSolution:
    """Maximize the total value over all commodities' simultaneous flows.

    ``mode`` picks the catalog: "plain" schedules single links only,
    "coding" schedules the network's hyperarcs so one broadcast may serve
    several links at once. Raises EnumerationCapError when the relevant
    conflict graph exceeds ``cap`` vertices.
    """
    if mode not in MODES:
        raise ValidationError(f"unknown mode {mode!r}")
    commodities = tuple(commodities)
    for com in commodities:
        network.node(com.source)
        network.node(com.sink)
    bw = _validate_bandwidth(network, bandwidth)
    level = "hyperarc" if mode == "coding" else "link"
    catalog = enumerate_schedulable_sets(build_conflict_graph(network, level), cap)

    n = network.link_count
    k = len(commodities)
    if k == 0 or n == 0:
        return MmfSolution(
            mode=mode,
            throughput=0.0,
            per_commodity=tuple(0.0 for _ in commodities),
            flows=np.zeros((k, n)),
            schedule_weights={},
            catalog=catalog,
            exact_throughput=Fraction(0) if exact_check else None,
        )

    nsets = len(catalog)
    nvars = k * n + nsets
    # variable layout: commodity i's flow on link a at i*n + (a-1), then shares
    c = np.zeros(nvars)
    for i, com in enumerate(commodities):
        for lk in network.links_out(com.source):
            c[i * n + lk.index - 1] += 1.0
        for lk in network.links_in(com.source):
            c[i * n + lk.index - 1] -= 1.0

    rows: list[tuple[np.ndarray, str, float]] = []
    for i, com in enumerate(commodities):
        for node in network.nodes:
            if node.id in (com.source, com.sink):
                continue
            row = np.zeros(nvars)
            for lk in network.links_in(node.id):
                row[i * n + lk.index - 1] += 1.0
            for lk in network.links_out(node.id):
                row[i * n + lk.index - 1] -= 1.0
            if np.any(row):
                rows.append((row, "=", 0.0))
    for a in range(n):
        row = np.zeros(nvars)
        for i in range(k):
            row[i * n + a] = 1.0 / bw[a]
        row[k * n :] = -catalog.incidence[:, a]
        rows.append((row, "<=", 0.0))
    budget = np.zeros(nvars)
    budget[k * n :] = 1.0
    rows.append((budget, "<=", 1.0))

    out = solve_lp(LinearProgram(c, rows), exact_check=exact_check)
    if out.status != "optimal":
        raise SolverError(f"throughput LP ended {out.status}")
    flows = out.x[: k * n].reshape(k, n)
    shares = out.x[k * n :]
    weights = {j: float(v) for j, v in enumerate(shares) if v > _WEIGHT_EPS}
    per = tuple(flow_value(network, flows[i], commodities[i].source) for i in range(k))
    return MmfSolution(
        mode=mode,
        throughput=float(out.value),
        per_commodity=per,
        flows=flows,
        schedule_weights=weights,
        catalog=catalog,
        exact_throughput=out.exact_value,
    )


def polytope_membership(demand, catalog: SchedulableSetCatalog) -> Membership:
    """Can the catalog's sets cover the demand within one time unit?

    Feasibility of: shares >= 0, sum of shares <= 1, coverage of every
    link's demand. Returns the covering shares as a certificate when
    inside.
    """
    d = np.asarray(demand, dtype=float)
    if d.shape != (catalog.link_count,):
        raise ValidationError(
            f"demand has shape {d.shape}, expected ({catalog.link_count},)"
        )
    if not np.all(np.isfinite(d)) or np.any(d < 0):
        raise ValidationError("demand must be finite and nonnegative")
    nsets = len(catalog)
    if nsets == 0:
        return Membership(inside=bool(np.all(d <= 0)), certificate={} if np.all(d <= 0) else None)
    rows: list[tuple[np.ndarray, str, float]] = []
    for a in range(catalog.link_count):
        rows.append((catalog.incidence[:, a], ">=", float(d[a])))
    rows.append((np.ones(nsets), "<=", 1.0))
    out = solve_lp(LinearProgram(np.zeros(nsets), rows))
    if out.status == "infeasible":
        return Membership(inside=False)
    if out.status != "optimal":
        raise SolverError(f"membership LP ended {out.status}")
    cert = {j: float(v) for j, v in enumerate(out.x) if v > _WEIGHT_EPS}
    return Membership(inside=True, certificate=cert)


def optimal_fractional_schedule(
    demand, catalog: SchedulableSetCatalog
) -> tuple[FractionalSchedule, float]:
    """Shortest fractional schedule covering a per-link demand.

    Minimizes the total time share subject to covering every link's
    demand. Returns the schedule and its exact LP length; lengths above
    one mean the demand is outside the unit-time region.
    """
    d = np.asarray(demand, dtype=float)
    if d.shape != (catalog.link_count,):
        raise ValidationError(
            f"demand has shape {d.shape}, expected ({catalog.link_count},)"
        )
    if not np.all(np.isfinite(d)) or np.any(d < 0):
        raise ValidationError("demand must be finite and nonnegative")
    covered = frozenset().union(*catalog.sublink_sets) if len(catalog) else frozenset()
    missing = [a + 1 for a in range(catalog.link_count) if d[a] > 0 and (a + 1) not in covered]
    if missing:
        raise UncoverableDemandError(
            f"links {missing} have positive demand but appear in no schedulable set"
        )
    nsets = len(catalog)
    if nsets == 0:
        return FractionalSchedule(()), 0.0
    rows: list[tuple[np.ndarray, str, float]] = []
    for a in range(catalog.link_count):
        rows.append((catalog.incidence[:, a], ">=", float(d[a])))
    out = solve_lp(LinearProgram(-np.ones(nsets), rows))
    if out.status != "optimal":
        raise SolverError(f"schedule LP ended {out.status}")
    entries = tuple(
        (catalog.hyperarc_sets[j], float(v))
        for j, v in enumerate(out.x)
        if v > _WEIGHT_EPS
    )
    return FractionalSchedule(entries), float(-out.value)
