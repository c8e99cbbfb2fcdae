"""Strict JSON handling for instance and demand files, plus demo instances.

Instance files describe nodes, optional coding structure, commodities and
bandwidths. Parsing is strict: unknown fields, wrong types, duplicate or
dangling ids all raise ValidationError with a field path.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .errors import ValidationError
from .model import DEFAULT_MAX_CODING_DEGREE, Network, Node, build_network
from .mmf import Commodity, validate_demand

__all__ = [
    "Instance",
    "parse_instance",
    "load_instance",
    "parse_demand",
    "load_demand",
    "demo_instances",
]

_TOP_FIELDS = {
    "nodes",
    "hyperarcs",
    "coding_nodes",
    "max_coding_degree",
    "commodities",
    "bandwidth",
}
_NODE_FIELDS = {"id", "x", "y", "r", "rho"}
_HYPERARC_FIELDS = {"tail", "heads"}
_COMMODITY_FIELDS = {"source", "sink"}
_LINK_KEY = re.compile(r"^(-?\d+)-(-?\d+)$")


@dataclass(frozen=True, eq=False)
class Instance:
    """A parsed instance: the network plus commodities and bandwidths."""

    network: Network
    commodities: tuple[Commodity, ...]
    bandwidth: np.ndarray | None


def _require_int(value: Any, where: str) -> int:
    if type(value) is not int:
        raise ValidationError(f"{where}: expected an integer, got {value!r}")
    return value


def _require_number(value: Any, where: str) -> float:
    if type(value) not in (int, float):
        raise ValidationError(f"{where}: expected a number, got {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise ValidationError(f"{where}: non-finite number")
    return out


def _require_object(value: Any, allowed: set[str], required: set[str], where: str) -> dict:
    if not isinstance(value, dict):
        raise ValidationError(f"{where}: expected an object")
    unknown = sorted(set(value) - allowed)
    if unknown:
        raise ValidationError(f"{where}: unknown field {unknown[0]!r}")
    for field in sorted(required):
        if field not in value:
            raise ValidationError(f"{where}: missing field {field!r}")
    return value


def _require_list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise ValidationError(f"{where}: expected an array")
    return value


def _parse_link_key(key: str, network: Network, where: str) -> int:
    match = _LINK_KEY.match(key) if isinstance(key, str) else None
    if match is None:
        raise ValidationError(f"{where}: key {key!r} is not of the form \"tail-head\"")
    tail, head = int(match.group(1)), int(match.group(2))
    lk = network.find_link(tail, head)
    if lk is None:
        raise ValidationError(f"{where}: ({tail}, {head}) is not a link of this network")
    return lk.index


def parse_instance(data: Any) -> Instance:
    """Build an Instance from already-decoded JSON data."""
    top = _require_object(data, _TOP_FIELDS, {"nodes"}, "instance")

    nodes = []
    for k, entry in enumerate(_require_list(top["nodes"], "nodes")):
        where = f"nodes[{k}]"
        obj = _require_object(entry, _NODE_FIELDS, _NODE_FIELDS, where)
        nodes.append(
            Node(
                id=_require_int(obj["id"], f"{where}.id"),
                x=_require_number(obj["x"], f"{where}.x"),
                y=_require_number(obj["y"], f"{where}.y"),
                comm_radius=_require_number(obj["r"], f"{where}.r"),
                interf_radius=_require_number(obj["rho"], f"{where}.rho"),
            )
        )

    hyperarcs = None
    if "hyperarcs" in top:
        hyperarcs = []
        for k, entry in enumerate(_require_list(top["hyperarcs"], "hyperarcs")):
            where = f"hyperarcs[{k}]"
            obj = _require_object(entry, _HYPERARC_FIELDS, _HYPERARC_FIELDS, where)
            tail = _require_int(obj["tail"], f"{where}.tail")
            heads = [
                _require_int(h, f"{where}.heads[{i}]")
                for i, h in enumerate(_require_list(obj["heads"], f"{where}.heads"))
            ]
            if len(set(heads)) != len(heads):
                raise ValidationError(f"{where}.heads: repeated head id")
            hyperarcs.append((tail, heads))

    coding_nodes = None
    if "coding_nodes" in top:
        coding_nodes = [
            _require_int(v, f"coding_nodes[{i}]")
            for i, v in enumerate(_require_list(top["coding_nodes"], "coding_nodes"))
        ]

    degree = DEFAULT_MAX_CODING_DEGREE
    if "max_coding_degree" in top:
        degree = _require_int(top["max_coding_degree"], "max_coding_degree")
        if degree < 2:
            raise ValidationError("max_coding_degree: must be at least 2")

    network = build_network(
        nodes, hyperarcs=hyperarcs, coding_nodes=coding_nodes, max_coding_degree=degree
    )

    commodities = []
    if "commodities" in top:
        for k, entry in enumerate(_require_list(top["commodities"], "commodities")):
            where = f"commodities[{k}]"
            obj = _require_object(entry, _COMMODITY_FIELDS, _COMMODITY_FIELDS, where)
            com = Commodity(
                source=_require_int(obj["source"], f"{where}.source"),
                sink=_require_int(obj["sink"], f"{where}.sink"),
            )
            network.node(com.source)
            network.node(com.sink)
            commodities.append(com)

    bandwidth = None
    if "bandwidth" in top:
        entries = top["bandwidth"]
        if not isinstance(entries, dict):
            raise ValidationError("bandwidth: expected an object")
        bandwidth = np.ones(network.link_count)
        for key in sorted(entries):
            index = _parse_link_key(key, network, "bandwidth")
            value = _require_number(entries[key], f"bandwidth[{key!r}]")
            if value <= 0:
                raise ValidationError(f"bandwidth[{key!r}]: must be positive")
            bandwidth[index - 1] = value

    return Instance(network=network, commodities=tuple(commodities), bandwidth=bandwidth)


def load_instance(path: str | Path) -> Instance:
    """Parse an instance file, mapping JSON errors to ValidationError."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return parse_instance(data)


def parse_demand(data: Any, network: Network) -> np.ndarray:
    """Per-link demand from a mapping of "tail-head" keys to rates."""
    if not isinstance(data, dict):
        raise ValidationError("demand: expected an object mapping \"tail-head\" to rates")
    d = np.zeros(network.link_count)
    for key in sorted(data):
        index = _parse_link_key(key, network, "demand")
        value = _require_number(data[key], f"demand[{key!r}]")
        if value < 0:
            raise ValidationError(f"demand[{key!r}]: must be nonnegative")
        d[index - 1] = value
    return validate_demand(network, d)


def load_demand(path: str | Path, network: Network) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return parse_demand(data, network)


def demo_instances() -> dict[str, dict]:
    """The bundled two-way relay instances, as instance-file data.

    Three collinear unit-radius nodes where 1 and 2 exchange packets
    through relay 3. The plain variant schedules single links; the coded
    variant adds the relay's broadcast, which serves both return links in
    one transmission and lifts the throughput from 1/2 to 2/3.
    """
    nodes = [
        {"id": 1, "x": 0.0, "y": 0.0, "r": 1.0, "rho": 1.0},
        {"id": 2, "x": 2.0, "y": 0.0, "r": 1.0, "rho": 1.0},
        {"id": 3, "x": 1.0, "y": 0.0, "r": 1.0, "rho": 1.0},
    ]
    commodities = [{"source": 1, "sink": 2}, {"source": 2, "sink": 1}]
    plain = {"nodes": nodes, "commodities": commodities}
    coded = {
        "nodes": nodes,
        "hyperarcs": [{"tail": 3, "heads": [1, 2]}],
        "commodities": commodities,
    }
    return {"two_way_relay_plain": plain, "two_way_relay_coded": coded}
