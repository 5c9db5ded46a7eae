"""Static event-graph representation of a temporal network.

Each event becomes a vertex. A directed edge i -> j is drawn when j is the
*next* event within the waiting window that shares a node with i, taken
separately over each of i's two nodes; when both nodes lead to the same
event the two candidates collapse into a single edge. Every edge carries
the inter-event time (edge weight) and the motif class of its event pair.

The construction gives every vertex at most two in- and two out-edges and,
because edges always point from an earlier to a later event, the graph is
a DAG (under equal timestamps, order is the network's stable resolution
and edges still point forward because a zero gap never creates an edge).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import inf, isnan
from typing import Iterable, TextIO

from .events import Event, TemporalNetwork
from .motifs import Motif, classify_pair


@dataclass(frozen=True, slots=True)
class TegEdge:
    """Directed edge between event indices, weighted by inter-event time."""

    from_vertex: int
    to_vertex: int
    iet: float
    motif: Motif


class Teg:
    """Event graph of ``network`` at waiting window ``delta_t``.

    Vertices are event indices 0..M-1 in the network's order. ``edges`` is
    sorted by (from_vertex, to_vertex); per-vertex adjacency is exposed via
    ``out_edges`` / ``in_edges``.
    """

    __slots__ = ("network", "delta_t", "edges", "out_edges", "in_edges")

    def __init__(self, network: TemporalNetwork, delta_t: float, edges: Iterable[TegEdge]):
        if isnan(delta_t) or delta_t <= 0:
            raise ValueError(f"delta_t must be positive (math.inf allowed), got {delta_t}")
        self.network = network
        self.delta_t = delta_t
        self.edges = tuple(sorted(edges, key=lambda e: (e.from_vertex, e.to_vertex)))
        out: list[list[TegEdge]] = [[] for _ in range(len(network))]
        incoming: list[list[TegEdge]] = [[] for _ in range(len(network))]
        for e in self.edges:
            out[e.from_vertex].append(e)
            incoming[e.to_vertex].append(e)
        self.out_edges = tuple(tuple(lst) for lst in out)
        self.in_edges = tuple(tuple(lst) for lst in incoming)

    @property
    def vertex_count(self) -> int:
        return len(self.network)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def out_degree(self, v: int) -> int:
        return len(self.out_edges[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_edges[v])

    def __repr__(self) -> str:
        dt = "inf" if self.delta_t == inf else repr(self.delta_t)
        return f"Teg({self.vertex_count} vertices, {self.edge_count} edges, delta_t={dt})"


def is_dt_adjacent(first: Event, second: Event, delta_t: float) -> bool:
    """True when the events share a node and 0 < gap < delta_t."""
    if first.source not in second.nodes and first.target not in second.nodes:
        return False
    gap = second.time - first.time
    return 0 < gap < delta_t


def build_teg(net: TemporalNetwork, delta_t: float) -> Teg:
    """Build the event graph of ``net`` in a single O(M) scan.

    For every node the scan keeps the latest event seen; when a later event
    j arrives on node w held by event i, the gap is tested against the
    window and an edge i -> j is added. "Next event of a node" follows the
    network's event order, so under stable-order ties it means the next
    event in that resolved order (a zero gap never yields an edge, and with
    distinct timestamps this is exactly the next event in time).
    """
    events = net.events
    last: dict[int, int] = {}
    edges: list[TegEdge] = []
    for j, ev in enumerate(events):
        sources: list[int] = []
        for w in ev.nodes:
            i = last.get(w)
            if i is not None and i not in sources:
                gap = ev.time - events[i].time
                if 0 < gap < delta_t:
                    sources.append(i)
                    prev = events[i]
                    motif = classify_pair(prev.source, prev.target, ev.source, ev.target)
                    edges.append(TegEdge(i, j, gap, motif))
            last[w] = j
    return Teg(net, delta_t, edges)


def _dt_to_json(delta_t: float):
    return "inf" if delta_t == inf else delta_t


def _dt_from_json(value) -> float:
    if value == "inf":
        return inf
    return float(value)


def write_teg_json(teg: Teg, stream: TextIO) -> None:
    """Dump the edge list with its header; inter-event times are lossless."""
    records = [[e.from_vertex, e.to_vertex, e.iet, e.motif.value] for e in teg.edges]
    doc = {
        "delta_t": _dt_to_json(teg.delta_t),
        "event_count": teg.vertex_count,
        "edges": records,
    }
    json.dump(doc, stream, indent=1)
    stream.write("\n")


@dataclass(frozen=True)
class TegDump:
    """Parsed form of a serialized event-graph edge list."""

    delta_t: float
    event_count: int
    edges: tuple[TegEdge, ...]


def read_teg_json(stream: TextIO) -> TegDump:
    doc = json.load(stream)
    try:
        delta_t = _dt_from_json(doc["delta_t"])
        count = int(doc["event_count"])
        edges = tuple(
            TegEdge(int(i), int(j), float(iet), Motif(motif)) for i, j, iet, motif in doc["edges"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed event-graph JSON: {exc}") from None
    for e in edges:
        if not (0 <= e.from_vertex < count and 0 <= e.to_vertex < count):
            raise ValueError(f"edge ({e.from_vertex}, {e.to_vertex}) out of range for {count} events")
    return TegDump(delta_t, count, edges)
