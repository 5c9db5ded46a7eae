"""Temporal networks as time-ordered sequences of dyadic events.

An event is a directed interaction (source, target, time). A temporal
network is an immutable, time-sorted tuple of events plus the node set they
induce. Equal-time events are either rejected or kept in a stable, reading
order, depending on the network's tie policy.
"""

from __future__ import annotations

import io
import warnings
from dataclasses import dataclass
from math import isfinite
from typing import Iterable, Sequence, TextIO

TIE_REJECT = "reject"
TIE_STABLE = "stable_order"
_TIE_POLICIES = (TIE_REJECT, TIE_STABLE)


class ParseError(ValueError):
    """Malformed event input; carries the 1-based line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True, slots=True)
class Event:
    """One directed contact: ``source`` acts on ``target`` at ``time``."""

    source: int
    target: int
    time: float

    def __post_init__(self):
        if not isinstance(self.source, int) or not isinstance(self.target, int):
            raise ValueError(f"node ids must be integers, got ({self.source!r}, {self.target!r})")
        if self.source < 0 or self.target < 0:
            raise ValueError(f"node ids must be non-negative, got ({self.source}, {self.target})")
        if self.source == self.target:
            raise ValueError(f"self-loop at node {self.source} (time {self.time})")
        if not (isfinite(self.time) and self.time >= 0):
            raise ValueError(f"event time must be non-negative and finite, got {self.time}")

    @property
    def nodes(self) -> tuple[int, int]:
        return (self.source, self.target)


class TemporalNetwork:
    """Immutable time-sorted event sequence.

    Parameters
    ----------
    events : iterable of Event
        Any order; sorted stably by time on construction.
    tie_policy : str
        ``"reject"`` raises on equal timestamps, ``"stable_order"`` (default)
        keeps equal-time events in their given relative order and emits a
        warning with the tie count.
    """

    __slots__ = ("_events", "_nodes", "_tie_policy", "_tie_count")

    def __init__(self, events: Iterable[Event], tie_policy: str = TIE_STABLE):
        if tie_policy not in _TIE_POLICIES:
            raise ValueError(f"unknown tie_policy {tie_policy!r}, expected one of {_TIE_POLICIES}")
        ordered = sorted(events, key=lambda e: e.time)
        ties = sum(1 for a, b in zip(ordered, ordered[1:]) if a.time == b.time)
        if ties:
            if tie_policy == TIE_REJECT:
                raise ValueError(f"{ties} equal-timestamp adjacencies under tie_policy='reject'")
            warnings.warn(f"{ties} equal-timestamp adjacencies resolved by stable order")
        nodes = set()
        for e in ordered:
            nodes.add(e.source)
            nodes.add(e.target)
        self._events = tuple(ordered)
        self._nodes = frozenset(nodes)
        self._tie_policy = tie_policy
        self._tie_count = ties

    @property
    def events(self) -> tuple[Event, ...]:
        return self._events

    @property
    def nodes(self) -> frozenset[int]:
        return self._nodes

    @property
    def tie_policy(self) -> str:
        return self._tie_policy

    @property
    def tie_count(self) -> int:
        return self._tie_count

    def __len__(self) -> int:
        return len(self._events)

    def __iter__(self):
        return iter(self._events)

    def __getitem__(self, index: int) -> Event:
        return self._events[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TemporalNetwork):
            return NotImplemented
        return self._events == other._events

    def __hash__(self):
        return hash(self._events)

    def __repr__(self) -> str:
        return f"TemporalNetwork({len(self._events)} events, {len(self._nodes)} nodes)"

    @property
    def duration(self) -> float:
        """Time span from first to last event (0 for <2 events)."""
        if len(self._events) < 2:
            return 0.0
        return self._events[-1].time - self._events[0].time


def canonicalize(net: TemporalNetwork) -> TemporalNetwork:
    """Return the canonical form of ``net``.

    Times are shifted so the earliest event is at 0 and nodes are relabelled
    0, 1, 2, ... in order of first appearance (scanning events in order,
    source before target). Idempotent; the result compares equal for any two
    networks that differ only by a time translation and a node relabelling.
    """
    if len(net) == 0:
        raise ValueError("cannot canonicalize an empty network")
    t0 = net[0].time
    labels: dict[int, int] = {}
    out = []
    for e in net:
        for node in (e.source, e.target):
            if node not in labels:
                labels[node] = len(labels)
        out.append(Event(labels[e.source], labels[e.target], e.time - t0))
    return TemporalNetwork(out, tie_policy=net.tie_policy)


def _format_time(t: float) -> str:
    if t == int(t) and abs(t) < 2**53:
        return str(int(t))
    return repr(t)


def write_events(net: TemporalNetwork, stream: TextIO) -> None:
    """Write one ``source target time`` line per event (lossless)."""
    for e in net:
        stream.write(f"{e.source} {e.target} {_format_time(e.time)}\n")


def events_to_text(net: TemporalNetwork) -> str:
    buf = io.StringIO()
    write_events(net, buf)
    return buf.getvalue()


def parse_events(
    stream: Iterable[str],
    delimiter: str | None = None,
    fields: Sequence[str] = ("source", "target", "time"),
    tie_policy: str = TIE_STABLE,
    on_self_loop: str = "error",
) -> TemporalNetwork:
    """Parse whitespace- or delimiter-separated event lines.

    Blank lines and lines starting with ``#`` are skipped. ``fields`` gives
    the column order and must be a permutation of (source, target, time);
    extra columns are ignored. Duplicate (source, target, time) triples are
    kept with a warning. ``on_self_loop`` is ``"error"`` or ``"skip"``.

    Raises
    ------
    ParseError
        On a malformed line, with its line number.
    """
    if sorted(fields) != ["source", "target", "time"]:
        raise ValueError(f"fields must be a permutation of source/target/time, got {fields}")
    if on_self_loop not in ("error", "skip"):
        raise ValueError(f"on_self_loop must be 'error' or 'skip', got {on_self_loop!r}")
    col = {name: i for i, name in enumerate(fields)}
    events = []
    seen: set[tuple[int, int, float]] = set()
    duplicates = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(delimiter)
        if len(parts) < 3:
            raise ParseError(lineno, f"expected at least 3 columns, got {len(parts)}")
        try:
            source = int(parts[col["source"]])
            target = int(parts[col["target"]])
        except ValueError as exc:
            raise ParseError(lineno, f"bad node id: {exc}") from None
        try:
            time = float(parts[col["time"]])
        except ValueError as exc:
            raise ParseError(lineno, f"bad time: {exc}") from None
        if source == target:
            if on_self_loop == "skip":
                continue
            raise ParseError(lineno, f"self-loop at node {source}")
        try:
            event = Event(source, target, time)
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
        key = (source, target, time)
        if key in seen:
            duplicates += 1
        seen.add(key)
        events.append(event)
    if duplicates:
        warnings.warn(f"{duplicates} duplicate event triples kept")
    return TemporalNetwork(events, tie_policy=tie_policy)


def load_events(path: str, **kwargs) -> TemporalNetwork:
    """``parse_events`` over a file path."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_events(fh, **kwargs)


def save_events(net: TemporalNetwork, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        write_events(net, fh)
