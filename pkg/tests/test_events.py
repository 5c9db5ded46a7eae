"""Event and temporal-network basics: validation, ordering, text format."""

import io
import math

import pytest

from tegraph import Event, ParseError, TemporalNetwork, canonicalize, parse_events
from tegraph.events import events_to_text, load_events, save_events, write_events


@pytest.mark.parametrize(
    "source,target,time",
    [
        (1, 1, 0.0),  # self-loop
        (-1, 2, 0.0),
        (1, -2, 0.0),
        (1.5, 2, 0.0),  # non-integer id
        (1, 2, -0.5),
        (1, 2, math.inf),
        (1, 2, math.nan),
    ],
)
def test_event_rejects_bad_fields(source, target, time):
    with pytest.raises(ValueError):
        Event(source, target, time)


def test_event_nodes():
    e = Event(3, 7, 1.5)
    assert e.nodes == (3, 7)


def test_network_sorts_by_time():
    net = TemporalNetwork([Event(0, 1, 5.0), Event(1, 2, 1.0), Event(2, 0, 3.0)])
    assert [e.time for e in net] == [1.0, 3.0, 5.0]
    assert net.nodes == frozenset({0, 1, 2})
    assert len(net) == 3
    assert net[0] == Event(1, 2, 1.0)


def test_equal_times_stable_order_warns():
    events = [Event(0, 1, 2.0), Event(1, 2, 2.0), Event(2, 3, 1.0)]
    with pytest.warns(UserWarning, match="equal-timestamp"):
        net = TemporalNetwork(events)
    # ties keep their given relative order after the stable sort
    assert net.events[1:] == (Event(0, 1, 2.0), Event(1, 2, 2.0))
    assert net.tie_count == 1


def test_equal_times_reject_policy():
    events = [Event(0, 1, 2.0), Event(1, 2, 2.0)]
    with pytest.raises(ValueError, match="equal-timestamp"):
        TemporalNetwork(events, tie_policy="reject")
    with pytest.raises(ValueError):
        TemporalNetwork(events, tie_policy="nonsense")


def test_network_equality_and_hash():
    a = TemporalNetwork([Event(0, 1, 1.0), Event(1, 2, 2.0)])
    b = TemporalNetwork([Event(1, 2, 2.0), Event(0, 1, 1.0)])
    assert a == b
    assert hash(a) == hash(b)
    assert a != TemporalNetwork([Event(0, 1, 1.0)])


def test_duration():
    assert TemporalNetwork(()).duration == 0.0
    assert TemporalNetwork([Event(0, 1, 4.0)]).duration == 0.0
    net = TemporalNetwork([Event(0, 1, 1.5), Event(1, 2, 7.0)])
    assert net.duration == 5.5


def test_canonicalize_shifts_and_relabels():
    net = TemporalNetwork([Event(9, 4, 10.0), Event(4, 2, 11.5)])
    canon = canonicalize(net)
    assert canon.events == (Event(0, 1, 0.0), Event(1, 2, 1.5))
    # idempotent, and invariant under relabelling plus translation
    assert canonicalize(canon) == canon
    shifted = TemporalNetwork([Event(70, 80, 3.0), Event(80, 90, 4.5)])
    assert canonicalize(shifted) == canon


def test_canonicalize_empty_rejected():
    with pytest.raises(ValueError):
        canonicalize(TemporalNetwork(()))


def test_text_round_trip_is_lossless():
    net = TemporalNetwork([Event(0, 1, 3.0), Event(5, 2, 3.0000000000000004)])
    text = events_to_text(net)
    # integral times print bare, others with full precision
    assert text == "0 1 3\n5 2 3.0000000000000004\n"
    assert parse_events(io.StringIO(text)) == net


def test_parse_custom_delimiter_and_field_order():
    text = "# time,target,source\n10,2,1\n11,3,1\n"
    net = parse_events(
        io.StringIO(text), delimiter=",", fields=("time", "target", "source")
    )
    assert net.events == (Event(1, 2, 10.0), Event(1, 3, 11.0))


def test_parse_ignores_extra_columns_and_blanks():
    text = "\n1 2 5 extra junk\n\n# comment\n2 3 6\n"
    net = parse_events(io.StringIO(text))
    assert len(net) == 2


@pytest.mark.parametrize(
    "line,match",
    [
        ("1 2", "3 columns"),
        ("x 2 5", "bad node id"),
        ("1 2 y", "bad time"),
        ("1 1 5", "self-loop"),
        ("1 2 -4", "non-negative"),
    ],
)
def test_parse_error_carries_line_number(line, match):
    with pytest.raises(ParseError, match=match) as info:
        parse_events(io.StringIO("0 1 1\n" + line + "\n"))
    assert info.value.line_number == 2


def test_parse_self_loop_skip():
    net = parse_events(io.StringIO("1 1 5\n1 2 6\n"), on_self_loop="skip")
    assert net.events == (Event(1, 2, 6.0),)
    with pytest.raises(ValueError):
        parse_events(io.StringIO(""), on_self_loop="drop")


def test_parse_bad_fields_rejected():
    with pytest.raises(ValueError, match="permutation"):
        parse_events(io.StringIO(""), fields=("source", "target"))


def test_parse_duplicates_kept_with_warning():
    with pytest.warns(UserWarning) as caught:
        net = parse_events(io.StringIO("1 2 5\n1 2 5\n"))
    messages = [str(w.message) for w in caught]
    assert any("duplicate" in m for m in messages)
    # the duplicate pair is also an equal-timestamp tie
    assert any("stable order" in m for m in messages)
    assert len(net) == 2


def test_file_round_trip(tmp_path):
    net = TemporalNetwork([Event(4, 1, 0.25), Event(1, 3, 2.0)])
    path = tmp_path / "events.txt"
    save_events(net, str(path))
    assert load_events(str(path)) == net


def test_write_events_stream():
    net = TemporalNetwork([Event(0, 1, 1.0)])
    buf = io.StringIO()
    write_events(net, buf)
    assert buf.getvalue() == "0 1 1\n"
