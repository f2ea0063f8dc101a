# -*- coding: utf-8 -*-
"""Tests of the special flow evolution and target sets"""
import pytest
from ..ergolab_base import GOLDEN, Rotation
from ..ergolab_errors import ConfigurationError, DomainError
from ..ergolab_flow import (
    FlowPoint, Roof, SpecialFlow, TargetSet, advance, flow_distance,
    iter_segments, sample_times, total_measure
)


def test_advance_unit_roof(quarter_flow):
    x = FlowPoint(0.1, 0.0)
    end, segments = advance(quarter_flow, x, 3.5)
    assert [s.duration for s in segments] == pytest.approx([1, 1, 1, 0.5])
    assert end.base_pos == pytest.approx(0.85)
    assert end.height == pytest.approx(0.5)


def test_advance_zero_time(quarter_flow):
    x = FlowPoint(0.3, 0.2)
    assert advance(quarter_flow, x, 0.0) == (x, [])


def test_advance_two_valued_roof():
    flow = SpecialFlow(Rotation(0.25), Roof.two_valued(0.5, 1.0, 2.0))
    end, segments = advance(flow, FlowPoint(0.1, 0.0), 2.5)
    assert [s.duration for s in segments] == pytest.approx([1, 1, 0.5])
    assert end.base_pos == pytest.approx(0.6)
    assert end.height == pytest.approx(0.5)


def test_run_ending_on_roof_crosses(quarter_flow):
    end, segments = advance(quarter_flow, FlowPoint(0.0, 0.5), 0.5)
    assert segments[-1].crosses
    assert end == FlowPoint(0.25, 0.0)


@pytest.mark.parametrize('height', [0.1, 0.3, 0.7])
def test_crossings_at_multiples_of_constant_roof(height):
    rotation = Rotation(GOLDEN)
    flow = SpecialFlow(rotation, Roof.constant(height))
    x = FlowPoint(0.2, 0.0)
    a = x.base_pos
    for k in range(1, 61):
        a = rotation.apply(a)
        end, segments = advance(flow, x, k * height)
        assert sum(s.crosses for s in segments) == k
        assert end.height == 0.0
        assert end.base_pos == pytest.approx(a, abs=1e-12)
        _, segments = advance(flow, x, (k + 0.5) * height)
        assert sum(s.crosses for s in segments) == k
        assert segments[-1].end_height == pytest.approx(height / 2)


def test_negative_time_rejected(quarter_flow):
    with pytest.raises(DomainError):
        list(iter_segments(quarter_flow, FlowPoint(0.0, 0.0), -1.0))


def test_advance_is_a_flow(golden_flow):
    x = FlowPoint(0.3, 0.4)
    direct, _ = advance(golden_flow, x, 7.3)
    mid, _ = advance(golden_flow, x, 3.1)
    composed, _ = advance(golden_flow, mid, 4.2)
    assert flow_distance(direct, composed) < 1e-9


@pytest.mark.parametrize('roof, expected', [
    (Roof.constant(1.0), 1.0),
    (Roof.two_valued(0.5, 1.0, 3.0), 2.0),
    (Roof.two_valued(0.5, 1.0, 1.0 + GOLDEN), 1.3090169943749475),
])
def test_total_measure(roof, expected):
    assert total_measure(SpecialFlow(Rotation(0.25), roof)) == \
        pytest.approx(expected)


@pytest.mark.parametrize('values, message', [
    ((0.0,), "roof must be positive"),
    ((1e-12,), "roof values below 1e-09"),
])
def test_bad_roof(values, message):
    with pytest.raises(ConfigurationError) as err:
        Roof((0.0,), values)
    assert message in err.value.violations


def test_flow_distance():
    x = FlowPoint(0.2, 0.1)
    assert flow_distance(x, x) == 0
    assert flow_distance(FlowPoint(0.95, 0.2), FlowPoint(0.05, 0.2)) == \
        pytest.approx(0.1)
    assert flow_distance(x, FlowPoint(0.3, 0.4)) == pytest.approx(0.4)


def test_point_validation(quarter_flow):
    with pytest.raises(DomainError):
        quarter_flow.point(0.5, 1.0)
    with pytest.raises(DomainError):
        quarter_flow.point(1.0, 0.0)


def test_sample_times(quarter_flow):
    points = sample_times(quarter_flow, FlowPoint(0.0, 0.0), 1.0, 4)
    assert [p.base_pos for p in points] == pytest.approx([0, 0.25, 0.5,
                                                          0.75])


def test_target_set_checks(quarter_flow):
    assert not TargetSet(((0.0, 0.5, 0.0, 1.0),)).violations(quarter_flow)
    above = TargetSet(((0.0, 0.5, 0.0, 1.5),)).violations(quarter_flow)
    assert any("above the roof" in v for v in above)
    overlap = TargetSet(((0.0, 0.5, 0.0, 1.0), (0.25, 0.75, 0.5, 1.0)))
    assert "target rectangles overlap" in overlap.violations(quarter_flow)
    with pytest.raises(ConfigurationError):
        TargetSet(()).validate(quarter_flow)


def test_target_membership_and_measure(quarter_flow):
    target = TargetSet(((0.0, 0.5, 0.0, 0.5), (0.5, 1.0, 0.5, 1.0)))
    assert FlowPoint(0.2, 0.2) in target
    assert FlowPoint(0.2, 0.5) not in target
    assert FlowPoint(0.7, 0.5) in target
    assert target.measure == pytest.approx(0.5)
    assert target.column_overlap(0.2, 0.25, 0.75) == pytest.approx(0.25)
    everything = TargetSet.everything(quarter_flow)
    assert everything.measure == pytest.approx(1.0)
