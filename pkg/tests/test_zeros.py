# -*- coding: utf-8 -*-
"""Tests of integral zeros, metric returns and pair matching"""
import numpy as np
import pytest
from ..ergolab_errors import (
    ConfigurationError, DomainError, IdenticallyZeroObservable,
    PairNotFound, PreconditionError
)
from ..ergolab_flow import FlowPoint, TargetSet
from ..ergolab_observables import PhiPath, constant, height, phi
from ..ergolab_zeros import (
    TANGENTIAL, TRANSVERSAL, AbParams, PairMatch, ab_membership,
    denisova_returns, find_integral_zeros, iter_integral_zeros,
    joint_pair_search, pair_to_zero, threshold_target
)


ORIGIN = FlowPoint(0.0, 0.0)
LEFT = TargetSet(((0.0, 0.5, 0.0, 1.0),))


def test_sawtooth_zeros(sawtooth_flow, sawtooth_f):
    events = find_integral_zeros(sawtooth_flow, sawtooth_f, ORIGIN, 10.0)
    assert [e.time for e in events] == pytest.approx([2, 4, 6, 8, 10])
    for event in events:
        assert event.landing == ORIGIN
        assert event.kind == TANGENTIAL
        assert event.in_target
        assert event.residual <= 1e-12


def test_sawtooth_zeros_in_target(sawtooth_flow, sawtooth_f):
    events = find_integral_zeros(sawtooth_flow, sawtooth_f, ORIGIN, 10.0,
                                 target=LEFT)
    assert all(e.in_target for e in events)
    right = TargetSet(((0.5, 1.0, 0.0, 1.0),))
    events = find_integral_zeros(sawtooth_flow, sawtooth_f, ORIGIN, 10.0,
                                 target=right)
    assert not any(e.in_target for e in events)


def test_transversal_zeros(sawtooth_flow, sawtooth_f):
    x = FlowPoint(0.0, 0.5)
    events = find_integral_zeros(sawtooth_flow, sawtooth_f, x, 4.2)
    assert [e.time for e in events] == pytest.approx([1, 2, 3, 4],
                                                     abs=1e-12)
    assert {e.kind for e in events} == {TRANSVERSAL}
    assert events[0].landing.base_pos == pytest.approx(0.5)
    assert events[0].landing.height == pytest.approx(0.5)


def test_max_events(sawtooth_flow, sawtooth_f):
    events = find_integral_zeros(sawtooth_flow, sawtooth_f, ORIGIN, 100.0,
                                 max_events=2)
    assert [e.time for e in events] == pytest.approx([2, 4])


def test_zeros_against_grid(canonical):
    x = FlowPoint(0.1, 0.0)
    horizon = 200.0
    events = list(iter_integral_zeros(canonical.flow, canonical.f, x,
                                      horizon, canonical.target))
    times = np.array([e.time for e in events])
    assert np.all(np.diff(times) > 0)
    path = PhiPath(canonical.flow, canonical.f, x, horizon)
    grid = np.linspace(0.0, horizon, 20001)
    values = np.array([path.value(s) for s in grid])
    for i in np.flatnonzero(values[1:] * values[:-1] < 0):
        assert np.any((times >= grid[i] - 1e-9)
                      & (times <= grid[i + 1] + 1e-9))
    for event in events:
        value = phi(canonical.flow, canonical.f, x, event.time).value
        assert abs(value) <= 1e-9
        assert event.in_target == (event.landing in canonical.target)


def test_zeros_rejected_inputs(sawtooth_flow, sawtooth_f):
    with pytest.raises(DomainError):
        find_integral_zeros(sawtooth_flow, sawtooth_f, ORIGIN, 0.0)
    with pytest.raises(IdenticallyZeroObservable):
        find_integral_zeros(sawtooth_flow, constant(sawtooth_flow, 0.0),
                            ORIGIN, 5.0)


def test_denisova_returns(sawtooth_flow, sawtooth_f):
    events = denisova_returns(sawtooth_flow, sawtooth_f, ORIGIN, 100.0,
                              [0.1, 0.01])
    assert [e.time for e in events] == pytest.approx([2, 4])
    assert denisova_returns(sawtooth_flow, sawtooth_f, ORIGIN, 100.0,
                            []) == []
    with pytest.raises(DomainError):
        denisova_returns(sawtooth_flow, sawtooth_f, ORIGIN, 100.0,
                         [0.01, 0.1])


def test_ab_params():
    assert AbParams(0.2, 0.05, 8).grid_resolution == 8
    with pytest.raises(ConfigurationError):
        AbParams(0.0, 0.05)
    with pytest.raises(ConfigurationError):
        AbParams(0.2, 1.5)


def test_ab_membership(golden_flow):
    one = constant(golden_flow, 1.0)
    params = AbParams(1.0, 0.05, 16)
    everything = TargetSet.everything(golden_flow)
    x = FlowPoint(0.3, 0.4)
    assert ab_membership(golden_flow, one, everything, x, params)
    corner = TargetSet(((0.0, 0.5, 0.0, 0.5),))
    assert not ab_membership(golden_flow, one, corner, FlowPoint(0.1, 0.1),
                             params)
    assert not ab_membership(golden_flow, one, corner, x, params)


def test_pair_search_without_offset(golden_flow):
    one = constant(golden_flow, 1.0)
    everything = TargetSet.everything(golden_flow)
    match = joint_pair_search(golden_flow, one, everything,
                              FlowPoint(0.1, 0.2), 0.3,
                              AbParams(0.2, 0.05, 8), 0.0)
    assert match.s == 0.0
    assert match.s_prime == pytest.approx(0.0, abs=1e-12)


def test_pair_search_with_offset(golden_flow):
    one = constant(golden_flow, 1.0)
    everything = TargetSet.everything(golden_flow)
    x = FlowPoint(0.1, 0.2)
    match = joint_pair_search(golden_flow, one, everything, x, 0.3,
                              AbParams(0.2, 0.05, 8), 0.001)
    assert match.s == pytest.approx(0.025)
    assert match.s_prime == pytest.approx(0.024, abs=1e-12)
    assert match.residual <= 1e-12

    # Phi(0.3, x) = 0.3 is not d, so the rebuilt run ends off zero
    assert phi(golden_flow, one, x, 0.3 + match.s_prime - match.s).value \
        == pytest.approx(0.299)
    with pytest.raises(PreconditionError):
        pair_to_zero(golden_flow, one, everything, x, 0.3, match)


@pytest.mark.parametrize('x, t_prime, kind', [
    (FlowPoint(0.0, 0.5), 1.0, TRANSVERSAL),
    (FlowPoint(0.0, 0.0), 2.0, TANGENTIAL),
])
def test_pair_to_zero_rebuilds_a_zero(sawtooth_flow, sawtooth_f, x, t_prime,
                                      kind):
    everything = TargetSet.everything(sawtooth_flow)
    assert phi(sawtooth_flow, sawtooth_f, x, t_prime).value == \
        pytest.approx(0.0, abs=1e-12)
    match = joint_pair_search(sawtooth_flow, sawtooth_f, everything, x,
                              t_prime, AbParams(0.2, 0.05, 8), 0.0)
    start, event = pair_to_zero(sawtooth_flow, sawtooth_f, everything, x,
                                t_prime, match)
    assert event.residual <= 1e-9
    assert event.kind == kind
    assert event.in_target
    assert event.time == pytest.approx(t_prime + match.s_prime - match.s)
    assert phi(sawtooth_flow, sawtooth_f, start, event.time).value == \
        pytest.approx(0.0, abs=1e-9)


def test_pair_search_preconditions(golden_flow):
    one = constant(golden_flow, 1.0)
    everything = TargetSet.everything(golden_flow)
    with pytest.raises(PreconditionError):
        joint_pair_search(golden_flow, one, everything, FlowPoint(0.1, 0.2),
                          0.3, AbParams(0.2, 0.05, 8), 0.002)


def test_pair_not_found(golden_flow):
    one = constant(golden_flow, 1.0)
    corner = TargetSet(((0.0, 0.5, 0.0, 0.05),))
    with pytest.raises(PairNotFound) as err:
        joint_pair_search(golden_flow, one, corner, FlowPoint(0.1, 0.0),
                          0.3, AbParams(0.2, 0.05, 8), 0.0)
    assert err.value.scanned == 8
    assert err.value.in_ab == 0


def test_pair_to_zero_needs_positive_time(golden_flow):
    one = constant(golden_flow, 1.0)
    match = PairMatch(s=0.5, s_prime=0.0, matched_value=0.5, d=0.0,
                      residual=0.0)
    with pytest.raises(DomainError):
        pair_to_zero(golden_flow, one, None, FlowPoint(0.1, 0.0), 0.3, match)


def test_canonical_target(canonical):
    assert canonical.target.rectangles == ((0.0, 0.5, 0.0, 1.0),)
    assert canonical.f.starts == (0.0, 0.5)


def test_threshold_target_needs_constant_pieces(quarter_flow):
    with pytest.raises(ConfigurationError):
        threshold_target(quarter_flow, height(quarter_flow))
