# -*- coding: utf-8 -*-
"""Tests of the image measure bound and the local Wiener check"""
import math
import numpy as np
from numpy.polynomial import polynomial as npoly
import pytest
from .. import ergolab_lemma
from ..ergolab_errors import ConfigurationError, DomainError, LemmaViolation
from ..ergolab_flow import FlowPoint
from ..ergolab_lemma import (
    ImageMeasureResult, IntervalUnion, Poly1D, image_measure, lemma_check,
    lemma_fuzz, local_wiener_check, random_instance
)
from ..ergolab_observables import constant, height
from ..ergolab_utils import sample_rng


STEP = Poly1D((0.0, 0.5, 1.0), ((1.0,), (-1.0,)))


def _integral_on_grid(f, s):
    values = np.empty_like(s)
    pieces = np.clip(np.searchsorted(f.breakpoints, s, side='right') - 1,
                     0, len(f.coefficients) - 1)
    for i, piece in enumerate(f.coefficients):
        mask = pieces == i
        big_p = npoly.polyint(piece)
        values[mask] = f.cumulative[i] + npoly.polyval(s[mask], big_p) \
            - npoly.polyval(f.breakpoints[i], big_p)
    return values


def _sampled_measure(f, d_set, points=100001):
    # F has corners at the breakpoints: they join the grid
    spans = []
    for u, v in d_set.intervals:
        inner = [s for s in f.breakpoints if u < s < v]
        s = np.union1d(np.linspace(u, v, points), inner)
        values = _integral_on_grid(f, s)
        spans.append((values.min(), values.max()))
    spans.sort()
    total, (lo, hi) = 0.0, spans[0]
    for a, b in spans[1:]:
        if a > hi:
            total += hi - lo
            lo, hi = a, b
        else:
            hi = max(hi, b)
    return total + hi - lo


def test_constant_observable():
    result = image_measure(Poly1D.constant(1.0), IntervalUnion(((0.2, 0.5),)))
    assert result.image_measure == pytest.approx(0.3)
    assert result.integral_abs == pytest.approx(0.3)
    assert result.slack == pytest.approx(0.0, abs=1e-12)


def test_linear_observable_folds():
    f = Poly1D((0.0, 1.0), ((-1.0, 2.0),))
    result = image_measure(f, IntervalUnion(((0.0, 1.0),)))
    assert result.image_measure == pytest.approx(0.25)
    assert result.integral_abs == pytest.approx(0.5)


def test_sign_pieces():
    result = image_measure(STEP, IntervalUnion(((0.0, 1.0),)))
    assert result.image_measure == pytest.approx(0.5)
    assert result.integral_abs == pytest.approx(1.0)
    assert STEP.integral(0.75) == pytest.approx(0.25)


def test_overlapping_images_merge():
    d_set = IntervalUnion(((0.1, 0.3), (0.7, 0.9)))
    result = image_measure(STEP, d_set)
    assert result.image_measure == pytest.approx(0.2)
    assert result.integral_abs == pytest.approx(0.4)


def test_invalid_inputs():
    with pytest.raises(ConfigurationError):
        Poly1D((0.0, 1.0), ((1.0,) * 7,))
    with pytest.raises(ConfigurationError):
        Poly1D((0.0, 0.5), ((1.0,), (2.0,)))
    with pytest.raises(ConfigurationError):
        IntervalUnion(((0.1, 0.5), (0.4, 0.6)))
    with pytest.raises(DomainError):
        image_measure(STEP, IntervalUnion(((0.5, 1.5),)))


@pytest.mark.parametrize('seed', range(10))
def test_against_sampled_image(seed):
    f, d_set = random_instance(sample_rng(99, seed), 4, 3)
    assert image_measure(f, d_set).image_measure == pytest.approx(
        _sampled_measure(f, d_set), abs=1e-8
    )


def test_fuzz_never_violates():
    summary = lemma_fuzz(42, 500)
    assert summary['trials'] == 500
    assert summary['min_slack'] >= -1e-9
    witness = summary['witness']
    assert witness['slack'] == summary['min_slack']
    assert {'breakpoints', 'coefficients', 'D_intervals'} <= set(witness)


def test_fuzz_is_seeded():
    assert lemma_fuzz(5, 20) == lemma_fuzz(5, 20)


def test_fuzz_custom_instances():
    def make_instance(rng, trial):
        return Poly1D.constant(1.0 + trial), IntervalUnion(((0.0, 0.5),))

    summary = lemma_fuzz(0, 3, make_instance=make_instance)
    assert summary['min_slack'] == pytest.approx(0.0, abs=1e-12)
    assert summary['witness']['image_measure'] == pytest.approx(
        summary['witness']['integral_abs']
    )


def test_violation_carries_counterexample(monkeypatch):
    monkeypatch.setattr(ergolab_lemma, 'image_measure',
                        lambda f, d_set: ImageMeasureResult(1.0, 0.5, -0.5))
    with pytest.raises(LemmaViolation) as err:
        lemma_check(STEP, IntervalUnion(((0.0, 1.0),)))
    assert err.value.counterexample['slack'] == -0.5
    assert err.value.counterexample['D_intervals'] == [[0.0, 1.0]]
    assert '"slack": -0.5' in str(err.value)


def test_wiener_constant(quarter_flow):
    residuals = local_wiener_check(quarter_flow, constant(quarter_flow, 2.0),
                                   FlowPoint(0.3, 0.2), [1.0, 0.1, 0.01])
    for item in residuals:
        assert item.residual == pytest.approx(0.0, abs=1e-12)


def test_wiener_height(quarter_flow):
    f = height(quarter_flow)
    first, second = local_wiener_check(quarter_flow, f, FlowPoint(0.3, 0.3),
                                       [0.8, 0.1])
    assert first.bound == math.inf
    assert second.residual == pytest.approx(0.05)
    assert second.bound == pytest.approx(0.05)


def test_wiener_needs_decreasing_times(quarter_flow):
    f = height(quarter_flow)
    with pytest.raises(DomainError):
        local_wiener_check(quarter_flow, f, FlowPoint(0.3, 0.3), [0.1, 0.2])
    with pytest.raises(DomainError):
        local_wiener_check(quarter_flow, f, FlowPoint(0.3, 0.3), [])
