# -*- coding: utf-8 -*-
"""Tests of the polynomial helpers"""
import pytest
from numpy.polynomial import polynomial as npoly
from ..ergolab_poly import (
    CompensatedSum, abs_integral, antiderivative, descartes_bound,
    horner, max_abs, real_roots, shift, trim
)


def test_horner_ascending():
    assert horner((1.0, 2.0, 3.0), 2.0) == 17.0


def test_trim_keeps_constant():
    assert trim((0.0, 0.0)) == (0.0,)
    assert trim((1.0, 2.0, 0.0)) == (1.0, 2.0)


def test_shift():
    # p(x) = x^2, p(1 + t) = 1 + 2t + t^2
    assert shift((0.0, 0.0, 1.0), 1.0) == pytest.approx((1.0, 2.0, 1.0))


def test_antiderivative_vanishes_at_zero():
    big_p = antiderivative((2.0, 6.0))
    assert horner(big_p, 0.0) == 0.0
    assert horner(big_p, 1.0) == pytest.approx(5.0)


def test_simple_roots():
    coeffs = tuple(npoly.polyfromroots([0.2, 0.5, 0.7]))
    assert real_roots(coeffs, 0.0, 1.0) == pytest.approx([0.2, 0.5, 0.7],
                                                          abs=1e-11)
    assert real_roots(coeffs, 0.3, 0.6) == pytest.approx([0.5], abs=1e-11)


def test_double_root_is_not_a_sign_change():
    coeffs = tuple(npoly.polyfromroots([0.4, 0.4, 0.8]))
    assert real_roots(coeffs, 0.0, 1.0) == pytest.approx([0.8], abs=1e-11)


@pytest.mark.parametrize('double, simple', [
    ((0.1, 0.6), (0.35, 0.9)),
    ((0.25, 0.5), (0.05, 0.75)),
    ((1 / 3, 2 / 3), (0.2, 0.95)),
])
def test_double_roots_among_simple_roots(double, simple):
    coeffs = tuple(npoly.polyfromroots(double + double + simple))
    assert real_roots(coeffs, 0.0, 1.0) == pytest.approx(list(simple),
                                                         abs=1e-9)


def test_triple_root_changes_sign():
    coeffs = tuple(npoly.polyfromroots([0.5, 0.5, 0.5]))
    assert real_roots(coeffs, 0.0, 1.0) == pytest.approx([0.5], abs=1e-4)


def test_roots_of_constant_and_linear():
    assert not real_roots((3.0,), 0.0, 1.0)
    assert real_roots((-0.5, 1.0), 0.0, 1.0) == [0.5]
    assert not real_roots((-2.0, 1.0), 0.0, 1.0)


def test_degree_above_six_rejected():
    with pytest.raises(ValueError):
        real_roots((1.0,) * 8, 0.0, 1.0)


def test_descartes_bound_counts_roots():
    coeffs = tuple(npoly.polyfromroots([0.25, 0.75]))
    assert descartes_bound(coeffs, 0.0, 1.0) == 2
    assert descartes_bound(coeffs, 0.5, 1.0) == 1
    assert descartes_bound((1.0, 1.0), 0.0, 1.0) == 0


def test_abs_integral_splits_at_roots():
    assert abs_integral((-1.0, 2.0), 0.0, 1.0) == pytest.approx(0.5)
    assert abs_integral((-1.0, 2.0), 0.5, 0.5) == 0.0


def test_max_abs_uses_interior_extremum():
    # 1 - 4 (x - 1/2)^2 peaks at 1/2
    coeffs = (0.0, 4.0, -4.0)
    assert max_abs(coeffs, 0.0, 1.0) == pytest.approx(1.0)


def test_compensated_sum():
    total = CompensatedSum()
    for value in (1e16, 1.0, -1e16):
        total.add(value)
    assert total.value == 1.0
