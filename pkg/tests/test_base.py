# -*- coding: utf-8 -*-
"""Tests of the base maps and first returns"""
from fractions import Fraction
import numpy as np
import pytest
from ..ergolab_base import (
    GOLDEN, BaseSet, IntervalExchange, Orbit, Rotation, apply,
    apply_inverse, continued_fraction, convergents, find_period,
    first_return, orbit_block, return_time_statistics
)
from ..ergolab_errors import ConfigurationError, DomainError, HorizonExhausted


SWAP = IntervalExchange((0.5, 0.5), (2, 1))


def test_rotation_apply():
    assert apply(Rotation(0.25), 0.9) == pytest.approx(0.15)
    assert apply_inverse(Rotation(0.25), 0.15) == pytest.approx(0.9)
    assert apply_inverse(Rotation(0.25), 0.0) == pytest.approx(0.75)


def test_rational_orbit_is_periodic():
    rotation = Rotation(Fraction(1, 4))
    block, nxt = orbit_block(rotation, 0.0, 4)
    assert block.tolist() == [0.0, 0.25, 0.5, 0.75]
    assert nxt == 0.0
    assert find_period(rotation, 0.0, 10) == 4


def test_rational_orbit_stays_exact():
    orbit = Orbit(Rotation(Fraction(1, 3)), 0.1)
    orbit.take(3000)
    assert orbit.position == pytest.approx(0.1, abs=1e-15)
    assert orbit.steps == 3000


def test_irrational_orbit_matches_apply():
    rotation = Rotation(GOLDEN)
    block, _ = orbit_block(rotation, 0.1, 50)
    x = 0.1
    for value in block:
        assert value == pytest.approx(x, abs=1e-12)
        x = rotation.apply(x)


def test_iet_swap():
    assert SWAP.apply(0.2) == pytest.approx(0.7)
    assert SWAP.apply_inverse(0.7) == pytest.approx(0.2)


def test_iet_three_intervals_inverse():
    iet = IntervalExchange((0.2, 0.3, 0.5), (3, 1, 2))
    for a in np.linspace(0.0, 0.99, 37):
        assert iet.apply(iet.apply_inverse(a)) == pytest.approx(a, abs=1e-12)


@pytest.mark.parametrize('lengths, permutation', [
    ((0.5, 0.5), (1, 1)),
    ((0.5, -0.5), (2, 1)),
    ((), ()),
])
def test_invalid_iet(lengths, permutation):
    with pytest.raises(ConfigurationError):
        IntervalExchange(lengths, permutation)


def test_rotation_out_of_range():
    with pytest.raises(ConfigurationError):
        Rotation(1.0)


def test_domain_error_outside_unit_interval():
    with pytest.raises(DomainError):
        Rotation(0.25).apply(1.0)
    with pytest.raises(DomainError):
        SWAP.apply(-0.1)


def test_measure_preservation():
    rng = np.random.default_rng(3)
    samples = rng.uniform(0.0, 1.0, 20000)
    iet = IntervalExchange((0.2, 0.3, 0.5), (3, 1, 2))
    images = np.array([iet.apply(a) for a in samples])
    inside = np.mean((images >= 0.1) & (images < 0.4))
    assert abs(inside - 0.3) < 3 * np.sqrt(0.3 * 0.7 / len(samples)) + 1e-3


def test_first_return():
    step = first_return(Rotation(0.25), BaseSet(((0.0, 0.5),)), 0.3, 10)
    assert step.return_time == 3
    assert step.landing == pytest.approx(0.05)
    step = first_return(Rotation(0.5), BaseSet(((0.0, 0.5),)), 0.1, 10)
    assert step.return_time == 2
    assert step.landing == pytest.approx(0.1)


def test_first_return_golden_against_iteration():
    base_set = BaseSet(((0.0, 0.5),))
    step = first_return(Rotation(GOLDEN), base_set, 0.1, 100)
    x, n = 0.1, 0
    while True:
        x = (x + GOLDEN) % 1.0
        n += 1
        if x < 0.5:
            break
    assert step.return_time == n
    assert step.landing == pytest.approx(x)


def test_first_return_horizon_exhausted():
    with pytest.raises(HorizonExhausted):
        first_return(Rotation(0.25), BaseSet(((0.0, 0.25),)), 0.1, 3)


def test_base_set_rejects_overlap():
    with pytest.raises(ConfigurationError):
        BaseSet(((0.0, 0.5), (0.4, 0.8)))


def test_continued_fraction_of_golden():
    assert continued_fraction(GOLDEN, 8) == [1] * 8
    assert convergents(GOLDEN, 5) == [Fraction(1), Fraction(1, 2),
                                      Fraction(2, 3), Fraction(3, 5),
                                      Fraction(5, 8)]
    assert continued_fraction(Fraction(3, 8), 10) == [2, 1, 2]


def test_kac_mean_return_time():
    stats = return_time_statistics(Rotation(GOLDEN), BaseSet(((0.0, 0.5),)),
                                   500, 11, 100)
    assert stats['exhausted'] == 0
    assert stats['kac_prediction'] == pytest.approx(2.0)
    assert stats['mean_return_time'] == pytest.approx(2.0, abs=0.15)
