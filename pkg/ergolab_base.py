# -*- coding: utf-8 -*-
"""
/***************************************************************************
 ergolab_base
                                 ergolab
 Invertible measure preserving maps of [0, 1) and first return machinery
                             -------------------
        begin                : 2026-10-19
        copyright            : (C) 2026 by ergolab developers
 ***************************************************************************/

/***************************************************************************
 *                                                                         *
 *   This program is free software; you can redistribute it and/or modify  *
 *   it under the terms of the GNU General Public License as published by  *
 *   the Free Software Foundation; either version 2 of the License, or     *
 *   (at your option) any later version.                                   *
 *                                                                         *
 ***************************************************************************/
"""
import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
import numpy as np
from .ergolab_errors import DomainError, ConfigurationError, HorizonExhausted
from .ergolab_utils import sample_rng

__all__ = ['GOLDEN', 'Rotation', 'IntervalExchange', 'BaseSet',
           'ReturnStep', 'apply', 'apply_inverse', 'circle_distance',
           'Orbit', 'orbit_block', 'first_return', 'find_period',
           'return_time_statistics', 'continued_fraction', 'convergents']


GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
MAX_IET_INTERVALS = 16
LENGTH_TOL = 1e-12


def _check_position(a):
    if not 0 <= a < 1:
        raise DomainError(f"position {a} outside [0, 1)")


def circle_distance(a, b):
    """Distance on the circle R/Z"""
    d = abs(float(a) - float(b)) % 1.0
    return min(d, 1.0 - d)


@dataclass(frozen=True)
class Rotation:
    """
    Rotation a -> frac(a + alpha).

    alpha may be a Fraction p/q; the orbit generator then advances the
    integer numerator so that orbits are exactly periodic.
    """
    alpha: object

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ConfigurationError(
                f"rotation number {self.alpha} outside (0, 1)"
            )

    @property
    def exact(self):
        """Rational rotation number, or None"""
        return self.alpha if isinstance(self.alpha, Fraction) else None

    def apply(self, a):
        """Image of a"""
        _check_position(a)
        x = a + self.alpha
        if x >= 1:
            x -= 1
        return x

    def apply_inverse(self, a):
        """Preimage of a"""
        _check_position(a)
        x = a - self.alpha
        if x < 0:
            x += 1
            if x >= 1:
                x = type(x)(0)
        return x

    def describe(self):
        """Plain dictionary form, used in reports"""
        if self.exact is not None:
            return {'kind': 'rotation', 'alpha': str(self.exact),
                    'rational': True}
        return {'kind': 'rotation', 'alpha': float(self.alpha),
                'rational': False}


@dataclass(frozen=True)
class IntervalExchange:
    """
    Interval exchange of k <= 16 intervals.

    Interval i (counted from the left, 1-based) is translated so that it
    ends up in position permutation[i - 1] of the image.
    """
    lengths: tuple
    permutation: tuple
    starts: tuple = field(init=False, repr=False)
    translations: tuple = field(init=False, repr=False)
    image_starts: tuple = field(init=False, repr=False)
    image_order: tuple = field(init=False, repr=False)

    def __post_init__(self):
        violations = []
        k = len(self.lengths)
        if not 1 <= k <= MAX_IET_INTERVALS:
            violations.append(f"IET needs 1..{MAX_IET_INTERVALS} intervals")
        if any(length <= 0 for length in self.lengths):
            violations.append("IET lengths must be positive")
        if sorted(self.permutation) != list(range(1, k + 1)):
            violations.append("IET permutation is not a bijection on 1..k")
        if violations:
            raise ConfigurationError(violations)

        total = sum(self.lengths)
        lengths = tuple(length / total for length in self.lengths)
        if abs(float(sum(lengths)) - 1.0) > LENGTH_TOL:
            raise ConfigurationError("IET lengths do not normalize to 1")

        starts = [0] * k
        for i in range(1, k):
            starts[i] = starts[i - 1] + lengths[i - 1]

        by_position = sorted(range(k), key=lambda i: self.permutation[i])
        image_start = [0] * k
        position = 0
        for i in by_position:
            image_start[i] = position
            position += lengths[i]

        object.__setattr__(self, 'lengths', lengths)
        object.__setattr__(self, 'permutation', tuple(self.permutation))
        object.__setattr__(self, 'starts', tuple(starts))
        object.__setattr__(self, 'translations', tuple(
            image_start[i] - starts[i] for i in range(k)
        ))
        object.__setattr__(self, 'image_order', tuple(by_position))
        object.__setattr__(self, 'image_starts', tuple(
            image_start[i] for i in by_position
        ))

    @property
    def exact(self):
        """IETs are iterated in floating point"""
        return None

    def apply(self, a):
        """Image of a"""
        _check_position(a)
        i = bisect_right(self.starts, a) - 1
        return _clamp(a + self.translations[i])

    def apply_inverse(self, a):
        """Preimage of a"""
        _check_position(a)
        i = self.image_order[bisect_right(self.image_starts, a) - 1]
        return _clamp(a - self.translations[i])

    def describe(self):
        """Plain dictionary form, used in reports"""
        return {'kind': 'iet',
                'lengths': [float(x) for x in self.lengths],
                'permutation': list(self.permutation)}


def _clamp(x):
    if x < 0:
        return type(x)(0)
    if x >= 1:
        return math.nextafter(1.0, 0.0)
    return x


def apply(base_map, a):
    """Image of a under the base map"""
    return base_map.apply(a)


def apply_inverse(base_map, a):
    """Preimage of a under the base map"""
    return base_map.apply_inverse(a)


class Orbit:
    """
    Forward orbit of a point, produced in blocks.

    Irrational rotations take one fused frac(x + alpha) per step. Rational
    rotations p/q advance the integer counter m = k p mod q and place the
    point at frac(a + m / q), so the orbit is exactly periodic.
    """

    def __init__(self, base_map, a):
        _check_position(a)
        self.base_map = base_map
        self.origin = float(a)
        self.position = float(a)
        self.counter = 0
        self.steps = 0

    def take(self, n):
        """Next n orbit positions as a float array"""
        out = np.empty(n, dtype=float)
        exact = self.base_map.exact
        x = self.position
        if exact is not None:
            p, q = exact.numerator, exact.denominator
            origin, m = self.origin, self.counter
            for k in range(n):
                out[k] = x
                m = (m + p) % q
                x = origin + m / q
                if x >= 1.0:
                    x -= 1.0
            self.counter = m
        elif isinstance(self.base_map, Rotation):
            alpha = float(self.base_map.alpha)
            for k in range(n):
                out[k] = x
                x += alpha
                if x >= 1.0:
                    x -= 1.0
        else:
            apply_map = self.base_map.apply
            for k in range(n):
                out[k] = x
                x = apply_map(x)
        self.position = x
        self.steps += n
        return out


def orbit_block(base_map, a, n):
    """Positions a, S a, ..., S^(n-1) a and the next position S^n a"""
    orbit = Orbit(base_map, a)
    block = orbit.take(n)
    return block, orbit.position


@dataclass(frozen=True)
class BaseSet:
    """Finite union of disjoint half-open intervals [u, v) of [0, 1)"""
    intervals: tuple

    def __post_init__(self):
        intervals = tuple(sorted(
            (u, v) for u, v in self.intervals
        ))
        violations = []
        if not intervals:
            violations.append("base set must not be empty")
        for u, v in intervals:
            if not 0 <= u < v <= 1:
                violations.append(f"interval [{u}, {v}) not inside [0, 1)")
        for (_, v1), (u2, _) in zip(intervals, intervals[1:]):
            if u2 < v1:
                violations.append("base set intervals overlap")
        if violations:
            raise ConfigurationError(violations)
        object.__setattr__(self, 'intervals', intervals)

    @classmethod
    def whole(cls):
        """The full interval [0, 1)"""
        return cls(((0.0, 1.0),))

    def __contains__(self, a):
        lefts = [u for u, _ in self.intervals]
        i = bisect_right(lefts, a) - 1
        return i >= 0 and a < self.intervals[i][1]

    @property
    def measure(self):
        """Total length"""
        return math.fsum(float(v - u) for u, v in self.intervals)


@dataclass
class ReturnStep:
    """One step n(x), S^n(x) x of the induced map, with the induced sum"""
    return_time: int
    landing: float
    cocycle_sum: object = None


def first_return(base_map, base_set, a, max_steps):
    """
    First return of a to base_set.

    Raises HorizonExhausted when the orbit stays outside for max_steps.
    """
    if a not in base_set:
        raise DomainError(f"start point {a} not in the base set")
    if max_steps < 1:
        raise DomainError("max_steps must be at least 1")
    x = a
    for n in range(1, max_steps + 1):
        x = base_map.apply(x)
        if x in base_set:
            return ReturnStep(return_time=n, landing=x)
    raise HorizonExhausted(max_steps, position=x)


def find_period(base_map, a, max_n, tol=0.0):
    """Smallest n <= max_n with S^n a = a (up to tol), or None"""
    exact = base_map.exact
    if exact is not None:
        return exact.denominator if exact.denominator <= max_n else None
    x = a
    for n in range(1, max_n + 1):
        x = base_map.apply(x)
        if circle_distance(x, a) <= tol:
            return n
    return None


def return_time_statistics(base_map, base_set, samples, seed, max_steps):
    """
    Empirical first return times from seeded starting points of the set.

    Kac's lemma predicts a mean return time 1 / |A| for ergodic maps.
    """
    times = []
    exhausted = 0
    lengths = np.array([float(v - u) for u, v in base_set.intervals])
    weights = lengths / lengths.sum()
    for i in range(samples):
        rng = sample_rng(seed, i)
        j = rng.choice(len(lengths), p=weights)
        u, v = base_set.intervals[j]
        a = float(rng.uniform(float(u), float(v)))
        try:
            times.append(first_return(base_map, base_set, a,
                                      max_steps).return_time)
        except HorizonExhausted:
            exhausted += 1
    return {
        'samples': samples,
        'exhausted': exhausted,
        'mean_return_time': float(np.mean(times)) if times else None,
        'max_return_time': int(max(times)) if times else None,
        'kac_prediction': 1.0 / base_set.measure,
    }


def continued_fraction(alpha, depth):
    """First partial quotients of alpha in (0, 1)"""
    quotients = []
    x = Fraction(alpha) if isinstance(alpha, Fraction) else alpha
    for _ in range(depth):
        if x == 0:
            break
        x = 1 / x
        a = math.floor(x)
        quotients.append(int(a))
        x -= a
    return quotients


def convergents(alpha, depth):
    """Convergents p/q of alpha as Fractions"""
    return _convergent_fractions(continued_fraction(alpha, depth))


def _convergent_fractions(quotients):
    # alpha = [0; a1, a2, ...]
    h_prev, h = 1, 0
    k_prev, k = 0, 1
    result = []
    for a in quotients:
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        result.append(Fraction(h, k))
    return result
