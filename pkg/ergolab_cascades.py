# -*- coding: utf-8 -*-
"""
/***************************************************************************
 ergolab_cascades
                                 ergolab
 Cylindrical cascades over base maps: Birkhoff sums, zero times, one
 sided deviation times, induced cascades and the Weiss statistic
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
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
import numpy as np
from .ergolab_base import Orbit, ReturnStep
from .ergolab_errors import (
    ConfigurationError, FiberOverflowError, PreconditionError, DomainError
)
from .ergolab_flow import advance
from .ergolab_observables import phi
from .ergolab_poly import CompensatedSum
from .ergolab_utils import default, log_message, uniform_samples

__all__ = ['StepFunction', 'CascadeState', 'SignTimes', 'InducedRun',
           'TimeOneRun', 'cascade_step', 'iter_birkhoff_blocks',
           'birkhoff_sums', 'sum_zero_times', 'shneiberg_sign_times',
           'deviation_sign_changes', 'induced_cascade_run',
           'weiss_statistic', 'time_one_cascade']


INT64_MAX = np.iinfo(np.int64).max
MEAN_TOL = 1e-12
DEVIATION_TOL = 1e-12


def _is_int(value):
    return isinstance(value, (int, np.integer)) and not isinstance(value,
                                                                   bool)


@dataclass(frozen=True)
class StepFunction:
    """
    Step function of the base: values[j] on [starts[j], starts[j + 1]).

    Integer values keep the cascade exact end to end. Starts given as
    Fractions make the mean an exact rational.
    """
    starts: tuple
    values: tuple
    float_starts: np.ndarray = field(init=False, repr=False, compare=False)
    table: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        starts = tuple(self.starts)
        values = tuple(self.values)
        violations = []
        if not starts or starts[0] != 0:
            violations.append("step function partition must start at 0")
        if any(u >= v for u, v in zip(starts, starts[1:])):
            violations.append("step function breakpoints must increase")
        if starts and starts[-1] >= 1:
            violations.append("step function breakpoints must lie in [0, 1)")
        if len(values) != len(starts):
            violations.append("step function needs one value per cell")
        if violations:
            raise ConfigurationError(violations)
        object.__setattr__(self, 'starts', starts)
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'float_starts',
                           np.array([float(u) for u in starts]))
        dtype = np.int64 if self.is_integer else float
        object.__setattr__(self, 'table', np.array(
            [int(v) if self.is_integer else float(v) for v in values],
            dtype=dtype
        ))

    @classmethod
    def signs(cls, cut=0.5):
        """+1 on [0, cut), -1 on [cut, 1)"""
        return cls((0, cut), (1, -1))

    @classmethod
    def indicator(cls, u, v):
        """Integer indicator of [u, v)"""
        starts, values = ([0], [1]) if u == 0 else ([0, u], [0, 1])
        if v < 1:
            starts.append(v)
            values.append(0)
        return cls(tuple(starts), tuple(values))

    @property
    def is_integer(self):
        """True when every value is an integer"""
        return all(_is_int(v) for v in self.values)

    @property
    def is_rational(self):
        """True when cells and values are exact rationals"""
        return all(isinstance(u, (int, Fraction)) for u in self.starts) \
            and all(isinstance(v, (int, Fraction)) for v in self.values)

    @property
    def max_abs(self):
        """Largest |value|"""
        return max(abs(v) for v in self.values)

    def value_at(self, a):
        """g(a), read from the same float table as `lookup`"""
        index = np.searchsorted(self.float_starts, float(a), side='right')
        return self.table[index - 1].item()

    def lookup(self, positions):
        """g on an array of positions"""
        index = np.searchsorted(self.float_starts, positions, side='right')
        return self.table[index - 1]

    def lengths(self):
        """Cell lengths"""
        ends = list(self.starts[1:]) + [1]
        return [v - u for u, v in zip(self.starts, ends)]

    def mean(self):
        """Integral of g; an exact Fraction for rational data"""
        if self.is_rational:
            return sum(
                (Fraction(length) * Fraction(v)
                 for length, v in zip(self.lengths(), self.values)),
                Fraction(0)
            )
        return math.fsum(
            float(length) * float(v)
            for length, v in zip(self.lengths(), self.values)
        )

    def has_zero_mean(self):
        """Exact for rational data, within 1e-12 otherwise"""
        m = self.mean()
        if isinstance(m, Fraction):
            return m == 0
        return abs(m) <= MEAN_TOL


@dataclass(frozen=True)
class CascadeState:
    """Point (x, z) of the skew product"""
    base_pos: float
    fiber: object


@dataclass
class SignTimes:
    """Times where S(x, n) - n m is <= 0 (below) and >= 0 (above)"""
    mean: object
    below: list
    above: list
    ratios: list
    horizon: int
    late_from: int = 1
    max_late_deviation: float = 0.0


@dataclass
class InducedRun:
    """Consecutive first return steps with their induced sums"""
    steps: list
    complete: bool
    status: str = 'ok'

    @property
    def total_time(self):
        """Sum of the return times"""
        return sum(step.return_time for step in self.steps)

    @property
    def total_sum(self):
        """Sum of the induced values"""
        return sum(step.cocycle_sum for step in self.steps)


@dataclass
class TimeOneRun:
    """Time-step cocycle values Phi(step, T_(k step) x) and their sums"""
    step: float
    increments: list
    sums: list
    landing: object


def _check_fiber(value):
    if _is_int(value) and abs(value) > INT64_MAX:
        raise FiberOverflowError(f"fiber {value} leaves the int64 range")
    return value


def cascade_step(base_map, g, state):
    """C(x, z) = (S x, z + g(x))"""
    x = state.base_pos
    return CascadeState(
        base_map.apply(x), _check_fiber(state.fiber + g.value_at(x))
    )


def iter_birkhoff_blocks(base_map, g, x, horizon, block_size=None):
    """
    Birkhoff sums S(x, n), n = 1..horizon, in numpy blocks.

    Yields (first_n, sums) where sums[i] = S(x, first_n + i). Integer
    step functions are summed in int64 with an overflow guard.
    """
    if horizon < 1:
        raise DomainError("horizon must be at least 1")
    if block_size is None:
        block_size = default('block_size')
    orbit = Orbit(base_map, x)
    integer = g.is_integer
    bound = int(g.max_abs) + 1 if integer else None
    carry = 0 if integer else 0.0
    done = 0
    while done < horizon:
        m = min(block_size, horizon - done)
        values = g.lookup(orbit.take(m))
        if integer:
            if abs(carry) + bound * m > INT64_MAX:
                raise FiberOverflowError(
                    f"Birkhoff sums may leave the int64 range after "
                    f"{done + m} steps"
                )
            sums = np.cumsum(values, dtype=np.int64) + carry
            carry = int(sums[-1])
        else:
            sums = np.cumsum(values) + carry
            carry = float(sums[-1])
        yield done + 1, sums
        done += m


def birkhoff_sums(base_map, g, x, horizon):
    """Stream of S(x, n) = sum_{i<n} g(S^i x), n = 1..horizon"""
    for _, sums in iter_birkhoff_blocks(base_map, g, x, horizon):
        yield from sums.tolist()


def sum_zero_times(base_map, g, x, horizon):
    """Every n <= horizon with S(x, n) = 0, for zero mean integer g"""
    if not g.is_integer:
        raise PreconditionError("zero times need an integer valued cocycle")
    if not g.has_zero_mean():
        raise PreconditionError(
            f"cocycle mean {g.mean()} is not zero: the recurrence "
            f"hypothesis does not hold"
        )
    zeros = []
    for first, sums in iter_birkhoff_blocks(base_map, g, x, horizon):
        zeros.extend((np.flatnonzero(sums == 0) + first).tolist())
    return zeros


def _exact_deviation(g, m, horizon):
    # S(x, n) q - n p fits int64 for small denominators
    return g.is_integer and isinstance(m, Fraction) \
        and (g.max_abs * m.denominator + abs(m.numerator)) * horizon \
        < INT64_MAX // 2


def shneiberg_sign_times(base_map, g, x, horizon, late_from=None):
    """
    Times n with S(x, n) - n m <= 0 and times with >= 0, m the mean of g,
    plus ratio samples S(x, n) / n at n = 1, 2, 4, ... and n = horizon.

    max_late_deviation is the largest |S(x, n) / n - m| over every
    n >= late_from, horizon // 10 by default.
    """
    if late_from is None:
        late_from = max(horizon // 10, 1)
    m = g.mean()
    max_late = 0.0
    exact = _exact_deviation(g, m, horizon)
    below, above, ratios = [], [], []
    checkpoints = {1 << k for k in range(horizon.bit_length())}
    checkpoints.add(horizon)
    for first, sums in iter_birkhoff_blocks(base_map, g, x, horizon):
        n = np.arange(first, first + len(sums), dtype=np.int64)
        if exact:
            deviation = sums * m.denominator - n * m.numerator
            is_below = deviation <= 0
            is_above = deviation >= 0
        else:
            deviation = sums - n * float(m)
            slack = DEVIATION_TOL * n
            is_below = deviation <= slack
            is_above = deviation >= -slack
        below.extend(n[is_below].tolist())
        above.extend(n[is_above].tolist())
        for k in sorted(c for c in checkpoints
                        if first <= c < first + len(sums)):
            ratios.append((k, float(sums[k - first]) / k))
        late = n >= late_from
        if late.any():
            ratio = sums[late] / n[late] - float(m)
            max_late = max(max_late, float(np.max(np.abs(ratio))))
    return SignTimes(mean=m, below=below, above=above, ratios=ratios,
                     horizon=horizon, late_from=late_from,
                     max_late_deviation=max_late)


def deviation_sign_changes(sign_times):
    """Number of strict sign alternations of S(x, n) - n m"""
    below, above = set(sign_times.below), set(sign_times.above)
    changes, last = 0, 0
    for n in range(1, sign_times.horizon + 1):
        sign = (n in above) - (n in below)
        if sign and last and sign != last:
            changes += 1
        if sign:
            last = sign
    return changes


def induced_cascade_run(base_map, g, base_set, x, steps, max_steps=None):
    """
    Steps of the induced cascade on base_set from x.

    Each step carries the return time n(x), the landing S^n(x) x and the
    induced value sum_{i<n} g(S^i x). A return longer than max_steps
    stops the run with a partial result.
    """
    if x not in base_set:
        raise DomainError(f"start point {x} not in the base set")
    if max_steps is None:
        max_steps = default('max_steps')
    run = []
    y = x
    for _ in range(steps):
        total = 0 if g.is_integer else 0.0
        n = 0
        while True:
            total = total + g.value_at(y)
            y = base_map.apply(y)
            n += 1
            if y in base_set:
                break
            if n >= max_steps:
                log_message(
                    f"induced run stopped after {len(run)} steps: no "
                    f"return within {max_steps}", level=logging.WARNING
                )
                return InducedRun(run, complete=False,
                                  status='horizon-exhausted')
        run.append(ReturnStep(return_time=n, landing=y,
                              cocycle_sum=_check_fiber(total)))
    return InducedRun(run, complete=True)


def weiss_statistic(base_map, g, n_list, eps, samples, seed):
    """
    Fraction of seeded uniform points with |S(x, n)| > eps n, per n.
    """
    if eps <= 0:
        raise DomainError("eps must be positive")
    if samples < 1:
        raise DomainError("at least one sample is needed")
    n_list = sorted(int(n) for n in n_list)
    if not n_list or n_list[0] < 1:
        raise DomainError("every n must be at least 1")
    horizon = n_list[-1]
    counts = dict.fromkeys(n_list, 0)
    for x in uniform_samples(seed, samples):
        sums = np.concatenate([
            block for _, block in
            iter_birkhoff_blocks(base_map, g, x, horizon)
        ])
        for n in n_list:
            if abs(float(sums[n - 1])) > eps * n:
                counts[n] += 1
    return [(n, counts[n] / samples) for n in n_list]


def time_one_cascade(flow, f, x, step, n):
    """
    Cascade of the time-step map T_step with cocycle Phi(step, .).

    Its Birkhoff sums along x, T_step x, ... equal Phi(k step, x).
    """
    increments, sums = [], []
    total = CompensatedSum()
    y = x
    for _ in range(n):
        increments.append(phi(flow, f, y, step).value)
        total.add(increments[-1])
        sums.append(total.value)
        y, _ = advance(flow, y, step)
    return TimeOneRun(step=step, increments=increments, sums=sums,
                      landing=y)
