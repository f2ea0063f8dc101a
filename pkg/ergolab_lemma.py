# -*- coding: utf-8 -*-
"""
/***************************************************************************
 ergolab_lemma
                                 ergolab
 Image measure of interval unions under indefinite integrals and the
 local Wiener limit along trajectories
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
from bisect import bisect_right
from dataclasses import dataclass, field
from .ergolab_errors import ConfigurationError, DomainError, LemmaViolation
from .ergolab_observables import phi
from .ergolab_poly import (
    abs_integral, antiderivative, derivative, horner, max_abs, real_roots,
    trim
)
from .ergolab_utils import log_message, sample_rng

__all__ = ['SLACK_TOL', 'Poly1D', 'IntervalUnion', 'ImageMeasureResult',
           'WienerResidual', 'image_measure', 'lemma_check',
           'random_instance', 'lemma_fuzz', 'fuzz_trial',
           'local_wiener_check']


SLACK_TOL = 1e-9
MAX_PIECE_DEGREE = 5


@dataclass(frozen=True)
class Poly1D:
    """
    Piecewise polynomial f on [0, b].

    breakpoints runs 0 = s_0 < ... < s_k = b and piece i carries ascending
    coefficients in the absolute variable s on [s_i, s_(i+1)].
    """
    breakpoints: tuple
    coefficients: tuple
    cumulative: tuple = field(init=False, repr=False)

    def __post_init__(self):
        breakpoints = tuple(float(s) for s in self.breakpoints)
        coefficients = tuple(
            tuple(float(c) for c in piece) for piece in self.coefficients
        )
        violations = []
        if len(breakpoints) < 2 or breakpoints[0] != 0:
            violations.append("breakpoints must run from 0 to b")
        if any(u >= v for u, v in zip(breakpoints, breakpoints[1:])):
            violations.append("breakpoints must increase")
        if len(coefficients) != len(breakpoints) - 1:
            violations.append("one coefficient list per piece")
        for piece in coefficients:
            if not piece:
                violations.append("empty coefficient list")
            elif len(trim(piece)) - 1 > MAX_PIECE_DEGREE:
                violations.append(f"piece degree above {MAX_PIECE_DEGREE}")
        if violations:
            raise ConfigurationError(violations)
        object.__setattr__(self, 'breakpoints', breakpoints)
        object.__setattr__(self, 'coefficients', coefficients)

        running = [0.0]
        for i, piece in enumerate(coefficients):
            big_p = antiderivative(piece)
            running.append(running[-1] + horner(big_p, breakpoints[i + 1])
                           - horner(big_p, breakpoints[i]))
        object.__setattr__(self, 'cumulative', tuple(running))

    @classmethod
    def constant(cls, value, b=1.0):
        """f = value on [0, b]"""
        return cls((0.0, b), ((value,),))

    @property
    def b(self):
        """Right end of the domain"""
        return self.breakpoints[-1]

    def piece(self, s):
        """Index of the piece containing s, the last one for s = b"""
        return min(bisect_right(self.breakpoints, s) - 1,
                   len(self.coefficients) - 1)

    def __call__(self, s):
        return horner(self.coefficients[self.piece(s)], s)

    def integral(self, t):
        """F(t), the integral of f over [0, t]"""
        i = self.piece(t)
        big_p = antiderivative(self.coefficients[i])
        return self.cumulative[i] + horner(big_p, t) \
            - horner(big_p, self.breakpoints[i])

    def to_json(self):
        """Plain lists, used for counterexamples"""
        return {'breakpoints': list(self.breakpoints),
                'coefficients': [list(c) for c in self.coefficients]}


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted disjoint closed intervals [u, v]"""
    intervals: tuple

    def __post_init__(self):
        intervals = tuple(sorted(
            (float(u), float(v)) for u, v in self.intervals
        ))
        violations = []
        for u, v in intervals:
            if not u <= v:
                violations.append(f"interval [{u}, {v}] is reversed")
        for (_, v1), (u2, _) in zip(intervals, intervals[1:]):
            if u2 <= v1:
                violations.append("intervals must be disjoint")
        if violations:
            raise ConfigurationError(violations)
        object.__setattr__(self, 'intervals', intervals)

    @property
    def measure(self):
        """Sum of the lengths"""
        return math.fsum(v - u for u, v in self.intervals)

    def check_inside(self, b):
        """Raise DomainError unless every interval lies in [0, b]"""
        for u, v in self.intervals:
            if u < 0 or v > b:
                raise DomainError(f"interval [{u}, {v}] outside [0, {b}]")


@dataclass
class ImageMeasureResult:
    """m(F D), the integral of |f| over D and their difference"""
    image_measure: float
    integral_abs: float
    slack: float


@dataclass
class WienerResidual:
    """|Phi(t, x) / t - f(x)| and its coefficient bound L t / 2"""
    t: float
    residual: float
    bound: float


def _pieces(f, u, v):
    """Sub-intervals of [u, v] cut at the breakpoints of f"""
    cuts = [s for s in f.breakpoints if u < s < v]
    knots = [u] + cuts + [v]
    for lo, hi in zip(knots, knots[1:]):
        yield f.piece(0.5 * (lo + hi)) if lo < hi else f.piece(lo), lo, hi


def _merged_length(spans):
    total = 0.0
    current = None
    for lo, hi in sorted(spans):
        if current is None or lo > current[1]:
            if current is not None:
                total += current[1] - current[0]
            current = [lo, hi]
        else:
            current[1] = max(current[1], hi)
    if current is not None:
        total += current[1] - current[0]
    return total


def image_measure(f, d_set):
    """
    Lebesgue measure of F(D) and the integral of |f| over D.

    F is continuous, so the image of an interval is [min F, max F] taken
    over its ends and the sign changes of f inside it.
    """
    d_set.check_inside(f.b)
    spans = []
    abs_parts = []
    for u, v in d_set.intervals:
        values = [f.integral(v)]
        for i, lo, hi in _pieces(f, u, v):
            coeffs = f.coefficients[i]
            values.append(f.integral(lo))
            values.extend(f.integral(r) for r in real_roots(coeffs, lo, hi))
            abs_parts.append(abs_integral(coeffs, lo, hi))
        spans.append((min(values), max(values)))
    measure = _merged_length(spans)
    integral_abs = math.fsum(abs_parts)
    return ImageMeasureResult(
        image_measure=measure,
        integral_abs=integral_abs,
        slack=integral_abs - measure,
    )


def lemma_check(f, d_set):
    """image_measure, raising LemmaViolation when the slack is negative"""
    result = image_measure(f, d_set)
    if result.slack < -SLACK_TOL:
        counterexample = f.to_json()
        counterexample['D_intervals'] = [list(i) for i in d_set.intervals]
        counterexample['slack'] = result.slack
        raise LemmaViolation(counterexample)
    return result


def random_instance(rng, degree_cap, piece_cap, b=1.0):
    """Random Poly1D on [0, b] and a random union of up to 3 intervals"""
    pieces = int(rng.integers(1, piece_cap + 1))
    inner = sorted(rng.uniform(0.0, b, size=pieces - 1).tolist())
    breakpoints = [0.0] + inner + [b]
    if len(set(breakpoints)) != len(breakpoints):
        breakpoints = [b * i / pieces for i in range(pieces + 1)]
    coefficients = [
        rng.normal(size=int(rng.integers(0, degree_cap + 1)) + 1).tolist()
        for _ in range(pieces)
    ]
    ends = sorted(rng.uniform(0.0, b, size=2 * int(rng.integers(1, 4))))
    intervals = [
        (ends[k], ends[k + 1]) for k in range(0, len(ends), 2)
        if ends[k + 1] > ends[k]
    ]
    return Poly1D(breakpoints, coefficients), IntervalUnion(intervals)


def lemma_fuzz(seed, trials, degree_cap=MAX_PIECE_DEGREE, piece_cap=4,
               make_instance=None):
    """
    Seeded randomized check of m(F D) <= integral of |f| over D.

    Trial i draws from the stream (seed, i). make_instance(rng, trial)
    replaces the random generator when given. Returns the minimum slack
    and its witness; a negative slack raises LemmaViolation.
    """
    if trials < 1:
        raise DomainError("trials must be at least 1")
    best = None
    for trial in range(trials):
        witness = fuzz_trial(seed, trial, degree_cap, piece_cap,
                             make_instance)
        if best is None or witness['slack'] < best[1]['slack']:
            best = (trial, witness)
    trial, witness = best
    return {'trials': trials, 'min_slack': witness['slack'],
            'min_trial': trial, 'witness': witness}


def fuzz_trial(seed, trial, degree_cap=MAX_PIECE_DEGREE, piece_cap=4,
               make_instance=None):
    """Instance of one fuzz trial with its slack, serialized"""
    if not 0 <= degree_cap <= MAX_PIECE_DEGREE or piece_cap < 1:
        raise DomainError("invalid degree or piece cap")
    rng = sample_rng(seed, trial)
    if make_instance is None:
        f, d_set = random_instance(rng, degree_cap, piece_cap)
    else:
        f, d_set = make_instance(rng, trial)
    result = lemma_check(f, d_set)
    witness = f.to_json()
    witness['D_intervals'] = [list(i) for i in d_set.intervals]
    witness['slack'] = result.slack
    witness['image_measure'] = result.image_measure
    witness['integral_abs'] = result.integral_abs
    return witness


def local_wiener_check(flow, f, x, t_values):
    """
    Residuals |Phi(t, x) / t - f(x)| for shrinking t.

    While x rises without reaching the roof the residual is at most
    L t / 2, L the maximum of |d f / d b| along the run. Past the roof the
    bound is reported as infinite.
    """
    t_values = [float(t) for t in t_values]
    if not t_values or min(t_values) <= 0:
        raise DomainError("t values must be positive")
    if any(t2 >= t1 for t1, t2 in zip(t_values, t_values[1:])):
        raise DomainError("t values must decrease")
    if x.base_pos in f.starts:
        log_message(
            f"base position {x.base_pos} sits on a cell boundary",
            level=logging.WARNING
        )
    j = f.cell(x.base_pos)
    room = f.roof_values[j] - x.height
    slope = derivative(f.coefficients[j])
    value = f(x)
    results = []
    for t in t_values:
        residual = abs(phi(flow, f, x, t).value / t - value)
        if t < room:
            bound = max_abs(slope, x.height, x.height + t) * t / 2.0
        else:
            bound = math.inf
        results.append(WienerResidual(t=t, residual=residual, bound=bound))
    return results
