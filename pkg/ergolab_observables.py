# -*- coding: utf-8 -*-
"""
/***************************************************************************
 ergolab_observables
                                 ergolab
 Piecewise polynomial observables and exact trajectory integrals
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

An observable is f(a, b) = sum_k c[j][k] b**k for a in cell j. Cells refine
the roof partition, so on every vertical run the integrand is one
polynomial of the height and Phi(t, x) = int_0^t f(T_s x) ds is a sum of
closed form antiderivative increments.
"""
import math
from bisect import bisect_right
from dataclasses import dataclass, field
from .ergolab_errors import ConfigurationError
from .ergolab_flow import iter_segments, total_measure
from .ergolab_poly import (
    CompensatedSum, antiderivative, horner, real_roots, shift, trim
)

__all__ = ['MAX_OBSERVABLE_DEGREE', 'Observable', 'PhiResult', 'PhiPath',
           'make_observable', 'evaluate', 'mean', 'mean_center', 'phi',
           'occupation_time', 'constant', 'height', 'sign_halves',
           'indicator']


MAX_OBSERVABLE_DEGREE = 5


@dataclass(frozen=True)
class Observable:
    """
    Piecewise polynomial observable on the phase space of a flow.

    Built by make_observable, which refines the cells by the roof
    partition and records the roof value of every cell.
    """
    starts: tuple
    coefficients: tuple
    roof_values: tuple
    antiderivatives: tuple = field(init=False, repr=False)
    sign_changes: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'antiderivatives', tuple(
            antiderivative(c) for c in self.coefficients
        ))
        object.__setattr__(self, 'sign_changes', tuple(
            tuple(real_roots(c, 0.0, r))
            for c, r in zip(self.coefficients, self.roof_values)
        ))

    def cell(self, a):
        """Index of the cell containing base position a"""
        return bisect_right(self.starts, a) - 1

    def __call__(self, x):
        return horner(self.coefficients[self.cell(x.base_pos)], x.height)

    @property
    def degree(self):
        """Largest degree over the cells"""
        return max(len(c) for c in self.coefficients) - 1

    @property
    def max_coefficient(self):
        """Largest absolute coefficient"""
        return max(abs(v) for c in self.coefficients for v in c)

    def is_zero(self):
        """True when every coefficient vanishes"""
        return all(v == 0.0 for c in self.coefficients for v in c)

    def increment(self, j, lo, hi):
        """Integral of the cell j polynomial over heights [lo, hi]"""
        big_p = self.antiderivatives[j]
        return horner(big_p, hi) - horner(big_p, lo)

    def abs_increment(self, j, lo, hi):
        """Integral of |f| over heights [lo, hi] in cell j"""
        big_p = self.antiderivatives[j]
        knots = [lo] + [r for r in self.sign_changes[j] if lo < r < hi]
        knots.append(hi)
        return math.fsum(
            abs(horner(big_p, v) - horner(big_p, u))
            for u, v in zip(knots, knots[1:])
        )

    def segment_polynomial(self, j, start_height):
        """Coefficients of tau -> f(a, start_height + tau) in cell j"""
        return shift(self.coefficients[j], start_height)

    def with_coefficients(self, coefficients):
        """Same cells, new coefficients"""
        return Observable(self.starts, tuple(coefficients), self.roof_values)


@dataclass
class PhiResult:
    """Phi(t, x), the number of runs used and optionally int |f|"""
    value: float
    segments_used: int
    abs_value: float = None


def make_observable(flow, starts, coefficients):
    """
    Observable with the given cells and per-cell ascending coefficients.

    Cells are refined by the roof breakpoints; a refined cell keeps the
    polynomial of the cell it came from.
    """
    starts = tuple(starts)
    violations = []
    if not starts or starts[0] != 0:
        violations.append("observable partition must start at 0")
    if any(u >= v for u, v in zip(starts, starts[1:])):
        violations.append("observable breakpoints must increase")
    if starts and starts[-1] >= 1:
        violations.append("observable breakpoints must lie in [0, 1)")
    if len(coefficients) != len(starts):
        violations.append("observable needs one polynomial per cell")
    for c in coefficients:
        if not c:
            violations.append("empty coefficient list")
        elif len(trim(c)) - 1 > MAX_OBSERVABLE_DEGREE:
            violations.append(
                f"observable degree above {MAX_OBSERVABLE_DEGREE}"
            )
    if violations:
        raise ConfigurationError(violations)

    refined = sorted(set(starts) | set(flow.roof.starts))
    cells = []
    for u in refined:
        cells.append(trim(coefficients[bisect_right(starts, u) - 1]))
    width = max(len(c) for c in cells)
    cells = [c + (0.0,) * (width - len(c)) for c in cells]
    return Observable(
        tuple(refined), tuple(cells), tuple(flow.roof(u) for u in refined)
    )


def evaluate(f, x):
    """f at the phase space point x"""
    return f(x)


def mean(f, flow):
    """Space mean of f with respect to the normalized flow measure"""
    ends = list(f.starts[1:]) + [1]
    mass = math.fsum(
        float(v - u) * f.increment(j, 0.0, r)
        for j, (u, v, r) in enumerate(zip(f.starts, ends, f.roof_values))
    )
    return mass / total_measure(flow)


def mean_center(f, flow):
    """f minus its mean, subtracted from the constant terms"""
    m = mean(f, flow)
    return f.with_coefficients(
        (c[0] - m,) + tuple(c[1:]) for c in f.coefficients
    )


def phi(flow, f, x, t, with_abs=False):
    """Phi(t, x) with compensated accumulation over the vertical runs"""
    total = CompensatedSum()
    total_abs = CompensatedSum() if with_abs else None
    used = 0
    for seg in iter_segments(flow, x, t):
        j = f.cell(seg.base_pos)
        lo, hi = seg.start_height, seg.end_height
        total.add(f.increment(j, lo, hi))
        if with_abs:
            total_abs.add(f.abs_increment(j, lo, hi))
        used += 1
    return PhiResult(
        value=total.value,
        segments_used=used,
        abs_value=total_abs.value if with_abs else None,
    )


def occupation_time(flow, target, x, t):
    """Time spent by the trajectory of x in the target set over [0, t]"""
    total = CompensatedSum()
    for seg in iter_segments(flow, x, t):
        total.add(target.column_overlap(
            seg.base_pos, seg.start_height, seg.end_height
        ))
    return total.value


class PhiPath:
    """
    Phi(s, x) for s in [0, length] as an explicit piecewise polynomial.

    One entry per vertical run: start time, compensated Phi at the start,
    the run, and the cell of its column.
    """

    def __init__(self, flow, f, x, length):
        self.flow = flow
        self.f = f
        self.x = x
        self.length = float(length)
        self.times = []
        self.offsets = []
        self.segments = []
        self.cells = []
        clock = CompensatedSum()
        total = CompensatedSum()
        for seg in iter_segments(flow, x, length):
            j = f.cell(seg.base_pos)
            self.times.append(clock.value)
            self.offsets.append(total.value)
            self.segments.append(seg)
            self.cells.append(j)
            clock.add(seg.duration)
            total.add(f.increment(j, seg.start_height, seg.end_height))
        self.final_value = total.value

    def _locate(self, s):
        return max(bisect_right(self.times, s) - 1, 0)

    def value(self, s):
        """Phi(s, x) for 0 <= s <= length"""
        if not self.segments:
            return 0.0
        i = self._locate(s)
        seg = self.segments[i]
        tau = min(max(s - self.times[i], 0.0), seg.duration)
        return self.offsets[i] + self.f.increment(
            self.cells[i], seg.start_height, seg.start_height + tau
        )

    def point(self, s):
        """T_s x for 0 <= s <= length"""
        if not self.segments:
            return self.x
        i = self._locate(s)
        seg = self.segments[i]
        tau = min(max(s - self.times[i], 0.0), seg.duration)
        if seg.crosses and tau >= seg.duration:
            return self.flow.point(self.flow.base.apply(seg.base_pos), 0.0)
        if seg.start_height + tau >= self.f.roof_values[self.cells[i]]:
            return self.flow.point(self.flow.base.apply(seg.base_pos), 0.0)
        return self.flow.point(seg.base_pos, seg.start_height + tau)

    def segment_polynomial(self, i, level=0.0):
        """Coefficients of tau -> Phi(times[i] + tau, x) - level"""
        seg = self.segments[i]
        j = self.cells[i]
        big_p = shift(self.f.antiderivatives[j], seg.start_height)
        coeffs = list(big_p)
        coeffs[0] += self.offsets[i] - horner(big_p, 0.0) - level
        return tuple(coeffs)

    def solve(self, level, tol):
        """All s in [0, length] with Phi(s, x) = level, ascending"""
        found = []
        for i, seg in enumerate(self.segments):
            coeffs = self.segment_polynomial(i, level)
            start = self.times[i]
            if abs(horner(coeffs, 0.0)) <= tol:
                found.append(start)
            for tau in real_roots(coeffs, 0.0, seg.duration):
                found.append(start + tau)
        if self.segments:
            last = len(self.segments) - 1
            end = self.segment_polynomial(last, level)
            if abs(horner(end, self.segments[last].duration)) <= tol:
                found.append(self.times[last] + self.segments[last].duration)
        found.sort()
        unique = []
        for s in found:
            if not unique or s - unique[-1] > tol:
                unique.append(s)
        return unique


def constant(flow, c):
    """f = c"""
    return make_observable(flow, (0.0,), ((c,),))


def height(flow):
    """f(a, b) = b"""
    return make_observable(flow, (0.0,), ((0.0, 1.0),))


def sign_halves(flow):
    """f = +1 on a in [0, 0.5), -1 on [0.5, 1)"""
    return make_observable(flow, (0.0, 0.5), ((1.0,), (-1.0,)))


def indicator(flow, u, v):
    """Indicator of the columns over [u, v)"""
    if u == 0:
        starts, coeffs = [0.0], [(1.0,)]
    else:
        starts, coeffs = [0.0, u], [(0.0,), (1.0,)]
    if v < 1:
        starts.append(v)
        coeffs.append((0.0,))
    return make_observable(flow, tuple(starts), tuple(coeffs))
