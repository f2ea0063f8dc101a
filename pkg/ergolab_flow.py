# -*- coding: utf-8 -*-
"""
/***************************************************************************
 ergolab_flow
                                 ergolab
 Special flows under piecewise constant roofs, event driven evolution
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

A point (a, b) rises with unit speed; on reaching the roof r(a) it is
identified with (S a, 0). The identification is applied eagerly, so a
FlowPoint always satisfies 0 <= b < r(a).
"""
import math
from bisect import bisect_right
from dataclasses import dataclass
from shapely.geometry import box
from shapely.ops import unary_union
from .ergolab_base import circle_distance
from .ergolab_errors import DomainError, ConfigurationError
from .ergolab_poly import CompensatedSum

__all__ = ['Roof', 'SpecialFlow', 'FlowPoint', 'TrajectorySegment',
           'TargetSet', 'advance', 'iter_segments', 'total_measure',
           'flow_distance', 'sample_times']


MIN_ROOF = 1e-9
AREA_TOL = 1e-12
CROSS_TOL = 1e-12


def _check_partition(starts, what):
    violations = []
    if not starts or starts[0] != 0:
        violations.append(f"{what} partition must start at 0")
    if any(u >= v for u, v in zip(starts, starts[1:])):
        violations.append(f"{what} breakpoints must increase")
    if starts and starts[-1] >= 1:
        violations.append(f"{what} breakpoints must lie in [0, 1)")
    return violations


@dataclass(frozen=True)
class Roof:
    """Piecewise constant roof: values[j] on [starts[j], starts[j + 1])"""
    starts: tuple
    values: tuple

    def __post_init__(self):
        starts = tuple(self.starts)
        values = tuple(float(v) for v in self.values)
        violations = _check_partition(starts, "roof")
        if len(starts) != len(values):
            violations.append("roof needs one value per piece")
        if any(not v > 0 for v in values):
            violations.append("roof must be positive")
        elif any(v < MIN_ROOF for v in values):
            violations.append(f"roof values below {MIN_ROOF}")
        if any(math.isinf(v) for v in values):
            violations.append("roof must be finite")
        if violations:
            raise ConfigurationError(violations)
        object.__setattr__(self, 'starts', starts)
        object.__setattr__(self, 'values', values)

    @classmethod
    def constant(cls, height):
        """Roof of a single value"""
        return cls((0.0,), (height,))

    @classmethod
    def two_valued(cls, cut, low, high):
        """low on [0, cut), high on [cut, 1)"""
        return cls((0.0, cut), (low, high))

    def piece(self, a):
        """Index of the piece containing a"""
        return bisect_right(self.starts, a) - 1

    def __call__(self, a):
        return self.values[self.piece(a)]

    def lengths(self):
        """Length of every piece"""
        ends = list(self.starts[1:]) + [1]
        return [float(v - u) for u, v in zip(self.starts, ends)]


@dataclass(frozen=True)
class SpecialFlow:
    """Special flow over a base map under a roof"""
    base: object
    roof: Roof

    @property
    def total_measure(self):
        """Area under the roof"""
        return total_measure(self)

    def point(self, a, b=0.0):
        """Validated phase space point"""
        if not 0 <= a < 1:
            raise DomainError(f"base position {a} outside [0, 1)")
        if not 0 <= b < self.roof(a):
            raise DomainError(
                f"height {b} outside [0, {self.roof(a)}) at base {a}"
            )
        return FlowPoint(a, float(b))


@dataclass(frozen=True)
class FlowPoint:
    """Point (a, b) of the phase space"""
    base_pos: float
    height: float


@dataclass(frozen=True)
class TrajectorySegment:
    """Vertical run of a trajectory; `crosses` marks a run up to the roof"""
    base_pos: float
    start_height: float
    duration: float
    crosses: bool = False

    @property
    def end_height(self):
        """Height at the end of the run"""
        return self.start_height + self.duration


def total_measure(flow):
    """Measure of the phase space, sum of length times roof value"""
    return math.fsum(
        length * value
        for length, value in zip(flow.roof.lengths(), flow.roof.values)
    )


def iter_segments(flow, x, t):
    """
    Vertical runs tiling the trajectory of x over [0, t].

    Every roof crossing applies the base map exactly once; a run ending
    on the roof, up to CROSS_TOL * (1 + t), is a crossing. Elapsed time
    is kept on a compensated clock so long runs do not drift.
    """
    if not t >= 0 or math.isinf(t):
        raise DomainError(f"time {t} must be finite and non negative")
    a, b = x.base_pos, x.height
    t = float(t)
    slack = CROSS_TOL * (1 + t)
    base_map, roof = flow.base, flow.roof
    elapsed = CompensatedSum()
    while True:
        remaining = t - elapsed.value
        if remaining <= 0 or (remaining <= slack and elapsed.value > 0):
            return
        room = roof(a) - b
        if remaining < room - slack:
            yield TrajectorySegment(a, b, remaining)
            return
        yield TrajectorySegment(a, b, room, crosses=True)
        elapsed.add(room)
        a = base_map.apply(a)
        b = 0.0


def _segment_end(flow, seg):
    if seg.crosses:
        return FlowPoint(flow.base.apply(seg.base_pos), 0.0)
    return FlowPoint(seg.base_pos, seg.end_height)


def advance(flow, x, t):
    """T_t x and the list of vertical runs of the trajectory"""
    segments = list(iter_segments(flow, x, t))
    if not segments:
        return x, segments
    return _segment_end(flow, segments[-1]), segments


def flow_distance(x, y):
    """Circle distance of the bases plus height difference"""
    return circle_distance(x.base_pos, y.base_pos) + abs(x.height - y.height)


def sample_times(flow, x, step, n):
    """Orbit x, T_step x, ..., T_(n-1)step x of the time-step map"""
    points = [x]
    for _ in range(n - 1):
        x, _ = advance(flow, x, step)
        points.append(x)
    return points


@dataclass(frozen=True)
class TargetSet:
    """
    Finite union of disjoint phase space rectangles [a1, a2) x [b1, b2).

    Geometry checks run on shapely boxes; membership is the exact half
    open test.
    """
    rectangles: tuple

    def __post_init__(self):
        object.__setattr__(self, 'rectangles', tuple(
            tuple(float(c) for c in rect) for rect in self.rectangles
        ))

    @classmethod
    def everything(cls, flow):
        """The whole phase space"""
        ends = list(flow.roof.starts[1:]) + [1.0]
        return cls(tuple(
            (u, v, 0.0, r)
            for u, v, r in zip(flow.roof.starts, ends, flow.roof.values)
        ))

    def violations(self, flow):
        """Every constraint the rectangles break for this flow"""
        found = []
        if not self.rectangles:
            return ["target set must not be empty"]
        for a1, a2, b1, b2 in self.rectangles:
            if not (0 <= a1 < a2 <= 1 and 0 <= b1 < b2):
                found.append(
                    f"target rectangle {(a1, a2, b1, b2)} is degenerate "
                    f"or outside [0, 1)"
                )
                continue
            lo = flow.roof.piece(a1)
            hi = flow.roof.piece(math.nextafter(a2, 0.0))
            if b2 > min(flow.roof.values[lo:hi + 1]):
                found.append(
                    f"target rectangle {(a1, a2, b1, b2)} above the roof"
                )
        if found:
            return found
        boxes = [box(a1, b1, a2, b2) for a1, a2, b1, b2 in self.rectangles]
        if abs(unary_union(boxes).area - sum(bx.area for bx in boxes)) \
                > AREA_TOL:
            found.append("target rectangles overlap")
        return found

    def validate(self, flow):
        """Raise ConfigurationError unless the set fits the flow"""
        found = self.violations(flow)
        if found:
            raise ConfigurationError(found)
        return self

    @property
    def measure(self):
        """Area of the union"""
        return unary_union([
            box(a1, b1, a2, b2) for a1, a2, b1, b2 in self.rectangles
        ]).area

    def __contains__(self, x):
        a, b = x.base_pos, x.height
        return any(
            a1 <= a < a2 and b1 <= b < b2
            for a1, a2, b1, b2 in self.rectangles
        )

    def column_overlap(self, a, lo, hi):
        """Length of [lo, hi] inside the set over base position a"""
        return math.fsum(
            max(0.0, min(hi, b2) - max(lo, b1))
            for a1, a2, b1, b2 in self.rectangles
            if a1 <= a < a2
        )
