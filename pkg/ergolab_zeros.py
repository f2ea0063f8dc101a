# -*- coding: utf-8 -*-
"""
/***************************************************************************
 ergolab_zeros
                                 ergolab
 Integral zeros of special flows: zeros of Phi(t, x), zeros landing in a
 target set, metric returns, and the A_b / pair matching machinery
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

On a vertical run Phi(t0 + tau, x) is a polynomial of tau of degree at
most 6 whose extrema sit where the cell polynomial changes sign. The
trajectory is cut into monotone pieces at those extrema and at the run
ends; a sign change between two knots is a transversal zero refined by
bisection, a knot where |Phi| <= zero_tol is a zero whose kind is decided
by the signs before and after it.
"""
import logging
from dataclasses import dataclass
from itertools import islice
from scipy.optimize import bisect
from .ergolab_base import GOLDEN, Rotation
from .ergolab_errors import (
    ConfigurationError, DomainError, IdenticallyZeroObservable,
    PairNotFound, PreconditionError
)
from .ergolab_flow import (
    FlowPoint, Roof, SpecialFlow, TargetSet, advance, flow_distance,
    iter_segments
)
from .ergolab_observables import (
    PhiPath, indicator, mean, mean_center, phi
)
from .ergolab_poly import CompensatedSum, horner
from .ergolab_utils import default, log_message

__all__ = ['TRANSVERSAL', 'TANGENTIAL', 'ZeroEvent', 'AbParams',
           'PairMatch', 'CanonicalSystem', 'iter_integral_zeros',
           'find_integral_zeros', 'denisova_returns', 'ab_membership',
           'joint_pair_search', 'pair_to_zero', 'threshold_target',
           'canonical_system']


TRANSVERSAL = 'transversal'
TANGENTIAL = 'tangential-suspect'
MEAN_WARN_TOL = 1e-10
BISECT_XTOL = 1e-14


@dataclass(frozen=True)
class ZeroEvent:
    """Time t_k with Phi(t_k, x) ~ 0, the landing T_t_k x and its status"""
    time: float
    landing: FlowPoint
    in_target: bool
    residual: float
    kind: str


@dataclass(frozen=True)
class AbParams:
    """
    Radius b and tolerance delta of the A_b conditions.

    The argument needs delta, eps < b / 100; that regime is up to the
    caller.
    """
    b: float
    delta: float
    grid_resolution: int = None

    def __post_init__(self):
        violations = []
        if not self.b > 0:
            violations.append("b must be positive")
        if not 0 < self.delta < 1:
            violations.append("delta must lie in (0, 1)")
        if self.grid_resolution is None:
            object.__setattr__(self, 'grid_resolution',
                               default('grid_resolution'))
        elif self.grid_resolution < 1:
            violations.append("grid_resolution must be positive")
        if violations:
            raise ConfigurationError(violations)


@dataclass(frozen=True)
class PairMatch:
    """s, s' with Phi(s, x) = Phi(s', T_t' x) + d"""
    s: float
    s_prime: float
    matched_value: float
    d: float
    residual: float


@dataclass(frozen=True)
class CanonicalSystem:
    """Flow, mean centered observable and target set of one experiment"""
    flow: SpecialFlow
    f: object
    target: TargetSet


def _sign(v, tol):
    if v > tol:
        return 1
    if v < -tol:
        return -1
    return 0


def _landing(flow, seg, tau):
    if tau >= seg.duration and seg.crosses:
        return FlowPoint(flow.base.apply(seg.base_pos), 0.0)
    b = seg.start_height + tau
    if b >= flow.roof(seg.base_pos):
        return FlowPoint(flow.base.apply(seg.base_pos), 0.0)
    return FlowPoint(seg.base_pos, b)


def _check_observable(flow, f):
    if f.is_zero():
        raise IdenticallyZeroObservable()
    m = mean(f, flow)
    if abs(m) > MEAN_WARN_TOL:
        log_message(
            f"observable mean {m:.3e} is not zero, integral zeros may "
            f"stop after a while", level=logging.WARNING
        )


def iter_integral_zeros(flow, f, x, horizon, target=None, zero_tol=None):
    """
    Stream of ZeroEvents of Phi(., x) on (0, horizon], ascending in time.

    target None stands for the whole phase space.
    """
    if not horizon > 0:
        raise DomainError("horizon must be positive")
    if zero_tol is None:
        zero_tol = default('zero_tol')
    _check_observable(flow, f)

    def event(seg, start, tau, value, kind):
        point = _landing(flow, seg, tau)
        return ZeroEvent(
            time=start + tau,
            landing=point,
            in_target=True if target is None else point in target,
            residual=abs(value),
            kind=kind,
        )

    clock = CompensatedSum()
    total = CompensatedSum()
    sign_before = 0
    pending = None
    started = False
    for seg in iter_segments(flow, x, horizon):
        j = f.cell(seg.base_pos)
        b0 = seg.start_height
        start, offset = clock.value, total.value

        def value_at(tau, j=j, b0=b0, offset=offset):
            return offset + f.increment(j, b0, b0 + tau)

        knots = [r - b0 for r in f.sign_changes[j]
                 if b0 < r < b0 + seg.duration]
        knots.append(seg.duration)
        prev_tau, prev_value = 0.0, offset
        if not started:
            started = True
            pending = 'start'
        for tau in knots:
            value = value_at(tau)
            if _sign(prev_value, zero_tol) * _sign(value, zero_tol) < 0:
                root = bisect(value_at, prev_tau, tau, xtol=BISECT_XTOL)
                yield event(seg, start, root, value_at(root), TRANSVERSAL)
            sign_now = _sign(value, zero_tol)
            if sign_now == 0:
                if pending is None:
                    pending = (seg, start, tau, value)
            else:
                if pending not in (None, 'start'):
                    kind = TRANSVERSAL if sign_before and \
                        sign_now != sign_before else TANGENTIAL
                    yield event(*pending, kind)
                pending = None
                sign_before = sign_now
            prev_tau, prev_value = tau, value
        clock.add(seg.duration)
        total.add(f.increment(j, b0, seg.end_height))

    if pending not in (None, 'start'):
        yield event(*pending, TANGENTIAL)


def find_integral_zeros(flow, f, x, horizon, target=None, zero_tol=None,
                        max_events=None):
    """At most max_events integral zeros of x up to the horizon"""
    return list(islice(
        iter_integral_zeros(flow, f, x, horizon, target, zero_tol),
        max_events
    ))


def denisova_returns(flow, f, x, horizon, radius_schedule, zero_tol=None):
    """
    Integral zeros landing in shrinking balls around x.

    An event is accepted when its landing lies within the current radius;
    each accepted event consumes one radius.
    """
    radii = [float(r) for r in radius_schedule]
    if any(r <= 0 for r in radii) or \
            any(r2 > r1 for r1, r2 in zip(radii, radii[1:])):
        raise DomainError("radius schedule must be positive, decreasing")
    accepted = []
    if not radii:
        return accepted
    for ev in iter_integral_zeros(flow, f, x, horizon, None, zero_tol):
        if flow_distance(ev.landing, x) <= radii[len(accepted)]:
            accepted.append(ev)
            if len(accepted) == len(radii):
                break
    return accepted


def ab_membership(flow, f, target, x, params):
    """
    Grid check of x in A_b.

    x must lie in the target and, at grid_resolution times per vertical
    run in (0, b], both time averages of |f| and of the target indicator
    must stay within (1 - delta, 1 + delta). f is expected rescaled so
    that it is close to 1 on the target.
    """
    if x not in target:
        return False
    lo, hi = 1.0 - params.delta, 1.0 + params.delta
    grid = params.grid_resolution
    elapsed = CompensatedSum()
    abs_total = CompensatedSum()
    inside = CompensatedSum()
    for seg in iter_segments(flow, x, params.b):
        j = f.cell(seg.base_pos)
        b0 = seg.start_height
        t0 = elapsed.value
        for k in range(1, grid + 1):
            tau = seg.duration * k / grid
            t = t0 + tau
            abs_avg = (abs_total.value + f.abs_increment(j, b0, b0 + tau)) / t
            occ_avg = (inside.value + target.column_overlap(
                seg.base_pos, b0, b0 + tau)) / t
            if not (lo < abs_avg < hi and lo < occ_avg < hi):
                return False
        elapsed.add(seg.duration)
        abs_total.add(f.abs_increment(j, b0, seg.end_height))
        inside.add(target.column_overlap(seg.base_pos, b0, seg.end_height))
    return True


def joint_pair_search(flow, f, target, x, t_prime, params, d,
                      match_tol=None):
    """
    First grid point s with T_s x in A_b and a root s' of
    Phi(s', T_t' x) = Phi(s, x) - d with T_(t' + s') x in A_b.

    Raises PairNotFound with scan statistics when the grid is exhausted.
    """
    if not 0 <= d < params.b / 100:
        raise PreconditionError(
            f"offset d={d} outside [0, b/100) with b={params.b}"
        )
    if match_tol is None:
        match_tol = default('match_tol')
    first = PhiPath(flow, f, x, params.b)
    y, _ = advance(flow, x, t_prime)
    second = PhiPath(flow, f, y, params.b)

    scanned = in_ab = candidates = 0
    for i in range(params.grid_resolution):
        s = params.b * i / params.grid_resolution
        scanned += 1
        if not ab_membership(flow, f, target, first.point(s), params):
            continue
        in_ab += 1
        value = first.value(s)
        for s_prime in second.solve(value - d, match_tol):
            if s_prime >= params.b:
                continue
            candidates += 1
            if not ab_membership(flow, f, target, second.point(s_prime),
                                 params):
                continue
            residual = abs(value - second.value(s_prime) - d)
            if residual <= match_tol:
                return PairMatch(s=s, s_prime=s_prime, matched_value=value,
                                 d=d, residual=residual)
    raise PairNotFound(scanned, in_ab, candidates)


def pair_to_zero(flow, f, target, x, t_prime, match, zero_tol=None):
    """
    Zero of the shifted point T_s x built from a matched pair.

    Phi(t' + s' - s, T_s x) = Phi(t', x) - d, and the landing is
    T_(t' + s') x. Returns the shifted point and the event, residual
    recomputed from scratch. A residual above zero_tol means Phi(t', x)
    was not d and raises PreconditionError. The kind compares the sign
    of f just before and just after the landing.
    """
    if zero_tol is None:
        zero_tol = default('zero_tol')
    duration = t_prime + match.s_prime - match.s
    if not duration > 0:
        raise DomainError("matched pair gives a non positive time")
    start, _ = advance(flow, x, match.s)
    landing, segments = advance(flow, start, duration)
    value = phi(flow, f, start, duration).value
    if abs(value) > zero_tol:
        raise PreconditionError(
            f"rebuilt value {value:.3e} exceeds zero_tol {zero_tol:.1e}: "
            f"Phi(t', x) is not d"
        )
    last = segments[-1]
    before = horner(f.coefficients[f.cell(last.base_pos)], last.end_height)
    after = f(landing)
    simple = _sign(before, zero_tol) * _sign(after, zero_tol) > 0
    return start, ZeroEvent(
        time=duration,
        landing=landing,
        in_target=True if target is None else landing in target,
        residual=abs(value),
        kind=TRANSVERSAL if simple else TANGENTIAL,
    )


def threshold_target(flow, f, fraction=0.5):
    """Columns where a piecewise constant f is >= fraction * max f"""
    if f.degree > 0:
        raise ConfigurationError(
            "threshold targets need a piecewise constant observable"
        )
    peak = max(c[0] for c in f.coefficients)
    ends = list(f.starts[1:]) + [1.0]
    rectangles = tuple(
        (float(u), float(v), 0.0, r)
        for u, v, r, c in zip(f.starts, ends, f.roof_values, f.coefficients)
        if c[0] >= fraction * peak
    )
    return TargetSet(rectangles).validate(flow)


def canonical_system():
    """
    Golden rotation under the roof {1, golden ratio} on halves, f the mean
    centered indicator of the left half columns and A = {f >= max f / 2}.
    """
    flow = SpecialFlow(Rotation(GOLDEN), Roof.two_valued(0.5, 1.0,
                                                         1.0 + GOLDEN))
    f = mean_center(indicator(flow, 0.0, 0.5), flow)
    return CanonicalSystem(flow, f, threshold_target(flow, f))
