# -*- coding: utf-8 -*-
"""
/***************************************************************************
 ergolab_experiments
                                 ergolab
 Seeded experiments over cascades, flows and the image measure lemma
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
from collections import deque
from fractions import Fraction
import numpy as np
from .ergolab_base import return_time_statistics
from .ergolab_cascades import (
    birkhoff_sums, deviation_sign_changes, induced_cascade_run,
    shneiberg_sign_times, sum_zero_times, weiss_statistic
)
from .ergolab_errors import (
    ConfigurationError, LemmaViolation, PairNotFound, PreconditionError
)
from .ergolab_flow import FlowPoint
from .ergolab_lemma import MAX_PIECE_DEGREE, fuzz_trial, local_wiener_check
from .ergolab_observables import PhiPath, phi
from .ergolab_utils import default, sample_rng, uniform_samples
from .ergolab_zeros import (
    TANGENTIAL, AbParams, ab_membership, denisova_returns,
    find_integral_zeros, joint_pair_search, pair_to_zero
)
from .template_experiment import TemplateExperiment, count_summary

__all__ = ['EXPERIMENT_CLASSES', 'make_experiment', 'run', 'flow_sample',
           'target_sample']


def _json_number(value):
    if isinstance(value, Fraction):
        return str(value)
    return value


def flow_sample(flow, rng):
    """Uniform point of the phase space of the flow"""
    while True:
        a = float(rng.uniform(0.0, 1.0))
        b = float(rng.uniform(0.0, flow.roof.values[flow.roof.piece(a)]))
        # area weighting by rejection against the highest column
        if rng.uniform(0.0, max(flow.roof.values)) < flow.roof(a):
            return FlowPoint(a, b)


def target_sample(target, rng):
    """Uniform point of a target set, rectangles weighted by area"""
    areas = np.array([(a2 - a1) * (b2 - b1)
                      for a1, a2, b1, b2 in target.rectangles])
    j = rng.choice(len(areas), p=areas / areas.sum())
    a1, a2, b1, b2 = target.rectangles[j]
    return FlowPoint(float(rng.uniform(a1, a2)), float(rng.uniform(b1, b2)))


def _event_rows(results):
    rows = []
    for result in results:
        for event in result.get('events', ()):
            rows.append((result['sample_id'], repr(event['time']),
                         str(event['in_target']).lower(),
                         repr(event['residual'])))
    return rows


def _event_json(event):
    return {'time': event.time,
            'landing': [event.landing.base_pos, event.landing.height],
            'in_target': event.in_target,
            'residual': event.residual,
            'kind': event.kind}


class CascadeExperiment(TemplateExperiment):
    """Common setup of the experiments on the base cascade"""

    def setup(self):
        self.base_map = self.config.build_base_map()
        self.g = self.config.build_cocycle()

    def describe_system(self):
        return {'base': self.base_map.describe(),
                'cocycle': {'starts': [_json_number(u)
                                       for u in self.g.starts],
                            'values': [_json_number(v)
                                       for v in self.g.values]}}

    def points(self):
        if 'x' in self.config.params:
            return [float(self.config.params['x'])]
        return uniform_samples(self.config.seed, self.config.count)

    def sums_rows(self, results):
        """S(x, n) of the first sample, n = 1..trace_limit"""
        if not results or 'x' not in results[0]:
            return []
        limit = min(int(self.config.param('trace_limit', 10000)),
                    int(self.config.param('N', 0)))
        if limit < 1:
            return []
        sums = birkhoff_sums(self.base_map, self.g, results[0]['x'], limit)
        return [(n, _json_number(s)) for n, s in enumerate(sums, start=1)]


class CascadeZerosExperiment(CascadeExperiment):
    """Zero times S(x, n) = 0 of a zero mean integer cocycle"""
    name = 'cascade-zeros'

    def prep_sample(self, index, point):
        horizon = int(self.config.params['N'])
        zeros = sum_zero_times(self.base_map, self.g, point, horizon)
        return {'x': point, 'status': 'ok', 'zero_count': len(zeros),
                'zero_times': zeros, 'steps': horizon}

    def summarize(self, results):
        summary = super().summarize(results)
        summary['zero_counts'] = count_summary(
            [r['zero_count'] for r in results if r['status'] == 'ok']
        )
        return summary

    def trace_rows(self, results):
        zeros = [
            (r['sample_id'], n, 'true', 0)
            for r in results for n in r.get('zero_times', ())
        ]
        return {
            'zeros.csv': (('sample_id', 't_k', 'in_target', 'residual'),
                          zeros),
            'sums.csv': (('n', 'S'), self.sums_rows(results)),
        }


class ShneibergDiscreteExperiment(CascadeExperiment):
    """Times where S(x, n) - n m is <= 0 and >= 0, and S / n"""
    name = 'shneiberg-discrete'

    def prep_sample(self, index, point):
        horizon = int(self.config.params['N'])
        late = int(self.config.param('late_from', max(horizon // 10, 1)))
        signs = shneiberg_sign_times(self.base_map, self.g, point, horizon,
                                     late_from=late)
        return {
            'x': point,
            'status': 'ok' if signs.below and signs.above
            else 'horizon-exhausted',
            'mean': _json_number(signs.mean),
            'below_count': len(signs.below),
            'above_count': len(signs.above),
            'sign_changes': deviation_sign_changes(signs),
            'ratios': [[n, r] for n, r in signs.ratios],
            'max_late_deviation': signs.max_late_deviation
            if late <= horizon else None,
            'steps': horizon,
        }

    def summarize(self, results):
        summary = super().summarize(results)
        deviations = [r['max_late_deviation'] for r in results
                      if r.get('max_late_deviation') is not None]
        summary['max_late_deviation'] = max(deviations) if deviations \
            else None
        return summary

    def trace_rows(self, results):
        return {'sums.csv': (('n', 'S'), self.sums_rows(results))}


class InducedExperiment(CascadeExperiment):
    """Induced cascade on a base set and its telescoping identity"""
    name = 'induced'

    def setup(self):
        super().setup()
        self.base_set = self.config.build_base_set()

    def points(self):
        if 'x' in self.config.params:
            return [float(self.config.params['x'])]
        lengths = np.array([float(v - u)
                            for u, v in self.base_set.intervals])
        points = []
        for i in range(self.config.count):
            rng = sample_rng(self.config.seed, i)
            u, v = self.base_set.intervals[
                rng.choice(len(lengths), p=lengths / lengths.sum())
            ]
            points.append(float(rng.uniform(float(u), float(v))))
        return points

    def prep_sample(self, index, point):
        run = induced_cascade_run(
            self.base_map, self.g, self.base_set, point,
            int(self.config.params['steps']),
            self.config.param('max_steps', default('max_steps'))
        )
        total_time = run.total_time
        direct = 0
        if total_time:
            direct, = deque(birkhoff_sums(self.base_map, self.g, point,
                                          total_time), maxlen=1)
        induced = run.total_sum if run.steps else 0
        return {
            'x': point,
            'status': run.status,
            'induced_steps': len(run.steps),
            'total_time': total_time,
            'induced_sum': _json_number(induced),
            'direct_sum': _json_number(direct),
            'telescoping': induced == direct,
            'mean_return_time': total_time / len(run.steps)
            if run.steps else None,
            'steps': total_time,
        }

    def summarize(self, results):
        summary = super().summarize(results)
        summary['telescoping_holds'] = all(
            r.get('telescoping', False) for r in results
        )
        summary['kac'] = return_time_statistics(
            self.base_map, self.base_set,
            min(self.config.count, 100), self.config.seed or 0,
            self.config.param('max_steps', default('max_steps'))
        )
        return summary


class WeissExperiment(CascadeExperiment):
    """Fraction of points with |S(x, n)| > eps n"""
    name = 'weiss'

    def points(self):
        return [None]

    def prep_sample(self, index, point):
        fractions = weiss_statistic(
            self.base_map, self.g, self.config.params['n_list'],
            float(self.config.params['eps']), self.config.count,
            self.config.seed
        )
        return {'status': 'ok',
                'fractions': [[n, frac] for n, frac in fractions],
                'steps': fractions[-1][0] * self.config.count}


class FlowExperiment(TemplateExperiment):
    """Common setup of the experiments on the special flow"""

    def setup(self):
        self.flow = self.config.build_flow()
        self.f = self.config.build_observable(self.flow)
        self.target = self.config.build_target(self.flow, self.f)
        self.zero_tol = float(self.config.param('zero_tol',
                                                default('zero_tol')))

    def describe_system(self):
        return {'base': self.flow.base.describe(),
                'roof': {'starts': list(self.flow.roof.starts),
                         'values': list(self.flow.roof.values)},
                'observable': {'starts': list(self.f.starts),
                               'coefficients': [
                                   list(c) for c in self.f.coefficients
                               ]},
                'target': [list(r) for r in self.target.rectangles]}

    def given_point(self):
        """params.x as a validated phase space point, or None"""
        if 'x' not in self.config.params:
            return None
        a, b = self.config.params['x']
        return self.flow.point(float(a), float(b))

    def points(self):
        x = self.given_point()
        if x is not None:
            return [x]
        return [flow_sample(self.flow, sample_rng(self.config.seed, i))
                for i in range(self.config.count)]

    def trace_rows(self, results):
        return {'zeros.csv': (('sample_id', 't_k', 'in_target', 'residual'),
                              _event_rows(results))}


class FlowZerosExperiment(FlowExperiment):
    """Integral zeros Phi(t, x) = 0 of a mean zero observable"""
    name = 'flow-zeros'

    def search(self, point, target=None):
        """Integral zeros of one point up to the horizon"""
        max_events = self.config.param('max_events')
        return find_integral_zeros(
            self.flow, self.f, point, float(self.config.params['horizon']),
            target, self.zero_tol,
            None if max_events is None else int(max_events)
        )

    def prep_sample(self, index, point):
        events = self.search(point)
        needed = int(self.config.param('min_events', 1))
        return {
            'x': [point.base_pos, point.height],
            'status': 'ok' if len(events) >= needed
            else 'horizon-exhausted',
            'event_count': len(events),
            'tangential_count': sum(e.kind == TANGENTIAL for e in events),
            'max_residual': max((e.residual for e in events), default=0.0),
            'events': [_event_json(e) for e in events],
        }

    def summarize(self, results):
        summary = super().summarize(results)
        summary['event_counts'] = count_summary(
            [r['event_count'] for r in results if 'event_count' in r]
        )
        return summary


class TheoremOneExperiment(FlowZerosExperiment):
    """
    Integral zeros landing in the target set, from points of the set.

    With params b and delta, points in A_b also run the pair search from
    the first hit and rebuild a zero of the shifted point.
    """
    name = 'theorem1'

    def points(self):
        x = self.given_point()
        if x is not None:
            return [x]
        points = []
        for i in range(self.config.count):
            rng = sample_rng(self.config.seed, i)
            point = target_sample(self.target, rng)
            while self.f(point) == 0:
                point = target_sample(self.target, rng)
            points.append(point)
        return points

    def prep_sample(self, index, point):
        events = self.search(point, self.target)
        hits = [e for e in events if e.in_target]
        needed = int(self.config.param('min_hits', 3))
        result = {
            'x': [point.base_pos, point.height],
            'status': 'ok' if len(hits) >= needed else 'horizon-exhausted',
            'event_count': len(events),
            'hit_count': len(hits),
            'max_residual': max((e.residual for e in events), default=0.0),
            'events': [_event_json(e) for e in hits],
        }
        if 'b' in self.config.params and hits:
            result['pair'] = self.pair_stage(point, hits[0].time)
        return result

    def pair_stage(self, point, t_prime):
        """A_b membership, joint pair search and the rebuilt zero"""
        params = AbParams(float(self.config.params['b']),
                          float(self.config.param('delta', 0.05)),
                          self.config.param('grid_resolution'))
        if not ab_membership(self.flow, self.f, self.target, point, params):
            return {'status': 'not-in-ab'}
        d = abs(phi(self.flow, self.f, point, t_prime).value)
        try:
            match = joint_pair_search(
                self.flow, self.f, self.target, point, t_prime, params, d,
                self.config.param('match_tol')
            )
        except PairNotFound as err:
            return {'status': 'not-found', 'scanned': err.scanned,
                    'in_ab': err.in_ab, 'candidates': err.candidates}
        stage = {'status': 'ok', 't_prime': t_prime, 'd': d,
                 's': match.s, 's_prime': match.s_prime,
                 'residual': match.residual}
        if t_prime + match.s_prime > match.s:
            # Phi(t', x) - d and the match residual both reach the zero
            tol = 2 * self.zero_tol + match.residual
            try:
                _, event = pair_to_zero(self.flow, self.f, self.target,
                                        point, t_prime, match, tol)
            except PreconditionError as err:
                stage['status'] = 'not-a-zero'
                stage['error'] = str(err)
            else:
                stage['zero'] = _event_json(event)
        return stage

    def summarize(self, results):
        summary = super().summarize(results)
        summary['hit_counts'] = count_summary(
            [r['hit_count'] for r in results if 'hit_count' in r]
        )
        pairs = [r['pair']['status'] for r in results if 'pair' in r]
        if pairs:
            summary['pairs'] = {status: pairs.count(status)
                                for status in sorted(set(pairs))}
        return summary


class DenisovaExperiment(FlowExperiment):
    """Integral zeros returning into shrinking balls around x"""
    name = 'denisova'

    def prep_sample(self, index, point):
        radii = [float(r) for r in self.config.params['radii']]
        accepted = denisova_returns(
            self.flow, self.f, point, float(self.config.params['horizon']),
            radii, self.zero_tol
        )
        return {
            'x': [point.base_pos, point.height],
            'status': 'ok' if len(accepted) == len(radii)
            else 'horizon-exhausted',
            'radii_consumed': len(accepted),
            'events': [_event_json(e) for e in accepted],
        }


class WienerExperiment(FlowExperiment):
    """|Phi(t, x) / t - f(x)| against L t / 2 for shrinking t"""
    name = 'wiener'

    def points(self):
        x = self.given_point()
        if x is not None:
            return [x]
        t_max = max(float(t) for t in self.config.params['t_values'])
        points = []
        for i in range(self.config.count):
            rng = sample_rng(self.config.seed, i)
            point = flow_sample(self.flow, rng)
            # heights leave room for t_max when the column is tall enough
            room = self.flow.roof(point.base_pos) - t_max
            if room > 0:
                point = FlowPoint(point.base_pos,
                                  float(rng.uniform(0.0, room)))
            points.append(point)
        return points

    def prep_sample(self, index, point):
        residuals = local_wiener_check(self.flow, self.f, point,
                                       self.config.params['t_values'])
        within = all(r.residual <= r.bound + self.zero_tol
                     for r in residuals)
        return {
            'x': [point.base_pos, point.height],
            'status': 'ok' if within else 'bound-exceeded',
            'residuals': [[r.t, r.residual, r.bound] for r in residuals],
        }

    def trace_rows(self, results):
        return {}


class PhiTraceExperiment(FlowExperiment):
    """Phi(t, x) on a regular time grid"""
    name = 'phi-trace'

    def points(self):
        x = self.given_point()
        if x is None:
            raise ConfigurationError("phi-trace needs params.x")
        return [x]

    def prep_sample(self, index, point):
        t_max = float(self.config.params['t_max'])
        dt = float(self.config.params['dt'])
        path = PhiPath(self.flow, self.f, point, t_max)
        count = int(round(t_max / dt))
        trace = [[k * dt, path.value(k * dt)] for k in range(count + 1)]
        return {'x': [point.base_pos, point.height], 'status': 'ok',
                'trace': trace, 'steps': len(path.segments)}

    def trace_rows(self, results):
        rows = [(repr(t), repr(v)) for r in results
                for t, v in r.get('trace', ())]
        return {'phi_trace.csv': (('t', 'phi'), rows)}


class LemmaFuzzExperiment(TemplateExperiment):
    """Seeded trials of m(F D) <= integral of |f| over D"""
    name = 'lemma-fuzz'

    def points(self):
        return list(range(int(self.config.params['trials'])))

    def prep_sample(self, index, point):
        try:
            witness = fuzz_trial(
                self.config.seed, point,
                int(self.config.param('degree_cap', MAX_PIECE_DEGREE)),
                int(self.config.param('piece_cap', 4))
            )
        except LemmaViolation as err:
            return {'status': 'violation',
                    'counterexample': err.counterexample}
        return {'status': 'ok', 'slack': witness['slack'],
                'instance': witness}

    def summarize(self, results):
        summary = super().summarize(results)
        done = [r for r in results if 'slack' in r]
        if done:
            worst = min(done, key=lambda r: r['slack'])
            summary['min_slack'] = worst['slack']
            summary['witness'] = worst['instance']
        return summary


EXPERIMENT_CLASSES = {
    cls.name: cls for cls in (
        CascadeZerosExperiment, ShneibergDiscreteExperiment,
        FlowZerosExperiment, TheoremOneExperiment, DenisovaExperiment,
        InducedExperiment, WeissExperiment, LemmaFuzzExperiment,
        WienerExperiment, PhiTraceExperiment
    )
}


def make_experiment(config):
    """Experiment object of a validated config"""
    return EXPERIMENT_CLASSES[config.experiment](config)


def run(config, write=True):
    """Validate, execute and report one experiment"""
    return make_experiment(config.check()).run(write=write)
