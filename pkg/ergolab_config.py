# -*- coding: utf-8 -*-
"""
/***************************************************************************
 ergolab_config
                                 ergolab
 Experiment configuration: parsing, preset resolution and validation
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

An experiment is one JSON document:

    {"experiment": "theorem1",
     "preset": "canonical",
     "system": {"base": {"kind": "rotation", "alpha": "1/2"},
                "roof": {"starts": [0, 0.5], "values": [1, 1.618]}},
     "observable": {"preset": "indicator", "u": 0, "v": 0.5,
                    "center": true},
     "cocycle": {"preset": "signs"},
     "target": {"rectangles": [[0, 0.5, 0, 1]]},
     "base_set": [[0, 0.5]],
     "params": {"horizon": 1000},
     "sampling": {"count": 50, "seed": 7},
     "output": "out"}

A preset from presets.yml is merged under the document, params key by
key. Validation never raises; it returns every violated constraint.
"""
import copy
import json
import logging
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from .ergolab_base import (
    GOLDEN, BaseSet, IntervalExchange, Rotation, convergents
)
from .ergolab_cascades import StepFunction
from .ergolab_errors import ConfigurationError, ErgolabError
from .ergolab_flow import Roof, SpecialFlow, TargetSet
from .ergolab_observables import (
    constant, height, indicator, make_observable, mean, mean_center,
    sign_halves
)
from .ergolab_utils import log_message, read_presets_config
from .ergolab_zeros import threshold_target

__all__ = ['EXPERIMENTS', 'ExperimentConfig', 'parse_number',
           'build_base_map', 'load_config']


EXPERIMENTS = (
    'cascade-zeros', 'shneiberg-discrete', 'flow-zeros', 'theorem1',
    'denisova', 'induced', 'weiss', 'lemma-fuzz', 'wiener', 'phi-trace'
)
CASCADE_EXPERIMENTS = ('cascade-zeros', 'shneiberg-discrete', 'induced',
                       'weiss')
FLOW_EXPERIMENTS = ('flow-zeros', 'theorem1', 'denisova', 'wiener',
                    'phi-trace')
ZERO_MEAN_EXPERIMENTS = ('cascade-zeros', 'flow-zeros', 'theorem1',
                         'denisova')
SAMPLED_EXPERIMENTS = ('cascade-zeros', 'shneiberg-discrete', 'flow-zeros',
                       'theorem1', 'denisova', 'induced', 'weiss',
                       'lemma-fuzz', 'wiener')
REQUIRED_PARAMS = {
    'cascade-zeros': ('N',),
    'shneiberg-discrete': ('N',),
    'flow-zeros': ('horizon',),
    'theorem1': ('horizon',),
    'denisova': ('horizon', 'radii'),
    'induced': ('steps',),
    'weiss': ('n_list', 'eps'),
    'lemma-fuzz': ('trials',),
    'wiener': ('t_values',),
    'phi-trace': ('x', 't_max', 'dt'),
}
MEAN_WARN_TOL = 1e-10


def parse_number(value):
    """int and float pass through, 'p/q' strings become Fractions"""
    if isinstance(value, bool):
        raise ConfigurationError(f"{value!r} is not a number")
    if isinstance(value, (int, float, Fraction)):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError as err:
            raise ConfigurationError(
                f"{value!r} is not a number or fraction"
            ) from err
    raise ConfigurationError(f"{value!r} is not a number")


def _parse_alpha(alpha):
    if isinstance(alpha, dict):
        try:
            k = int(alpha['convergent'])
        except (KeyError, TypeError, ValueError) as err:
            raise ConfigurationError(
                "convergent alpha needs an integer 'convergent'"
            ) from err
        source = alpha.get('of', 'golden')
        source = GOLDEN if source == 'golden' else float(source)
        found = convergents(source, k)
        if len(found) < k or k < 1:
            raise ConfigurationError(f"alpha has no convergent {k}")
        return found[k - 1]
    return parse_number(alpha)


def build_base_map(spec):
    """Rotation or IntervalExchange from its JSON form"""
    if not isinstance(spec, dict):
        raise ConfigurationError("base map must be an object")
    kind = spec.get('kind', 'rotation')
    if kind == 'rotation':
        if 'alpha' not in spec:
            raise ConfigurationError("rotation without 'alpha'")
        return Rotation(_parse_alpha(spec['alpha']))
    if kind == 'iet':
        return IntervalExchange(
            tuple(float(parse_number(v)) for v in spec.get('lengths', ())),
            tuple(int(v) for v in spec.get('permutation', ()))
        )
    raise ConfigurationError(f"unknown base map kind {kind!r}")


def _build_roof(spec):
    if spec is None:
        return Roof.constant(1.0)
    if 'constant' in spec:
        return Roof.constant(float(parse_number(spec['constant'])))
    return Roof(
        tuple(float(parse_number(u)) for u in spec.get('starts', ())),
        tuple(float(parse_number(v)) for v in spec.get('values', ()))
    )


def _build_observable(flow, spec):
    preset = spec.get('preset')
    if preset == 'constant':
        f = constant(flow, float(spec.get('value', 1.0)))
    elif preset == 'height':
        f = height(flow)
    elif preset == 'sign_halves':
        f = sign_halves(flow)
    elif preset == 'indicator':
        f = indicator(flow, float(spec.get('u', 0.0)),
                      float(spec.get('v', 0.5)))
    elif preset is None:
        f = make_observable(
            flow,
            tuple(float(parse_number(u)) for u in spec.get('starts', ())),
            tuple(tuple(float(c) for c in cell)
                  for cell in spec.get('coefficients', ()))
        )
    else:
        raise ConfigurationError(f"unknown observable preset {preset!r}")
    if spec.get('center', False):
        f = mean_center(f, flow)
    if 'scale' in spec:
        scale = float(spec['scale'])
        f = f.with_coefficients(
            tuple(scale * c for c in cell) for cell in f.coefficients
        )
    return f


def _build_cocycle(spec):
    preset = spec.get('preset')
    if preset == 'signs':
        return StepFunction.signs(parse_number(spec.get('cut', '1/2')))
    if preset == 'indicator':
        return StepFunction.indicator(parse_number(spec.get('u', 0)),
                                      parse_number(spec.get('v', '1/2')))
    if preset is None:
        return StepFunction(
            tuple(parse_number(u) for u in spec.get('starts', ())),
            tuple(parse_number(v) for v in spec.get('values', ()))
        )
    raise ConfigurationError(f"unknown cocycle preset {preset!r}")


@dataclass
class ExperimentConfig:
    """One experiment, with its preset already merged in"""
    experiment: str
    system: dict = field(default_factory=dict)
    observable: dict = None
    cocycle: dict = None
    target: object = None
    base_set: list = None
    params: dict = field(default_factory=dict)
    sampling: dict = None
    output: str = 'ergolab-output'
    preset: str = None

    @classmethod
    def from_dict(cls, data, presets=None):
        """Config from a decoded JSON document"""
        if not isinstance(data, dict):
            raise ConfigurationError("configuration must be a JSON object")
        data = copy.deepcopy(data)
        name = data.get('preset')
        if name is not None:
            if presets is None:
                presets = read_presets_config()
            if name not in presets:
                raise ConfigurationError(f"unknown preset {name!r}")
            merged = copy.deepcopy(presets[name])
            merged.pop('name', None)
            params = merged.get('params', {})
            params.update(data.get('params', {}))
            merged.update(data)
            merged['params'] = params
            data = merged
        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigurationError(
                [f"unknown configuration key {key!r}" for key in unknown]
            )
        if 'experiment' not in data:
            raise ConfigurationError("configuration without 'experiment'")
        return cls(**data)

    def to_dict(self):
        """JSON echo; from_dict(to_dict()) gives an equal config"""
        return asdict(self)

    def with_overrides(self, output=None, seed=None):
        """Copy with --output-dir / --seed applied"""
        echo = self.to_dict()
        if output is not None:
            echo['output'] = output
        if seed is not None:
            echo['sampling'] = dict(echo.get('sampling') or {}, seed=seed)
        return ExperimentConfig(**echo)

    @property
    def seed(self):
        """Master seed of the sample streams"""
        return (self.sampling or {}).get('seed')

    @property
    def count(self):
        """Number of samples, 1 when not sampled"""
        return int((self.sampling or {}).get('count', 1))

    def param(self, key, fallback=None):
        """Numeric parameter with a fallback"""
        return self.params.get(key, fallback)

    def build_base_map(self):
        """Base map of the system"""
        return build_base_map(self.system.get('base'))

    def build_flow(self):
        """Special flow of the system"""
        return SpecialFlow(self.build_base_map(),
                           _build_roof(self.system.get('roof')))

    def build_observable(self, flow):
        """Observable on the flow"""
        if self.observable is None:
            raise ConfigurationError("experiment needs an observable")
        return _build_observable(flow, self.observable)

    def build_cocycle(self):
        """Step function cocycle of the cascade"""
        if self.cocycle is None:
            raise ConfigurationError("experiment needs a cocycle")
        return _build_cocycle(self.cocycle)

    def build_target(self, flow, f=None):
        """Target set: rectangles, 'all', or 'threshold' of f"""
        spec = self.target
        if spec is None or spec == 'all':
            return TargetSet.everything(flow)
        if spec == 'threshold' or (isinstance(spec, dict)
                                   and 'threshold' in spec):
            fraction = 0.5 if spec == 'threshold' else \
                float(spec['threshold'])
            return threshold_target(flow, f, fraction)
        return TargetSet(tuple(
            tuple(float(parse_number(c)) for c in rect)
            for rect in spec.get('rectangles', ())
        ))

    def build_base_set(self):
        """Base set of the induced cascade"""
        if self.base_set is None:
            return BaseSet.whole()
        return BaseSet(tuple(
            (parse_number(u), parse_number(v)) for u, v in self.base_set
        ))

    def validate(self):
        """Every violated constraint, an empty list for a valid config"""
        violations = []

        def collect(builder):
            try:
                return builder()
            except ConfigurationError as err:
                violations.extend(err.violations)
            except (ErgolabError, ValueError, TypeError, KeyError) as err:
                violations.append(str(err))
            return None

        if self.experiment not in EXPERIMENTS:
            return [f"unknown experiment {self.experiment!r}"]
        for key in REQUIRED_PARAMS[self.experiment]:
            if key not in self.params:
                violations.append(f"missing parameter {key!r}")
        if self.experiment in SAMPLED_EXPERIMENTS and self.seed is None \
                and 'x' not in self.params:
            violations.append("sampled experiment without a seed")
        if self.count < 1:
            violations.append("sampling count must be positive")

        if self.experiment in CASCADE_EXPERIMENTS:
            collect(self.build_base_map)
            g = collect(self.build_cocycle)
            if self.experiment == 'induced':
                collect(self.build_base_set)
            if g is not None and self.experiment == 'cascade-zeros':
                if not g.is_integer:
                    violations.append("cascade zeros need integer values")
                elif not g.has_zero_mean():
                    log_message(f"cocycle mean {g.mean()} is not zero",
                                level=logging.WARNING)
        elif self.experiment in FLOW_EXPERIMENTS:
            flow = collect(self.build_flow)
            f = None if flow is None else \
                collect(lambda: self.build_observable(flow))
            if f is not None and self.experiment in ZERO_MEAN_EXPERIMENTS:
                m = mean(f, flow)
                if abs(m) > MEAN_WARN_TOL:
                    log_message(f"observable mean {m:.3e} is not zero",
                                level=logging.WARNING)
            if flow is not None and (f is not None
                                     or self.target not in (None, 'all')):
                target = collect(lambda: self.build_target(flow, f))
                if target is not None:
                    violations.extend(target.violations(flow))
        return violations

    def check(self):
        """Raise ConfigurationError listing every violation"""
        violations = self.validate()
        if violations:
            raise ConfigurationError(violations)
        return self


def load_config(filename, presets=None):
    """ExperimentConfig from a JSON file"""
    with open(filename, encoding="utf-8") as fp:
        try:
            data = json.load(fp)
        except json.JSONDecodeError as err:
            raise ConfigurationError(
                f"{filename} is not valid JSON: {err}"
            ) from err
    return ExperimentConfig.from_dict(data, presets)
