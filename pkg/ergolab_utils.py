# -*- coding: utf-8 -*-
"""
/***************************************************************************
 ergolab_utils
                                 ergolab
 Utilities function used across the library
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
import csv
import json
import logging
import os
from configparser import ConfigParser
from functools import lru_cache
import numpy as np
import yaml

__all__ = ['log_message', 'report_error', 'load_defaults', 'default',
           'read_presets_config', 'sample_rng', 'uniform_samples',
           'write_csv', 'write_json', 'dump_json']


LOGGER = logging.getLogger('ergolab')

_DEFAULTS = {
    'zero_tol': '1e-9',
    'match_tol': '1e-9',
    'grid_resolution': '64',
    'block_size': '65536',
    'max_steps': '1000000',
    'workers': '4',
}

_PRESET_KEYS = ('name', 'experiment', 'system')


def log_message(message, level=logging.INFO):
    """Send message to the ergolab log"""
    LOGGER.log(level, message)


def report_error(error):
    """Log an error report the same way for every caller"""
    log_message(f"ergolab error report :\n {error}", level=logging.WARNING)


def _package_file(name):
    return os.path.join(os.path.dirname(os.path.abspath(__file__)), name)


@lru_cache(maxsize=1)
def load_defaults():
    """Load numeric defaults from config.ini"""
    config = ConfigParser()
    config.read_dict({'defaults': _DEFAULTS})
    config.read(_package_file('config.ini'), encoding="utf-8")
    section = config['defaults']
    return {
        'zero_tol': section.getfloat('zero_tol'),
        'match_tol': section.getfloat('match_tol'),
        'grid_resolution': section.getint('grid_resolution'),
        'block_size': section.getint('block_size'),
        'max_steps': section.getint('max_steps'),
        'workers': section.getint('workers'),
    }


def default(key):
    """Single default value from config.ini"""
    return load_defaults()[key]


def read_presets_config(presets_file=None):
    """Read named experiment presets from file"""
    if presets_file is None:
        presets_file = _package_file('presets.yml')

    with open(presets_file, encoding="utf-8") as f:
        cfg = yaml.safe_load(f)
    try:
        assert isinstance(cfg, dict), "presets file must be a mapping"
        assert "presets" in cfg, "missing 'presets' key"
        assert isinstance(cfg["presets"], list), "'presets' must be a list"
        for preset in cfg["presets"]:
            assert isinstance(preset, dict), "preset must be a mapping"
            for key in _PRESET_KEYS:
                assert key in preset, f"preset without '{key}'"
    except AssertionError as err:
        raise ValueError(
            f"Invalid presets file {presets_file}: {err}"
        ) from err

    return {preset["name"]: preset for preset in cfg["presets"]}


def sample_rng(master_seed, sample_index):
    """
    Independent random stream of one sample.

    The pair (master_seed, sample_index) is hashed by numpy's SeedSequence,
    so a sample draws the same numbers whatever worker runs it.
    """
    return np.random.default_rng([int(master_seed), int(sample_index)])


def uniform_samples(master_seed, count, low=0.0, high=1.0):
    """One uniform draw in [low, high) per sample stream"""
    return [
        float(sample_rng(master_seed, i).uniform(low, high))
        for i in range(count)
    ]


def write_csv(filename, header, rows):
    """Write rows with a header row, newline terminated"""
    with open(filename, 'w', newline='', encoding="utf-8") as out_file:
        writer = csv.writer(out_file, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)


def dump_json(data):
    """Serialize with stable key order"""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


def write_json(filename, data):
    """Write a UTF-8 JSON document with stable key order"""
    with open(filename, 'w', encoding="utf-8") as fp:
        fp.write(dump_json(data))
        fp.write('\n')
