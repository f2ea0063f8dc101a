# -*- coding: utf-8 -*-
"""
/***************************************************************************
 TemplateExperiment
                                 ergolab
 Class to be subclassed by each experiment
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
import os
import time
from multiprocessing.pool import ThreadPool
import numpy as np
from .ergolab_errors import ErgolabError
from .ergolab_utils import (
    default, log_message, report_error, write_csv, write_json
)

__all__ = ['TemplateExperiment', 'count_summary']


def count_summary(values):
    """min / median / max of a list of counts"""
    if not values:
        return {'min': None, 'median': None, 'max': None}
    return {'min': int(min(values)),
            'median': float(np.median(values)),
            'max': int(max(values))}


class TemplateExperiment:
    """
    Template class to be subclassed by each experiment.

    A subclass builds its system in setup(), lists its samples in points()
    and computes one sample in prep_sample(index, point). Samples run on a
    thread pool and are collected in index order.
    """
    name = None

    def __init__(self, config):
        self.config = config

    def display_error(self, error, code):
        """Log an error message with the traceback text"""
        msg = {
            1: "A sample of the experiment failed",
            2: "Every sample of the experiment failed, "
               "nothing to summarize",
        }
        log_message(f"{self.name}: {msg[code]}", level=logging.ERROR)
        report_error(error)

    def progress(self, value):
        """Progress message, in percent"""
        log_message(f"{self.name}: {value}%", level=logging.DEBUG)

    def setup(self):
        """Build the objects every sample needs"""

    def points(self):
        """One entry per sample"""
        return [None]

    def prep_sample(self, index, point):
        """Result dictionary of one sample, 'steps' counts its work"""
        raise NotImplementedError

    def summarize(self, results):
        """Aggregate summary over the samples"""
        done = [r for r in results if r['status'] == 'ok']
        return {'samples': len(results),
                'ok': len(done),
                'success_fraction': len(done) / len(results)
                if results else 0.0}

    def trace_rows(self, results):
        """{csv file name: (header, rows)}"""
        return {}

    def describe_system(self):
        """System description for the report"""
        return {}

    def _run_one(self, item):
        index, point = item
        try:
            result = self.prep_sample(index, point)
        except (ErgolabError, ValueError) as err:
            self.display_error(err, 1)
            result = {'status': 'error', 'error': str(err)}
        result['sample_id'] = index
        return result

    def run_samples(self, points):
        """Results of every sample, sorted by sample index"""
        items = list(enumerate(points))
        workers = min(default('workers'), len(items)) or 1
        pool = ThreadPool(processes=workers)
        try:
            results = list(pool.map(self._run_one, items))
        finally:
            pool.close()
        return sorted(results, key=lambda r: r['sample_id'])

    def run(self, write=True):
        """Execute the experiment, write report.json and traces"""
        from . import __version__
        started = time.perf_counter()
        self.progress(5)
        self.setup()
        points = self.points()
        self.progress(10)
        results = self.run_samples(points)
        self.progress(85)
        errors = sum(r['status'] == 'error' for r in results)
        if results and errors == len(results):
            self.display_error(f"{errors} failed samples", 2)
        report = {
            'experiment': self.name,
            'version': __version__,
            'config': self.config.to_dict(),
            'system': self.describe_system(),
            'results': results,
            'summary': self.summarize(results),
            'timing': {
                'wall_clock_seconds': time.perf_counter() - started,
                'steps': sum(r.get('steps', 0) for r in results),
            },
        }
        if write:
            self.write_report(report)
        self.progress(100)
        return report

    def write_report(self, report):
        """report.json plus one CSV per trace kind"""
        output = self.config.output
        os.makedirs(output, exist_ok=True)
        write_json(os.path.join(output, 'report.json'), report)
        for filename, (header, rows) in \
                self.trace_rows(report['results']).items():
            write_csv(os.path.join(output, filename), header, rows)
        log_message(f"{self.name}: report written to {output}")
