# -*- coding: utf-8 -*-
"""
/***************************************************************************
 ergolab
                                 ergolab
 Command line: run and validate experiment configurations
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

    ergolab run <config.json> [--output-dir DIR] [--seed N]
    ergolab validate <config.json>

Exit status 0 on success, 1 when the experiment fails at run time, 2 for
an invalid configuration.
"""
import argparse
import logging
import sys
from .ergolab_config import load_config
from .ergolab_errors import ConfigurationError, ErgolabError
from .ergolab_experiments import run
from .ergolab_utils import LOGGER, dump_json, report_error

__all__ = ['ErgolabCli', 'main']


EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2


class ErgolabCli:
    """Command line implementation"""

    def __init__(self):
        self.parser = argparse.ArgumentParser(
            prog='ergolab',
            description="Recurrence and integral zero experiments on "
                        "special flows and cylindrical cascades",
        )
        self.parser.add_argument('--verbose', '-v', action='store_true',
                                 help="log progress messages")
        self.commands = self.parser.add_subparsers(dest='command',
                                                   required=True)
        self.add_action('run', self.run_experiment,
                        "execute an experiment and write its reports",
                        overrides=True)
        self.add_action('validate', self.validate_config,
                        "list every violated constraint of a config")

    def add_action(self, name, callback, help_text, overrides=False):
        """Register one sub command"""
        command = self.commands.add_parser(name, help=help_text)
        command.add_argument('config', help="experiment JSON file")
        if overrides:
            command.add_argument('--output-dir', dest='output_dir',
                                 help="directory for report.json and CSVs")
            command.add_argument('--seed', type=int,
                                 help="master seed of the sample streams")
        command.set_defaults(callback=callback)
        return command

    @staticmethod
    def run_experiment(args):
        """Execute the experiment named in the config"""
        config = load_config(args.config).with_overrides(
            output=args.output_dir, seed=args.seed
        )
        report = run(config)
        print(dump_json(report['summary']))
        return EXIT_OK

    @staticmethod
    def validate_config(args):
        """Print violations, one per line"""
        violations = load_config(args.config).validate()
        for violation in violations:
            print(violation)
        return EXIT_INVALID if violations else EXIT_OK

    def __call__(self, argv=None):
        args = self.parser.parse_args(argv)
        logging.basicConfig(
            level=logging.INFO if args.verbose else logging.WARNING,
            format="%(levelname)s %(name)s: %(message)s",
        )
        LOGGER.setLevel(logging.DEBUG if args.verbose else logging.WARNING)
        try:
            return args.callback(args)
        except ConfigurationError as err:
            for violation in err.violations:
                print(violation, file=sys.stderr)
            return EXIT_INVALID
        except (ErgolabError, OSError) as err:
            report_error(err)
            return EXIT_FAILURE


def main(argv=None):
    """Console script entry point"""
    return ErgolabCli()(argv)


if __name__ == '__main__':
    sys.exit(main())
