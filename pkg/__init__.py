# -*- coding: utf-8 -*-
"""
 ergolab: recurrence and integral zeros of special flows and cylindrical
 cascades.
"""

__version__ = '1.0.0'


def main(argv=None):
    """
    :param argv: command line arguments, sys.argv[1:] when None
    :type argv: list
    """
    #
    from .ergolab_cli import main as cli_main

    return cli_main(argv)
