# -*- coding: utf-8 -*-
"""
/***************************************************************************
 ergolab_errors
                                 ergolab
 Exceptions raised by the library
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
import json

__all__ = ['ErgolabError', 'DomainError', 'ConfigurationError',
           'PreconditionError', 'HorizonExhausted',
           'IdenticallyZeroObservable', 'FiberOverflowError',
           'PairNotFound', 'LemmaViolation']


class ErgolabError(Exception):
    """Base class of every error raised by ergolab"""


class DomainError(ErgolabError, ValueError):
    """Argument outside the domain of an operation"""


class ConfigurationError(ErgolabError, ValueError):
    """Invalid system description, collects every violated constraint"""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class PreconditionError(ErgolabError):
    """Hypothesis of the underlying recurrence statement does not hold"""


class HorizonExhausted(ErgolabError):
    """No first return was observed within the allowed number of steps"""

    def __init__(self, steps, position=None):
        self.steps = steps
        self.position = position
        super().__init__(f"horizon exhausted after {steps} steps")


class IdenticallyZeroObservable(ErgolabError):
    """Every time is a zero of the trajectory integral"""

    def __init__(self):
        super().__init__(
            "identically zero observable: every t is an integral zero"
        )


class FiberOverflowError(ErgolabError, OverflowError):
    """Integer fiber coordinate left the signed 64-bit range"""


class PairNotFound(ErgolabError):
    """Joint pair scan finished without a match"""

    def __init__(self, scanned, in_ab, candidates):
        self.scanned = scanned
        self.in_ab = in_ab
        self.candidates = candidates
        super().__init__(
            f"no matching pair: scanned {scanned} grid points, "
            f"{in_ab} in A_b, {candidates} root candidates"
        )


class LemmaViolation(ErgolabError, AssertionError):
    """Image measure exceeded the |f| integral beyond tolerance"""

    def __init__(self, counterexample):
        self.counterexample = counterexample
        super().__init__(
            "image measure bound violated: "
            + json.dumps(counterexample, sort_keys=True)
        )
