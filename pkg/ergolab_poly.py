# -*- coding: utf-8 -*-
"""
/***************************************************************************
 ergolab_poly
                                 ergolab
 Low degree polynomial helpers: evaluation, real root isolation, |p|
 integrals and compensated accumulation
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

Coefficients are always given in ascending order, p(x) = sum c[k] x**k,
the convention of numpy.polynomial.polynomial.
"""
import math
import numpy as np
from numpy.polynomial import polynomial as npoly
from numpy.polynomial import Polynomial
from scipy.optimize import bisect

__all__ = ['MAX_DEGREE', 'horner', 'trim', 'shift', 'antiderivative',
           'derivative', 'descartes_bound', 'real_roots', 'abs_integral',
           'max_abs', 'CompensatedSum']


MAX_DEGREE = 6
ROOT_TOL = 1e-12
EPS = float(np.finfo(float).eps)


def horner(coeffs, x):
    """Evaluate ascending coefficients at a scalar"""
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def trim(coeffs):
    """Drop exactly-zero leading terms, keep at least the constant"""
    coeffs = [float(c) for c in coeffs]
    while len(coeffs) > 1 and coeffs[-1] == 0.0:
        coeffs.pop()
    return tuple(coeffs) if coeffs else (0.0,)


def shift(coeffs, origin):
    """Coefficients of tau -> p(origin + tau)"""
    composed = Polynomial(coeffs)(Polynomial([origin, 1.0]))
    return trim(composed.coef)


def antiderivative(coeffs):
    """Antiderivative vanishing at 0"""
    return trim(npoly.polyint(coeffs))


def derivative(coeffs):
    """First derivative"""
    if len(coeffs) < 2:
        return (0.0,)
    return trim(npoly.polyder(coeffs))


def _sign_variations(values):
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def descartes_bound(coeffs, lo, hi):
    """
    Descartes bound on the number of roots in (lo, hi).

    The interval is sent to (0, inf) by x = lo + (hi - lo) y / (1 + y);
    the sign variations of (1 + y)**d p(x(y)) bound the root count from
    above and have its parity.
    """
    coeffs = trim(coeffs)
    degree = len(coeffs) - 1
    if degree == 0:
        return 0
    scaled = Polynomial(coeffs)(Polynomial([lo, hi - lo])).coef
    scaled = np.concatenate([scaled, np.zeros(degree + 1 - len(scaled))])
    y = Polynomial([0.0, 1.0])
    one_plus_y = Polynomial([1.0, 1.0])
    transformed = Polynomial([0.0])
    for k, c in enumerate(scaled):
        if c != 0.0:
            transformed = transformed + c * y ** k * one_plus_y ** (degree - k)
    return _sign_variations(transformed.coef)


def _noisy_sign(coeffs, x):
    # zero when |p(x)| is within the rounding error of Horner's rule
    value = horner(coeffs, x)
    noise = 4 * len(coeffs) * EPS * horner([abs(c) for c in coeffs], abs(x))
    if abs(value) <= noise:
        return 0
    return 1 if value > 0 else -1


def real_roots(coeffs, lo, hi, tol=ROOT_TOL):
    """
    Sign-change roots of p inside the open interval (lo, hi), ascending.

    Roots are isolated between the extrema of p (themselves the sign-change
    roots of p', found recursively) and refined by bisection to tol.
    Even multiplicity roots do not change sign and are not reported.
    """
    coeffs = trim(coeffs)
    degree = len(coeffs) - 1
    if degree > MAX_DEGREE:
        raise ValueError(f"degree {degree} above {MAX_DEGREE}")
    if degree == 0 or not lo < hi:
        return []
    if degree == 1:
        root = -coeffs[0] / coeffs[1]
        return [root] if lo < root < hi else []

    variations = descartes_bound(coeffs, lo, hi)
    if variations == 0:
        return []

    def p(x):
        return horner(coeffs, x)

    if variations == 1:
        p_lo, p_hi = p(lo), p(hi)
        if p_lo * p_hi < 0:
            return [bisect(p, lo, hi, xtol=tol)]
        return []

    knots = [lo] + real_roots(derivative(coeffs), lo, hi, tol) + [hi]
    signs = [_noisy_sign(coeffs, u) for u in knots]
    roots = []
    last = 0
    for i, (u, v) in enumerate(zip(knots, knots[1:])):
        if signs[i]:
            last = signs[i]
        if signs[i] * signs[i + 1] < 0:
            roots.append(bisect(p, u, v, xtol=tol))
        elif 0 < i + 1 < len(knots) - 1 and not signs[i + 1]:
            # p vanishes at an extremum: a root only if p changes sign
            after = next((s for s in signs[i + 2:] if s), 0)
            if last * after < 0:
                roots.append(v)
    return roots


def abs_integral(coeffs, lo, hi):
    """Integral of |p| over [lo, hi], split at the sign changes of p"""
    if not lo < hi:
        return 0.0
    big_p = antiderivative(coeffs)
    knots = [lo] + real_roots(coeffs, lo, hi) + [hi]
    return math.fsum(
        abs(horner(big_p, v) - horner(big_p, u))
        for u, v in zip(knots, knots[1:])
    )


def max_abs(coeffs, lo, hi):
    """Maximum of |p| over [lo, hi]"""
    points = [lo, hi] + real_roots(derivative(coeffs), lo, hi)
    return max(abs(horner(coeffs, x)) for x in points)


class CompensatedSum:
    """Neumaier running sum"""

    __slots__ = ('total', 'compensation')

    def __init__(self, start=0.0):
        self.total = float(start)
        self.compensation = 0.0

    def add(self, value):
        """Accumulate one term"""
        total = self.total + value
        if abs(self.total) >= abs(value):
            self.compensation += (self.total - total) + value
        else:
            self.compensation += (value - total) + self.total
        self.total = total

    @property
    def value(self):
        """Compensated value of the sum"""
        return self.total + self.compensation
