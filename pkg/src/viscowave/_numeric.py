"""Precision plumbing: one code path for double and mpmath arithmetic."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import mpmath as mp

#: Working precision (decimal digits) of the high-precision mode.
HIGH_DPS = 50

_MP_TYPES = (mp.mpf, mp.mpc)


def is_mp(value) -> bool:
    return isinstance(value, _MP_TYPES)


def num(value, high: bool = False):
    """Convert a real parameter to the coefficient type of the chosen mode."""
    if high:
        if isinstance(value, Fraction):
            return mp.mpf(value.numerator) / value.denominator
        return mp.mpf(value)
    return float(value)


def sqrt(value):
    if is_mp(value):
        return mp.sqrt(value)
    if isinstance(value, Fraction):
        n, d = value.numerator, value.denominator
        if n >= 0:
            rn, rd = math.isqrt(n), math.isqrt(d)
            if rn * rn == n and rd * rd == d:
                return Fraction(rn, rd)
        return math.sqrt(value)
    if isinstance(value, complex):
        return cmath.sqrt(value)
    return math.sqrt(value)


def real_power(value, exponent: Fraction):
    """``value ** exponent`` for a positive real coefficient."""
    if exponent.denominator == 1:
        return value ** exponent.numerator
    if exponent == Fraction(1, 2):
        return sqrt(value)
    if exponent == Fraction(-1, 2):
        return 1 / sqrt(value)
    if is_mp(value):
        return mp.power(value, mp.mpf(exponent.numerator) / exponent.denominator)
    return float(value) ** float(exponent)


def cpow(s, exponent: Fraction):
    """Principal-branch ``s ** exponent`` for complex (or mpmath) ``s``."""
    if exponent.denominator == 1:
        return s ** exponent.numerator
    if is_mp(s):
        return mp.power(s, mp.mpf(exponent.numerator) / exponent.denominator)
    if exponent.denominator == 2:
        return cmath.sqrt(s) ** exponent.numerator
    return complex(s) ** float(exponent)


def cexp(z):
    return mp.exp(z) if is_mp(z) else cmath.exp(z)


def fsum(values, high: bool = False):
    values = list(values)
    if high or any(is_mp(v) for v in values):
        return mp.fsum(values)
    return math.fsum(values)
