"""Formal series in the Laplace variable with exact rational exponents.

A :class:`FracSeries` is a finite sum ``sum c * s**e`` kept in strictly
decreasing order of ``e``.  Exponents are :class:`fractions.Fraction`
objects, so exponent bookkeeping (matching ``nu_i + lambda_j == lambda_k``
and the like) never goes through floating point.  Coefficients may be
``float``, ``Fraction`` or ``mpmath.mpf``; arithmetic keeps whatever type
the inputs carry.

Every series may carry a *truncation floor*: terms with exponent strictly
below it are discarded, and the ``truncated`` flag records that something
was thrown away.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Tuple

from . import _numeric
from .errors import EvalAtZero, NonDominantLeadingTerm

__all__ = [
    "FracSeries",
    "as_fraction",
    "binomial_fraction",
    "series_add",
    "series_mul",
    "series_binomial_power",
    "series_sqrt_binomial",
    "series_eval",
]

Term = Tuple[object, Fraction]


def as_fraction(value) -> Fraction:
    """Exact rational from an int, Fraction, string or (decimal-literal) float."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # repr gives the shortest round-trip literal, so 0.75 -> 3/4 exactly
        return Fraction(repr(value))
    return Fraction(value)


def _max_floor(a: Optional[Fraction], b: Optional[Fraction]) -> Optional[Fraction]:
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


class FracSeries:
    """Immutable finite sum of ``coefficient * s**exponent`` terms."""

    __slots__ = ("_terms", "_floor", "_truncated")

    def __init__(self, terms: Iterable[Term] = (), floor=None, truncated: bool = False):
        floor = None if floor is None else as_fraction(floor)
        merged: dict = {}
        for coeff, exponent in terms:
            exponent = as_fraction(exponent)
            if floor is not None and exponent < floor:
                if coeff != 0:
                    truncated = True
                continue
            merged[exponent] = merged[exponent] + coeff if exponent in merged else coeff
        self._terms = tuple(
            (merged[e], e) for e in sorted(merged, reverse=True) if merged[e] != 0
        )
        self._floor = floor
        self._truncated = bool(truncated)

    # -- basic protocol ---------------------------------------------------
    @property
    def terms(self) -> Tuple[Term, ...]:
        return self._terms

    @property
    def floor(self) -> Optional[Fraction]:
        return self._floor

    @property
    def truncated(self) -> bool:
        return self._truncated

    @property
    def exponents(self) -> Tuple[Fraction, ...]:
        return tuple(e for _, e in self._terms)

    def __iter__(self) -> Iterator[Term]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, exponent) -> object:
        exponent = as_fraction(exponent)
        for c, e in self._terms:
            if e == exponent:
                return c
        return 0

    def leading(self) -> Term:
        if not self._terms:
            raise ValueError("empty series has no leading term")
        return self._terms[0]

    def with_floor(self, floor) -> FracSeries:
        floor = _max_floor(self._floor, None if floor is None else as_fraction(floor))
        return FracSeries(self._terms, floor, self._truncated)

    def select(self, predicate) -> FracSeries:
        """Sub-series of the terms whose exponent satisfies ``predicate``."""
        return FracSeries(
            [(c, e) for c, e in self._terms if predicate(e)], self._floor, self._truncated
        )

    def map_coefficients(self, func) -> FracSeries:
        return FracSeries([(func(c), e) for c, e in self._terms], self._floor, self._truncated)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, FracSeries):
            other = FracSeries([(other, Fraction(0))])
        return series_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> FracSeries:
        return self.map_coefficients(lambda c: -c)

    def __sub__(self, other):
        if not isinstance(other, FracSeries):
            other = FracSeries([(other, Fraction(0))])
        return series_add(self, -other)

    def __mul__(self, other):
        if isinstance(other, FracSeries):
            return series_mul(self, other)
        return self.map_coefficients(lambda c: c * other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FracSeries):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __call__(self, s):
        return series_eval(self, s)

    def __repr__(self) -> str:
        if not self._terms:
            body = "0"
        else:
            body = " + ".join(f"{c!r}*s^({e})" for c, e in self._terms)
        flag = ", truncated" if self._truncated else ""
        return f"FracSeries({body}; floor={self._floor}{flag})"


def series_add(a: FracSeries, b: FracSeries) -> FracSeries:
    """Termwise sum, re-truncated at the larger of the two floors."""
    floor = _max_floor(a.floor, b.floor)
    return FracSeries(a.terms + b.terms, floor, a.truncated or b.truncated)


def series_mul(a: FracSeries, b: FracSeries) -> FracSeries:
    """Cauchy product truncated at the larger of the two floors."""
    floor = _max_floor(a.floor, b.floor)
    products = []
    truncated = a.truncated or b.truncated
    for ca, ea in a.terms:
        for cb, eb in b.terms:
            e = ea + eb
            if floor is not None and e < floor:
                truncated = True
                continue
            products.append((ca * cb, e))
    return FracSeries(products, floor, truncated)


def binomial_fraction(alpha: Fraction, n: int) -> Fraction:
    """Generalized binomial coefficient ``binom(alpha, n)``, exactly."""
    value = Fraction(1)
    for j in range(n):
        value = value * (alpha - j) / (j + 1)
    return value


def _scaled(coeff_like, rational: Fraction):
    """``rational`` expressed in the coefficient type of ``coeff_like``."""
    if isinstance(coeff_like, Fraction) or isinstance(coeff_like, int):
        return rational
    if _numeric.is_mp(coeff_like):
        return _numeric.num(rational, high=True)
    return float(rational)


def series_binomial_power(
    a: FracSeries, power, n_max: Optional[int] = None, floor=None
) -> FracSeries:
    """``a ** power`` via the binomial series about the leading term.

    Writes ``a = L * (1 + u)`` with ``L`` the leading term and returns
    ``L**power * sum_{n<=n_max} binom(power, n) * u**n``.  When ``n_max`` is
    omitted it is chosen so that every power of ``u`` with an exponent
    above the floor is included.
    """
    power = as_fraction(power)
    floor = _max_floor(a.floor, None if floor is None else as_fraction(floor))
    if not a:
        raise NonDominantLeadingTerm("cannot expand an empty series")
    lead_c, lead_e = a.leading()
    if not lead_c > 0:
        raise NonDominantLeadingTerm(f"leading coefficient {lead_c!r} is not positive")
    u = FracSeries([(c / lead_c, e - lead_e) for c, e in a.terms[1:]], None, a.truncated)
    out_e = lead_e * power
    if n_max is None:
        if floor is None:
            raise ValueError("either n_max or a truncation floor is required")
        if not u:
            n_max = 0
        else:
            gap = -u.leading()[1]
            n_max = max(0, math.floor((out_e - floor) / gap))
    # u**n is tracked relative to the output exponent so the floor can prune early
    rel_floor = None if floor is None else floor - out_e
    u = u.with_floor(rel_floor)
    one = _scaled(lead_c, Fraction(1))
    total = FracSeries([(one, Fraction(0))], rel_floor)
    u_pow = total
    for n in range(1, n_max + 1):
        u_pow = series_mul(u_pow, u)
        if not u_pow:
            break
        total = series_add(total, u_pow * _scaled(lead_c, binomial_fraction(power, n)))
    lead_value = _numeric.real_power(lead_c, power)
    return FracSeries(
        [(lead_value * c, e + out_e) for c, e in total.terms], floor, total.truncated or a.truncated
    )


def series_sqrt_binomial(a: FracSeries, n_max: Optional[int] = None, floor=None) -> FracSeries:
    """Square root of ``a`` by the binomial series ``sum binom(1/2, n) u**n``."""
    return series_binomial_power(a, Fraction(1, 2), n_max=n_max, floor=floor)


def series_eval(a: FracSeries, s) -> complex:
    """Evaluate ``sum c * s**e`` with principal-branch fractional powers."""
    if s == 0:
        if any(e < 0 for e in a.exponents):
            raise EvalAtZero("series has negative exponents")
        return a.coeff(0) + 0j if not _numeric.is_mp(s) else a.coeff(0)
    if not _numeric.is_mp(s):
        s = complex(s)
    total = 0
    for c, e in a.terms:
        total += c * _numeric.cpow(s, e)
    return total
