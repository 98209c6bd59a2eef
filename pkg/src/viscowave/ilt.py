"""Numerical inverse Laplace transform.

Two unrelated methods are available so that neither is only ever checked
against itself:

* fixed Talbot (Abate & Valko 2004): trapezoidal rule on a deformed
  Bromwich contour; needs the transform to be analytic off the
  non-positive real axis.
* Gaver-Stehfest: a weighted sum of samples on the positive real axis.

A third rule, de Hoog's accelerated Fourier series on a vertical Bromwich
line, is taken from mpmath.  It is needed for transforms such as
``exp(-x * s**(3/4))`` that grow along the negative real axis fast enough
to wreck the Talbot contour at small ``t``.

Both run either in double precision or in mpmath.  The high-precision
Talbot rule uses as many decimal digits as contour nodes, which is what
the method needs to deliver its nominal accuracy.

Transforms with a known delay ``exp(-s*T) * g(s)`` (a sharp wave front at
``t = T``) should be passed as ``g`` together with ``delay=T``: the shift
theorem then gives the inverse exactly as zero before the front and as
``g``'s inverse at ``t - T`` after it.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

import mpmath as mp

from .errors import NonPositiveTime, NumericalBreakdown
from .models import ModelSpec, mu_eval

__all__ = ["Method", "Precision", "ILTConfig", "invert", "invert_response", "response_transform"]


class Method(enum.Enum):
    TALBOT = "talbot"
    STEHFEST = "stehfest"
    DEHOOG = "dehoog"


class Precision(enum.Enum):
    DOUBLE = "double"
    HIGH = "high"


_DEFAULT_NODES = {Method.TALBOT: 64, Method.STEHFEST: 16, Method.DEHOOG: 40}
_STEHFEST_DOUBLE_MAX = 20


@dataclass(frozen=True)
class ILTConfig:
    method: Method = Method.TALBOT
    node_count: Optional[int] = None
    precision: Precision = Precision.HIGH

    def __post_init__(self):
        method = Method(self.method)
        precision = Precision(self.precision)
        object.__setattr__(self, "method", method)
        object.__setattr__(self, "precision", precision)
        n = _DEFAULT_NODES[method] if self.node_count is None else int(self.node_count)
        object.__setattr__(self, "node_count", n)
        if n < 2:
            raise ValueError("node_count must be at least 2")
        if method is Method.DEHOOG and precision is Precision.DOUBLE:
            raise ValueError("the de Hoog rule is only available in high precision")
        if method is Method.STEHFEST:
            if n % 2:
                raise ValueError("Stehfest order must be even")
            if precision is Precision.DOUBLE and n > _STEHFEST_DOUBLE_MAX:
                raise ValueError(f"Stehfest order above {_STEHFEST_DOUBLE_MAX} is unstable in double precision")

    @property
    def dps(self) -> int:
        if self.method is Method.TALBOT:
            return max(30, self.node_count + 10)
        if self.method is Method.DEHOOG:
            return max(30, int(1.4 * self.node_count) + 10)
        return max(30, int(2.2 * self.node_count) + 10)


def _finite(value) -> float:
    out = float(mp.re(value)) if isinstance(value, (mp.mpf, mp.mpc)) else float(value.real if isinstance(value, complex) else value)
    if not math.isfinite(out):
        raise NumericalBreakdown(f"inversion produced a non-finite value ({out})")
    return out


def _talbot_double(f, t, M):
    r = 2.0 * M / (5.0 * t)
    total = 0.5 * (f(complex(r)) * math.exp(r * t)).real
    for k in range(1, M):
        theta = k * math.pi / M
        cot = 1.0 / math.tan(theta)
        s = complex(r * theta * cot, r * theta)
        sigma = theta + (theta * cot - 1.0) * cot
        total += (cmath.exp(t * s) * f(s) * complex(1.0, sigma)).real
    return r / M * total


def _talbot_mp(f, t, M, dps):
    with mp.workdps(dps):
        t = mp.mpf(t)
        r = mp.mpf(2 * M) / (5 * t)
        total = mp.re(f(mp.mpc(r)) * mp.exp(r * t)) / 2
        for k in range(1, M):
            theta = k * mp.pi / M
            cot = mp.cot(theta)
            s = mp.mpc(r * theta * cot, r * theta)
            sigma = theta + (theta * cot - 1) * cot
            total += mp.re(mp.exp(t * s) * f(s) * mp.mpc(1, sigma))
        return r / M * total


@lru_cache(maxsize=64)
def stehfest_weights(N: int) -> tuple:
    """Exact Gaver-Stehfest weights ``V_1 .. V_N`` as fractions."""
    half = N // 2
    weights = []
    for k in range(1, N + 1):
        acc = Fraction(0)
        for j in range((k + 1) // 2, min(k, half) + 1):
            acc += Fraction(
                j**half * math.factorial(2 * j),
                math.factorial(half - j)
                * math.factorial(j)
                * math.factorial(j - 1)
                * math.factorial(k - j)
                * math.factorial(2 * j - k),
            )
        weights.append((-1) ** (k + half) * acc)
    return tuple(weights)


def _stehfest(f, t, N, high, dps):
    weights = stehfest_weights(N)
    if high:
        with mp.workdps(dps):
            a = mp.log(2) / mp.mpf(t)
            total = mp.fsum(mp.mpf(w.numerator) / w.denominator * mp.re(f(mp.mpf(k) * a))
                            for k, w in enumerate(weights, start=1))
            return a * total
    a = math.log(2.0) / t
    terms = []
    for k, w in enumerate(weights, start=1):
        v = f(k * a)
        terms.append(float(w) * (v.real if isinstance(v, complex) else float(v)))
    return a * math.fsum(terms)


def invert(f: Callable, t: float, cfg: Optional[ILTConfig] = None, delay: float = 0.0) -> float:
    """Time-domain value at ``t`` of the transform ``exp(-s*delay) * f(s)``.

    ``f`` receives ``complex`` arguments in double precision and mpmath
    numbers in high precision (real ones for Stehfest).
    """
    cfg = cfg or ILTConfig()
    if not t > 0:
        raise NonPositiveTime(f"inversion needs t > 0, got {t}")
    if delay:
        if t < delay:
            return 0.0
        t = t - delay
        if not t > 0:
            raise NonPositiveTime("evaluation point coincides with the front")
    high = cfg.precision is Precision.HIGH
    try:
        if cfg.method is Method.TALBOT:
            if high:
                value = _talbot_mp(f, t, cfg.node_count, cfg.dps)
            else:
                value = _talbot_double(f, t, cfg.node_count)
        elif cfg.method is Method.DEHOOG:
            with mp.workdps(cfg.dps):
                value = mp.invertlaplace(f, t, method="dehoog", degree=cfg.node_count)
        else:
            value = _stehfest(f, t, cfg.node_count, high, cfg.dps)
    except (OverflowError, ZeroDivisionError) as exc:
        raise NumericalBreakdown(f"transform evaluation failed: {exc}") from exc
    return _finite(value)


def response_transform(model: ModelSpec, x: float) -> Callable:
    """``s -> (1/s) exp(-x (mu(s) - s/c))``: the step response with the front delay removed."""
    slowness = model.front_slowness

    def g(s):
        exponent = -x * (mu_eval(model, s) - slowness * s)
        if isinstance(exponent, (mp.mpf, mp.mpc)):
            return mp.exp(exponent) / s
        return cmath.exp(exponent) / s

    return g


def invert_response(model: ModelSpec, t: float, x: float, cfg: Optional[ILTConfig] = None) -> float:
    """Step response ``r(t, x)``: inverse of ``(1/s) exp(-x mu(s))``."""
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0:
        return invert(lambda s: 1 / s, t, cfg)
    return invert(response_transform(model, x), t, cfg, delay=x * model.front_slowness)
