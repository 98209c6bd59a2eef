"""Special functions for the wave-front kernels and long-time forms.

Gamma and erfc are thin wrappers over the C library (``math``) with an
mpmath route for high precision.  The Wright function

    W_{g,d}(z) = sum_k z**k / (k! * Gamma(g*k + d)),   g > -1,

is summed directly.  For ``g < 0`` and large negative ``z`` the series is
strongly alternating, so the sum is carried out in mpmath with enough
guard digits to absorb the cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .errors import GammaOverflow, PoleAtNonpositiveInteger, SeriesNotConverged

__all__ = [
    "WrightParams",
    "gamma_fn",
    "erfc_fn",
    "gen_binomial",
    "wright_fn",
    "f_half",
]

_GAMMA_MAX = 171.0
_EPS = 1e-16
_MAX_TERMS = 2000
# W_{-b,d}(-z) ~ Y**(1/2-d) * exp(-Y) for z -> +inf; beyond this Y the value
# is below ~1e-78 and is returned as 0.0.
_NEGLIGIBLE_DECAY = 180.0


def _is_nonpositive_integer(x) -> bool:
    return x <= 0 and x == int(x)


def gamma_fn(x, high_precision: bool = False):
    """Euler Gamma.

    Raises :class:`PoleAtNonpositiveInteger` at the poles and
    :class:`GammaOverflow` above 171 in double precision.
    """
    if _is_nonpositive_integer(x):
        raise PoleAtNonpositiveInteger(f"Gamma has a pole at {x}")
    if high_precision:
        return mp.gamma(x)
    if x > _GAMMA_MAX:
        raise GammaOverflow(f"Gamma({x}) overflows double precision")
    if x < 0.5:
        # reflection keeps the small-argument branch explicit
        return math.pi / (math.sin(math.pi * x) * math.gamma(1.0 - x))
    return math.gamma(x)


def erfc_fn(x, high_precision: bool = False):
    if high_precision:
        return mp.erfc(x)
    return math.erfc(x)


def gen_binomial(alpha, n: int):
    """``prod_{j<n} (alpha - j) / (j + 1)``; exact for Fraction ``alpha``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    value = Fraction(1) if isinstance(alpha, Fraction) else 1.0
    for j in range(n):
        value = value * (alpha - j) / (j + 1)
    return value


@dataclass(frozen=True)
class WrightParams:
    gamma: float
    delta: float

    def __post_init__(self):
        if not self.gamma > -1:
            raise ValueError(f"Wright series needs gamma > -1, got {self.gamma}")


def _log_abs_rgamma(x: float) -> float:
    """log|1/Gamma(x)|; -inf at the poles."""
    if _is_nonpositive_integer(x):
        return -math.inf
    return -math.lgamma(x)


def _envelope(gamma: float, delta: float, k: int, log_z: float) -> float:
    # smooth bound on log|term_k|: the |sin| factor of the reflected
    # 1/Gamma is dropped so the envelope has no spurious dips near poles
    arg = gamma * k + delta
    if arg >= 0.5:
        rg = -math.lgamma(arg)
    else:
        rg = math.lgamma(1.0 - arg) - math.log(math.pi)
    return k * log_z - math.lgamma(k + 1.0) + rg


@lru_cache(maxsize=4096)
def _double_coefficients(gamma: float, delta: float) -> tuple:
    out = []
    for k in range(_MAX_TERMS):
        arg = gamma * k + delta
        if _is_nonpositive_integer(arg):
            out.append(0.0)
            continue
        lg = math.lgamma(k + 1.0) + math.lgamma(arg)
        if lg > 700.0:
            out.append(0.0 if k > 0 else math.inf)
            break
        sign = 1.0
        if arg < 0 and math.floor(arg) % 2 == 1:
            sign = -1.0
        out.append(sign * math.exp(-lg))
    return tuple(out)


def _decay_exponent(gamma: float, z: float) -> float:
    b = -gamma
    return (1.0 - b) * (b**b * (-z)) ** (1.0 / (1.0 - b))


def wright_fn(params: WrightParams, z, high_precision: bool | None = None):
    """Wright function ``W_{gamma,delta}(z)`` for real ``z``.

    Terms are summed until three consecutive nonzero terms fall below
    ``1e-16`` times the partial sum, once the terms are past their peak.
    Terms with ``gamma*k + delta`` a nonpositive integer vanish and are
    skipped.

    With ``high_precision=None`` the double-precision sum is tried first
    and redone in mpmath when the ratio between the largest term and the
    result shows that more than two digits cancelled (always the case
    for ``gamma < 0`` and ``z < -5``).
    """
    g, d = float(params.gamma), float(params.delta)
    z = float(z)
    if z == 0:
        if _is_nonpositive_integer(d) or d > _GAMMA_MAX:
            return 0.0
        return 1.0 / gamma_fn(d)
    if g < 0 and z < 0 and _decay_exponent(g, z) > _NEGLIGIBLE_DECAY:
        return 0.0
    log_z = math.log(abs(z))
    peak = max(_envelope(g, d, k, log_z) for k in range(_peak_scan(g, abs(z))))
    if high_precision is False:
        return _wright_double(g, d, z, log_z)
    if high_precision is None and not (g < 0 and z < -5):
        total = _wright_double(g, d, z, log_z)
        if total != 0.0 and peak - math.log(abs(total)) < _CANCEL_OK:
            return total
    # guard digits: cancellation from the peak term down to the result
    expected = -_decay_exponent(g, z) if (g < 0 and z < 0) else 0.0
    if g >= 0 and z < 0:
        expected = -abs(z) ** (1.0 / (1.0 + g))
    loss = max(peak - expected, 0.0)
    for _ in range(4):
        dps = 25 + int(loss / math.log(10.0))
        total = _wright_mp(g, d, z, log_z, dps)
        if total == 0:
            loss *= 2
            continue
        needed = peak - float(mp.log(abs(total)))
        if needed <= loss + 1.0:
            return float(total)
        loss = needed
    return float(total)


# log of the largest acceptable peak/result ratio in double precision
_CANCEL_OK = math.log(1e2)


def _peak_scan(g: float, az: float) -> int:
    # the envelope peaks near k ~ az**(1/(1+g)); scan a little beyond it
    return min(_MAX_TERMS, int(3 * az ** (1.0 / (1.0 + g))) + 10)


def _past_peak(g, d, k, log_z) -> bool:
    return _envelope(g, d, k + 1, log_z) < _envelope(g, d, k, log_z)


def _wright_double(g, d, z, log_z):
    coeffs = _double_coefficients(g, d)
    total = 0.0
    power = 1.0
    small = 0
    for k in range(_MAX_TERMS):
        if k >= len(coeffs):
            return total
        c = coeffs[k]
        if c == 0.0:
            power *= z
            continue
        term = c * power
        total += term
        power *= z
        if abs(term) < _EPS * abs(total) and _past_peak(g, d, k, log_z):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise SeriesNotConverged(f"W_{{{g},{d}}}({z}) did not converge in {_MAX_TERMS} terms")


_MP_MAX_TERMS = 20000
# relative size of the last kept term; the guard digits already absorb the
# cancellation, so this only has to beat double precision
_MP_STOP = 1e-25

_mp_cache: dict = {}


def _mp_coefficients(g: float, d: float, dps: int, n: int) -> list:
    # 1/(k! Gamma(g k + d)) at precision dps for k < n; None marks a vanishing term
    key = (g, d, dps)
    out = _mp_cache.setdefault(key, [])
    if len(out) >= n:
        return out
    with mp.workdps(dps):
        start = len(out)
        fact = mp.factorial(start)
        for k in range(start, n):
            if k > start:
                fact *= k
            if _is_nonpositive_integer(g * k + d):
                out.append(None)
            else:
                out.append(mp.rgamma(mp.mpf(g) * k + mp.mpf(d)) / fact)
    return out


def _wright_mp(g, d, z, log_z, dps):
    dps = 20 * (dps // 20 + 1)
    chunk = 256
    coeffs = _mp_coefficients(g, d, dps, chunk)
    with mp.workdps(dps):
        zm = mp.mpf(z)
        total = mp.mpf(0)
        power = mp.mpf(1)
        small = 0
        for k in range(_MP_MAX_TERMS):
            if k >= len(coeffs):
                coeffs = _mp_coefficients(g, d, dps, 2 * len(coeffs))
            c = coeffs[k]
            if c is None:
                power *= zm
                continue
            term = c * power
            total += term
            power *= zm
            if abs(term) < _MP_STOP * abs(total) and _past_peak(g, d, k, log_z):
                small += 1
                if small >= 3:
                    return +total
            else:
                small = 0
    raise SeriesNotConverged(f"W_{{{g},{d}}}({z}) did not converge in {_MP_MAX_TERMS} terms")


def f_half(z, nu, high_precision: bool | None = None):
    """Iterated-erfc family ``F_{1/2}(z, nu) = W_{-1/2, nu+1}(-z)``.

    It is the function for which ``t**nu * F_{1/2}(a/sqrt(t), nu)`` is the
    inverse Laplace transform of ``s**-(nu+1) * exp(-a*sqrt(s))``.
    """
    return wright_fn(WrightParams(-0.5, float(nu) + 1.0), -z, high_precision=high_precision)
