"""Long-time (small-``s``) approximations of the step response.

Each family keeps only the leading small-``s`` behaviour of ``mu(s)``:

* Maxwell: ``mu ~ sqrt(rho J1) s**(1/2)`` and an erfc profile;
* fractional Maxwell: ``mu ~ sqrt(rho/b1) s**(1 - alpha/2)`` and a Wright
  profile ``W_{-beta,1}(-a x / t**beta)``;
* Voigt: Jeffreys' saddle-point erf profile;
* fractional Voigt: a half-height step at ``x sqrt(rho/(2m))``.

A Voigt-family model with ``m = 0`` has no elastic plateau; its leading
term is then of the fractional-Maxwell type and the Wright profile is used.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import _numeric
from .models import Family, ModelSpec, mu_leading_zero
from .specfun import WrightParams, erfc_fn, wright_fn

__all__ = ["LongTimeKind", "LongTimeForm", "longtime_form", "longtime_eval", "longtime_transform"]


class LongTimeKind(enum.Enum):
    ERFC = "erfc"
    WRIGHT_LT = "wright"
    JEFFREYS_ERF = "jeffreys_erf"
    HEAVISIDE_HALF = "heaviside_half"


@dataclass(frozen=True)
class LongTimeForm:
    """``scale`` multiplies ``x`` in every kind; ``beta`` is the Wright order."""

    kind: LongTimeKind
    scale: float
    beta: Optional[Fraction] = None
    tau_eps: Optional[float] = None


def longtime_form(model: ModelSpec) -> LongTimeForm:
    voigt_like = not model.family.maxwell_like
    if voigt_like and model.m > 0:
        if model.family is Family.VOIGT:
            return LongTimeForm(
                LongTimeKind.JEFFREYS_ERF, math.sqrt(model.J1 * model.rho), tau_eps=model.tau_eps
            )
        return LongTimeForm(LongTimeKind.HEAVISIDE_HALF, math.sqrt(model.rho / (2 * model.m)))
    scale, beta = mu_leading_zero(model)
    if beta == Fraction(1, 2):
        return LongTimeForm(LongTimeKind.ERFC, scale, beta)
    return LongTimeForm(LongTimeKind.WRIGHT_LT, scale, beta)


def longtime_eval(model: ModelSpec, t: float, x: float) -> float:
    if not t > 0:
        raise ValueError("t must be positive")
    if x < 0:
        raise ValueError("x must be nonnegative")
    form = longtime_form(model)
    kind = form.kind
    if kind is LongTimeKind.ERFC:
        return erfc_fn(0.5 * form.scale * x / math.sqrt(t))
    if kind is LongTimeKind.WRIGHT_LT:
        b = float(form.beta)
        return wright_fn(WrightParams(-b, 1.0), -form.scale * x / t**b)
    if kind is LongTimeKind.JEFFREYS_ERF:
        return 0.5 * (1.0 + math.erf((t - form.scale * x) / math.sqrt(2.0 * form.tau_eps * t)))
    # the jump point itself takes the plateau value 1/2
    return 0.5 if t >= form.scale * x else 0.0


def longtime_transform(model: ModelSpec, s, x: float):
    """Small-``s`` approximation of ``(1/s) exp(-x mu(s))`` behind each long-time form."""
    if not _numeric.is_mp(s):
        s = complex(s)
    if x == 0:
        return 1 / s
    form = longtime_form(model)
    kind = form.kind
    if kind in (LongTimeKind.ERFC, LongTimeKind.WRIGHT_LT):
        exponent = form.scale * x * _numeric.cpow(s, form.beta)
    elif kind is LongTimeKind.JEFFREYS_ERF:
        exponent = form.scale * x * s / _numeric.sqrt(1 + form.tau_eps * s)
    else:
        correction = model.b1 / (4 * model.m) * _numeric.cpow(s, 1 + model.alpha)
        exponent = form.scale * x * (s - correction)
    return _numeric.cexp(-exponent) / s
