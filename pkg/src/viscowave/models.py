"""The four viscoelastic model families and their Laplace-domain data.

Every model is described by its constitutive constants; the creep
compliance, the front speed and the wavenumber symbol

    mu(s) = s * sqrt(rho * s * J~(s))

follow from them.  Two expansions of ``mu`` are provided: the large-``s``
series (an exact-exponent :class:`~viscowave.fracseries.FracSeries`) that
drives the wave-front construction, and the leading small-``s`` term used
by the long-time forms.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Tuple

from . import _numeric
from .errors import ConfigError, UnsupportedFamily
from .fracseries import FracSeries, as_fraction, series_binomial_power, series_mul, series_sqrt_binomial

__all__ = [
    "Family",
    "ModelSpec",
    "load_model",
    "creep_compliance_laplace",
    "creep_compliance_time",
    "mu_eval",
    "mu_squared_series",
    "mu_series_infinity",
    "mu_leading_zero",
]


class Family(enum.Enum):
    MAXWELL = "maxwell"
    FRACTIONAL_MAXWELL = "fractional_maxwell"
    VOIGT = "voigt"
    FRACTIONAL_VOIGT = "fractional_voigt"

    @property
    def maxwell_like(self) -> bool:
        return self in (Family.MAXWELL, Family.FRACTIONAL_MAXWELL)

    @property
    def fractional(self) -> bool:
        return self in (Family.FRACTIONAL_MAXWELL, Family.FRACTIONAL_VOIGT)


_ALLOWED_KEYS = {
    Family.MAXWELL: {"family", "alpha", "rho", "a1", "b1"},
    Family.FRACTIONAL_MAXWELL: {"family", "alpha", "rho", "a1", "b1"},
    Family.VOIGT: {"family", "alpha", "rho", "m", "b1"},
    Family.FRACTIONAL_VOIGT: {"family", "alpha", "rho", "m", "b1"},
}


@dataclass(frozen=True)
class ModelSpec:
    """Immutable model description.

    ``a1`` is used by the Maxwell families, ``m`` by the Voigt families; the
    unused one must be ``None``.  ``alpha`` is stored as an exact fraction
    so that every exponent derived from it stays exact.
    """

    family: Family
    alpha: Fraction = Fraction(1)
    rho: float = 1.0
    b1: float = 1.0
    a1: Optional[float] = None
    m: Optional[float] = None

    def __post_init__(self):
        family = self.family if isinstance(self.family, Family) else Family(self.family)
        object.__setattr__(self, "family", family)
        alpha = as_fraction(self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if family.fractional:
            if not 0 < alpha < 1:
                raise ConfigError(f"{family.value} needs 0 < alpha < 1, got {alpha}")
        elif alpha != 1:
            raise ConfigError(f"{family.value} has alpha = 1, got {alpha}")
        if not self.rho > 0:
            raise ConfigError("rho must be positive")
        if not self.b1 > 0:
            raise ConfigError("b1 must be positive")
        if family.maxwell_like:
            if self.a1 is None or not self.a1 > 0:
                raise ConfigError(f"{family.value} needs a positive a1")
            if self.m is not None:
                raise ConfigError(f"{family.value} does not take m")
        else:
            if self.m is None or not self.m >= 0:
                raise ConfigError(f"{family.value} needs m >= 0")
            if self.a1 is not None:
                raise ConfigError(f"{family.value} does not take a1")

    # -- constructors -------------------------------------------------------
    @classmethod
    def maxwell(cls, rho=1.0, a1=1.0, b1=1.0) -> ModelSpec:
        return cls(Family.MAXWELL, Fraction(1), rho=rho, a1=a1, b1=b1)

    @classmethod
    def fractional_maxwell(cls, alpha, rho=1.0, a1=1.0, b1=1.0) -> ModelSpec:
        return cls(Family.FRACTIONAL_MAXWELL, alpha, rho=rho, a1=a1, b1=b1)

    @classmethod
    def voigt(cls, rho=1.0, m=1.0, b1=1.0) -> ModelSpec:
        return cls(Family.VOIGT, Fraction(1), rho=rho, m=m, b1=b1)

    @classmethod
    def fractional_voigt(cls, alpha, rho=1.0, m=1.0, b1=1.0) -> ModelSpec:
        return cls(Family.FRACTIONAL_VOIGT, alpha, rho=rho, m=m, b1=b1)

    @classmethod
    def from_dict(cls, data: dict) -> ModelSpec:
        if not isinstance(data, dict):
            raise ConfigError("model document must be a JSON object")
        try:
            family = Family(data["family"])
        except KeyError:
            raise ConfigError("model document lacks 'family'") from None
        except ValueError:
            raise ConfigError(f"unknown family {data['family']!r}") from None
        unknown = set(data) - _ALLOWED_KEYS[family]
        if unknown:
            raise ConfigError(f"unknown keys for {family.value}: {sorted(unknown)}")
        kwargs = {}
        for key in ("rho", "a1", "b1", "m"):
            if key in data:
                value = data[key]
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    raise ConfigError(f"{key} must be a number")
                kwargs[key] = float(value)
        if family.maxwell_like and "a1" not in kwargs:
            raise ConfigError(f"{family.value} needs a1")
        if not family.maxwell_like and "m" not in kwargs:
            raise ConfigError(f"{family.value} needs m")
        alpha = data.get("alpha", 1)
        if isinstance(alpha, bool):
            raise ConfigError("alpha must be a number or a fraction string")
        try:
            alpha = as_fraction(alpha)
        except (ValueError, TypeError, ZeroDivisionError):
            raise ConfigError(f"bad alpha {alpha!r}") from None
        return cls(family, alpha, **kwargs)

    def to_dict(self) -> dict:
        out = {"family": self.family.value, "alpha": float(self.alpha), "rho": self.rho}
        if self.family.maxwell_like:
            out["a1"] = self.a1
        else:
            out["m"] = self.m
        out["b1"] = self.b1
        return out

    # -- derived constants --------------------------------------------------
    @property
    def J0(self) -> float:
        return self.a1 / self.b1 if self.family.maxwell_like else 0.0

    @property
    def J1(self) -> float:
        if self.family.maxwell_like:
            return 1.0 / self.b1
        return math.inf if self.m == 0 else 1.0 / self.m

    @property
    def c(self) -> float:
        """Front speed; infinite for the Voigt families."""
        if self.family.maxwell_like:
            return 1.0 / math.sqrt(self.rho * self.J0)
        return math.inf

    @property
    def front_slowness(self) -> float:
        """``1/c``, with the convention ``1/c = 0`` when ``J0 = 0``."""
        return math.sqrt(self.rho * self.J0) if self.family.maxwell_like else 0.0

    @property
    def tau(self) -> float:
        """Relaxation time of the Maxwell families, ``tau**alpha = a1``."""
        if not self.family.maxwell_like:
            raise UnsupportedFamily("tau is defined for the Maxwell families")
        return self.a1 ** (1.0 / float(self.alpha))

    @property
    def tau_eps(self) -> float:
        """Retardation time of the Voigt families, ``b1 / m``."""
        if self.family.maxwell_like:
            raise UnsupportedFamily("tau_eps is defined for the Voigt families")
        return math.inf if self.m == 0 else self.b1 / self.m


def load_model(path) -> ModelSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read model file {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"model file {path} is not valid JSON: {exc}") from None
    return ModelSpec.from_dict(data)


# -- Laplace-domain evaluation ----------------------------------------------

def _as_complex(s):
    return s if _numeric.is_mp(s) else complex(s)


def creep_compliance_laplace(model: ModelSpec, s):
    """Laplace transform ``J~(s)`` of the creep compliance (principal branch)."""
    s = _as_complex(s)
    s_alpha = _numeric.cpow(s, model.alpha)
    if model.family.maxwell_like:
        # s J~ = (a1/b1) (1 + 1/(s tau)**alpha) with tau**alpha = a1
        return (model.a1 + 1 / s_alpha) / (model.b1 * s)
    return 1 / (s * (model.m + model.b1 * s_alpha))


def creep_compliance_time(model: ModelSpec, t: float) -> float:
    if t < 0:
        raise ValueError("t must be nonnegative")
    if model.family is Family.MAXWELL:
        return model.J0 + model.J1 * t
    if model.family is Family.VOIGT:
        if math.isinf(t):
            return model.J1
        if model.m == 0:
            return t / model.b1
        return model.J1 * -math.expm1(-t / model.tau_eps)
    raise UnsupportedFamily(f"no closed-form creep compliance for {model.family.value}")


def mu_eval(model: ModelSpec, s):
    """Exact ``mu(s) = s * sqrt(rho * s * J~(s))``, principal branch."""
    s = _as_complex(s)
    inner = model.rho * s * creep_compliance_laplace(model, s)
    return s * _numeric.sqrt(inner)


# -- asymptotic series --------------------------------------------------------

def _power_term(coeff, exponent) -> FracSeries:
    return FracSeries([(coeff, exponent)])


def mu_squared_series(model: ModelSpec, floor, high: bool = False) -> FracSeries:
    """Large-``s`` expansion of ``mu(s)**2 = rho * s**3 * J~(s)``."""
    floor = as_fraction(floor)
    n = lambda v: _numeric.num(v, high)  # noqa: E731
    a = model.alpha
    if model.family.maxwell_like:
        return FracSeries(
            [(n(model.rho * model.a1 / model.b1), Fraction(2)), (n(model.rho / model.b1), 2 - a)],
            floor,
        )
    base = FracSeries([(n(model.b1), a), (n(model.m), Fraction(0))])
    inverse = series_binomial_power(base, -1, floor=floor - 2)
    return series_mul(_power_term(n(model.rho), Fraction(2)), inverse).with_floor(floor)


def mu_series_infinity(model: ModelSpec, depth, high: bool = False) -> FracSeries:
    """Asymptotic series of ``mu(s)`` as ``s -> inf`` keeping exponents ``>= -depth``."""
    depth = as_fraction(depth)
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    floor = -depth
    n = lambda v: _numeric.num(v, high)  # noqa: E731
    if model.family.maxwell_like:
        return series_sqrt_binomial(mu_squared_series(model, floor, high), floor=floor)
    # mu = sqrt(rho) * s * (b1 s**alpha + m)**(-1/2)
    base = FracSeries([(n(model.b1), model.alpha), (n(model.m), Fraction(0))])
    inverse_root = series_binomial_power(base, Fraction(-1, 2), floor=floor - 1)
    scale = _numeric.sqrt(n(model.rho))
    return series_mul(_power_term(scale, Fraction(1)), inverse_root).with_floor(floor)


def mu_leading_zero(model: ModelSpec) -> Tuple[float, Fraction]:
    """Leading term ``(coefficient, exponent)`` of ``mu(s)`` as ``s -> 0+``."""
    if model.family.maxwell_like:
        # s J~ ~ s**-alpha / b1
        return math.sqrt(model.rho / model.b1), 1 - model.alpha / 2
    if model.m == 0:
        return math.sqrt(model.rho / model.b1), 1 - model.alpha / 2
    return math.sqrt(model.rho / model.m), Fraction(1)
