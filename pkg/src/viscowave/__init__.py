"""Wave-front and long-time asymptotics of step responses in viscoelastic media."""

from .errors import (
    ConfigError,
    NumericalBreakdown,
    NumericalError,
    UnsupportedFamily,
    UnsupportedInput,
    ViscowaveError,
)
from .fracseries import FracSeries
from .ilt import ILTConfig, Method, Precision, invert, invert_response
from .longtime import longtime_eval, longtime_transform
from .models import Family, ModelSpec, load_model, mu_eval, mu_series_infinity
from .wavefront import WavefrontExpansion, eval_wavefront, trust_horizon

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "NumericalBreakdown",
    "NumericalError",
    "UnsupportedFamily",
    "UnsupportedInput",
    "ViscowaveError",
    "FracSeries",
    "ILTConfig",
    "Method",
    "Precision",
    "invert",
    "invert_response",
    "longtime_eval",
    "longtime_transform",
    "Family",
    "ModelSpec",
    "load_model",
    "mu_eval",
    "mu_series_infinity",
    "WavefrontExpansion",
    "eval_wavefront",
    "trust_horizon",
]
