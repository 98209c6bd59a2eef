"""Wave-front expansion of the step response.

Pipeline, for a model with large-``s`` symbol ``mu(s)``:

1. :func:`split_mu` separates the principal part ``mu_plus`` (exponents
   ``>= 0``) from the remainder.
2. :func:`build_operator` writes the transport operator

       d2/dx2 - 2 mu_plus d/dx - (mu**2 - mu_plus**2),

   divides it by minus twice the leading term of ``mu_plus`` and collects
   the result as ``d/dx + sum_i s**-nu_i (p_i d2/dx2 + q_i d/dx + r_i)``.
3. :func:`compute_table` solves the triangular recursion for the
   coefficients ``A[k][l]`` of the polynomials
   ``v_k(x) = sum_l A[k][l] x**l / l!`` on the grid ``lambda_k = k*g``.
4. :func:`build_phi_kernel` picks how to invert
   ``s**-(lambda_k+1) exp(-x (mu_plus - s/c))`` and
   :func:`eval_wavefront` sums ``v_k(x) Phi_k(t - x/c, x)``.

Exponents are exact fractions throughout; grid membership is decided by
exact rational arithmetic only.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence, Tuple

from . import _numeric
from .errors import EmptyPrincipalPart, NumericalBreakdown, NumericalError, UnsupportedInput
from .fracseries import FracSeries, as_fraction, series_mul
from .ilt import ILTConfig, Method, invert
from .models import ModelSpec, mu_series_infinity, mu_squared_series
from .specfun import WrightParams, gamma_fn, wright_fn

__all__ = [
    "MuSplit",
    "SubOperator",
    "OperatorDecomposition",
    "WavefrontTable",
    "KernelKind",
    "PhiKernel",
    "WavefrontExpansion",
    "split_mu",
    "build_operator",
    "lambda_reachable",
    "compute_table",
    "build_phi_kernel",
    "eval_wavefront",
    "trust_horizon",
    "DEFAULT_K",
]

DEFAULT_K = 30
# tolerated size of the cancelled top terms of mu**2 - mu_plus**2, relative
# to the largest coefficient of mu**2
_RESIDUE_TOL = 1e-10
_TRUST_STEPS = 2000
# Phi~_k with a dominant s**beta, beta > 1/2, blows up along the Talbot
# contour's tail at small t; a vertical Bromwich line does not see it
NUMERIC_KERNEL_ILT = ILTConfig(Method.DEHOOG)


@dataclass(frozen=True)
class MuSplit:
    mu_plus: FracSeries
    mu_minus: FracSeries
    front_slowness: float


def split_mu(mu_inf: FracSeries) -> MuSplit:
    """Split a large-``s`` series of ``mu`` at exponent zero."""
    mu_plus = mu_inf.select(lambda e: e >= 0)
    mu_minus = mu_inf.select(lambda e: e < 0)
    return MuSplit(mu_plus, mu_minus, float(mu_plus.coeff(1)))


@dataclass(frozen=True)
class SubOperator:
    """``s**-nu * (p d2/dx2 + q d/dx + r)``."""

    nu: Fraction
    p: object
    q: object
    r: object


@dataclass(frozen=True)
class OperatorDecomposition:
    sub_ops: Tuple[SubOperator, ...]
    lambda_grid: Tuple[Fraction, ...]
    step: Fraction
    lambda_max: Fraction
    split: MuSplit = field(repr=False)
    high: bool = False

    @property
    def nus(self) -> Tuple[Fraction, ...]:
        return tuple(op.nu for op in self.sub_ops)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def build_operator(
    model: ModelSpec, split: MuSplit, lambda_max, high: Optional[bool] = None
) -> OperatorDecomposition:
    """Rescaled operator ``L = L0 + sum s**-nu_i L_i`` with ``0 < nu_i <= lambda_max``."""
    lambda_max = as_fraction(lambda_max)
    if not lambda_max > 0:
        raise ValueError("lambda_max must be positive")
    mu_plus = split.mu_plus
    if not mu_plus:
        raise EmptyPrincipalPart("mu_plus has no terms")
    lead_c, lead_e = mu_plus.leading()
    if high is None:
        high = _numeric.is_mp(lead_c)
    floor = lead_e - lambda_max

    mu2 = mu_squared_series(model, floor, high)
    mu_plus2 = series_mul(mu_plus.with_floor(floor), mu_plus.with_floor(floor))
    diff = mu2 - mu_plus2
    # mu**2 - mu_plus**2 = 2 mu_plus mu_minus + mu_minus**2 sits strictly below
    # the leading exponent; anything at or above it is rounding residue
    scale = max(abs(c) for c, _ in mu2) if mu2 else 1
    for c, e in diff:
        if e >= lead_e and abs(c) > _RESIDUE_TOL * scale:
            raise NumericalError(f"mu**2 - mu_plus**2 has a term at s^{e}; expansion inconsistent")
    diff = diff.select(lambda e: e < lead_e)

    zero = _numeric.num(0, high)
    coeffs: dict = {}

    def slot(nu):
        return coeffs.setdefault(nu, [zero, zero, zero])

    if lead_e <= lambda_max:
        slot(lead_e)[0] += -1 / (2 * lead_c)
    for c, e in mu_plus.terms[1:]:
        nu = lead_e - e
        if nu <= lambda_max:
            slot(nu)[1] += c / lead_c
    for c, e in diff:
        nu = lead_e - e
        if nu <= lambda_max:
            slot(nu)[2] += c / (2 * lead_c)

    sub_ops = tuple(
        SubOperator(nu, *coeffs[nu]) for nu in sorted(coeffs) if any(v != 0 for v in coeffs[nu])
    )
    denominator = reduce(_lcm, (op.nu.denominator for op in sub_ops), 1)
    step = Fraction(1, denominator)
    n_grid = math.floor(lambda_max / step)
    grid = tuple(k * step for k in range(n_grid + 1))
    return OperatorDecomposition(sub_ops, grid, step, lambda_max, split, high)


def lambda_reachable(decomp: OperatorDecomposition, lam) -> bool:
    """Is ``lam`` a nonnegative-integer combination of the ``nu_i``?"""
    lam = as_fraction(lam)
    if lam == 0:
        return True
    if lam < 0 or not decomp.sub_ops:
        return False
    scale = reduce(_lcm, [op.nu.denominator for op in decomp.sub_ops] + [lam.denominator], 1)
    target = lam * scale
    if target.denominator != 1:
        return False
    target = int(target)
    coins = [int(op.nu * scale) for op in decomp.sub_ops]
    reach = [False] * (target + 1)
    reach[0] = True
    for v in range(1, target + 1):
        reach[v] = any(c <= v and reach[v - c] for c in coins)
    return reach[target]


@dataclass(frozen=True)
class WavefrontTable:
    """Triangular coefficient table ``A[k][l]`` (``0 <= l <= k <= K``)."""

    A: Tuple[Tuple[object, ...], ...]
    lambdas: Tuple[Fraction, ...]
    mu_plus: FracSeries
    const_prefactor_rate: float
    front_slowness: float
    K: int

    def v(self, k: int, x: float) -> float:
        """Spatial polynomial ``v_k(x)``."""
        row = self.A[k]
        power = _numeric.num(1, _numeric.is_mp(row[0]))
        terms = []
        for l, a in enumerate(row):
            if l:
                power = power * x / l  # x**l / l! without a huge factorial
            terms.append(a * power)
        return float(_numeric.fsum(terms))

    def v_all(self, x: float) -> Tuple[float, ...]:
        return tuple(self.v(k, x) for k in range(self.K + 1))


def compute_table(decomp: OperatorDecomposition, K: int = DEFAULT_K) -> WavefrontTable:
    if K < 0:
        raise ValueError("K must be nonnegative")
    step = decomp.step
    if K * step > decomp.lambda_max:
        raise ValueError(
            f"lambda_K = {K * step} exceeds the operator's lambda_max = {decomp.lambda_max}"
        )
    high = decomp.high
    zero = _numeric.num(0, high)
    one = _numeric.num(1, high)
    # row offsets j = k - nu/step; exact because step divides every nu
    offsets = []
    for op in decomp.sub_ops:
        shift = op.nu / step
        if shift.denominator != 1:
            raise NumericalError(f"nu = {op.nu} is not on the lambda grid")
        offsets.append((int(shift), op))

    rows = [[one]]
    for k in range(1, K + 1):
        row = [zero] * (k + 1)
        for l in range(1, k + 1):
            contributions = []
            for shift, op in offsets:
                j = k - shift
                if j < 0:
                    continue
                prev = rows[j]
                if l + 1 <= j:
                    contributions.append(op.p * prev[l + 1])
                if l <= j:
                    contributions.append(op.q * prev[l])
                if l - 1 <= j:
                    contributions.append(op.r * prev[l - 1])
            row[l] = -_numeric.fsum(contributions, high) if contributions else zero
        rows.append(row)

    split = decomp.split
    return WavefrontTable(
        A=tuple(tuple(r) for r in rows),
        lambdas=tuple(k * step for k in range(K + 1)),
        mu_plus=split.mu_plus,
        const_prefactor_rate=float(split.mu_plus.coeff(0)),
        front_slowness=split.front_slowness,
        K=K,
    )


# -- kernels ------------------------------------------------------------------

class KernelKind(enum.Enum):
    POLY_EXP = "poly_exp"
    WRIGHT_HALF = "wright_half"
    WRIGHT_QUARTER = "wright_quarter"
    NUMERIC_ILT = "numeric_ilt"


@dataclass(frozen=True)
class PhiKernel:
    """Inverse transform ``Phi_k(t, x)`` of ``s**-(lambda_k+1) exp(-x rest(s))``.

    ``rest = mu_plus - s/c`` consists of a constant ``kappa`` and, for the
    Wright kinds, a single term ``sigma * s**beta``.
    """

    kind: KernelKind
    kappa: float
    rest: FracSeries
    sigma: float = 0.0
    beta: Optional[Fraction] = None
    ilt: ILTConfig = field(default_factory=lambda: NUMERIC_KERNEL_ILT)

    def transform(self, lam, x: float):
        """``s -> Phi~_k(s, x)``, for oracle checks and the numeric kind."""
        lam = as_fraction(lam)
        rest = self.rest

        def phi_tilde(s):
            return _numeric.cexp(-x * rest(s)) / _numeric.cpow(s, lam + 1)

        return phi_tilde

    def evaluate(self, lam, t: float, x: float) -> float:
        lam = as_fraction(lam)
        if t < 0:
            return 0.0
        if t == 0:
            return self._at_front(lam, x)
        if self.kind is KernelKind.NUMERIC_ILT:
            if x == 0:
                return t ** float(lam) / gamma_fn(float(lam) + 1)
            return invert(self.transform(lam, x), t, self.ilt)
        prefactor = math.exp(-self.kappa * x)
        t_lam = t ** float(lam)
        if self.kind is KernelKind.POLY_EXP or x == 0:
            return prefactor * t_lam / gamma_fn(float(lam) + 1)
        b = float(self.beta)
        z = -self.sigma * x / t**b
        return prefactor * t_lam * wright_fn(WrightParams(-b, float(lam) + 1), z)

    def evaluate_sum(self, weights: Sequence[Tuple[Fraction, float]], t: float, x: float) -> float:
        """``sum w * Phi(lam, t, x)`` over ``(lam, w)`` pairs."""
        if self.kind is KernelKind.NUMERIC_ILT and t > 0 and x > 0:
            # linearity: one inversion of the combined transform
            parts = [(as_fraction(lam), w) for lam, w in weights if w != 0]
            if not parts:
                return 0.0
            rest = self.rest

            def combined(s):
                damp = _numeric.cexp(-x * rest(s))
                return damp * sum(w / _numeric.cpow(s, lam + 1) for lam, w in parts)

            return invert(combined, t, self.ilt)
        terms = [w * self.evaluate(lam, t, x) for lam, w in weights if w != 0]
        if not all(math.isfinite(v) for v in terms):
            raise NumericalBreakdown(f"non-finite wave-front term at t = {t}, x = {x}")
        return math.fsum(terms)

    def _at_front(self, lam: Fraction, x: float) -> float:
        if lam != 0:
            return 0.0
        decays = self.kind is not KernelKind.POLY_EXP and x > 0
        return 0.0 if decays else math.exp(-self.kappa * x)


_WRIGHT_KINDS = {Fraction(1, 2): KernelKind.WRIGHT_HALF, Fraction(1, 4): KernelKind.WRIGHT_QUARTER}


def build_phi_kernel(
    model: ModelSpec, split: MuSplit, input: str = "step", ilt: Optional[ILTConfig] = None
) -> PhiKernel:
    """Choose the evaluation strategy for ``Phi_k`` from the shape of ``mu_plus - s/c``."""
    if input != "step":
        raise UnsupportedInput(f"only the unit step input is supported, got {input!r}")
    ilt = ilt or NUMERIC_KERNEL_ILT
    rest = split.mu_plus.select(lambda e: e != 1)
    rest = rest.map_coefficients(float)
    kappa = float(rest.coeff(0))
    fractional = rest.select(lambda e: e != 0)
    if not fractional:
        return PhiKernel(KernelKind.POLY_EXP, kappa, rest, ilt=ilt)
    if len(fractional) == 1:
        sigma, beta = fractional.leading()
        kind = _WRIGHT_KINDS.get(beta)
        if kind is not None and sigma > 0:
            return PhiKernel(kind, kappa, rest, sigma=float(sigma), beta=beta, ilt=ilt)
    return PhiKernel(KernelKind.NUMERIC_ILT, kappa, rest, ilt=ilt)


# -- evaluation -----------------------------------------------------------------

def _series_value(table: WavefrontTable, kernel: PhiKernel, v: Sequence[float], t: float, x: float) -> float:
    tau = t - x * table.front_slowness
    if tau < 0:
        return 0.0
    return kernel.evaluate_sum(list(zip(table.lambdas, v)), tau, x)


def eval_wavefront(table: WavefrontTable, kernel: PhiKernel, t: float, x: float) -> float:
    """Truncated expansion ``sum_k v_k(x) Phi_k(t - x/c, x)``; zero before the front."""
    if x < 0:
        raise ValueError("x must be nonnegative")
    return _series_value(table, kernel, table.v_all(x), t, x)


def trust_horizon(
    table: WavefrontTable,
    kernel: PhiKernel,
    x: float,
    t_max: Optional[float] = None,
    steps: int = _TRUST_STEPS,
) -> float:
    """First time after the front where the truncated series stops being monotone.

    The series is sampled on ``steps`` equal intervals between the front and
    ``t_max`` (front + 10 by default); the returned time is the sample at
    which the forward difference first changes sign.  A monotone scan
    returns ``t_max``.
    """
    front = x * table.front_slowness
    if t_max is None:
        t_max = front + 10.0
    if not t_max > front:
        raise ValueError("t_max must lie after the front")
    h = (t_max - front) / steps
    v = table.v_all(x)
    times = [front + i * h for i in range(steps + 1)]
    values = [_series_value(table, kernel, v, t, x) for t in times]
    direction = 0
    for i in range(steps):
        d = values[i + 1] - values[i]
        # differences at rounding level carry no sign
        if abs(d) <= 1e-13 * max(1.0, abs(values[i]), abs(values[i + 1])):
            continue
        sign = 1 if d > 0 else -1
        if direction == 0:
            direction = sign
        elif sign != direction:
            return times[i]
    return t_max


@dataclass(frozen=True)
class WavefrontExpansion:
    """Everything needed to evaluate the expansion for one model."""

    model: ModelSpec
    decomposition: OperatorDecomposition
    table: WavefrontTable
    kernel: PhiKernel

    @classmethod
    def from_model(
        cls, model: ModelSpec, K: int = DEFAULT_K, high: bool = False, ilt: Optional[ILTConfig] = None
    ) -> WavefrontExpansion:
        lam = Fraction(1)
        while True:
            split = split_mu(mu_series_infinity(model, lam, high))
            decomp = build_operator(model, split, lam, high)
            needed = K * decomp.step
            if needed <= lam:
                break
            lam = needed
        table = compute_table(decomp, K)
        kernel = build_phi_kernel(model, split, ilt=ilt)
        return cls(model, decomp, table, kernel)

    def __call__(self, t: float, x: float) -> float:
        return eval_wavefront(self.table, self.kernel, t, x)

    def trust_horizon(self, x: float, t_max: Optional[float] = None, steps: int = _TRUST_STEPS) -> float:
        return trust_horizon(self.table, self.kernel, x, t_max, steps)
