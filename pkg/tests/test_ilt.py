import math
from fractions import Fraction

import mpmath as mp
import pytest

from viscowave.errors import NonPositiveTime, NumericalBreakdown
from viscowave.ilt import ILTConfig, Method, Precision, invert, invert_response, stehfest_weights
from viscowave.specfun import f_half

from conftest import ALL_UNIT_MODELS

TIMES = [0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 50.0]

# transform, exact inverse
KNOWN_PAIRS = {
    "step": (lambda s: 1 / s, lambda t: 1.0),
    "ramp": (lambda s: 1 / s**2, lambda t: t),
    "decay": (lambda s: 1 / (s + 1), lambda t: math.exp(-t)),
    "erfc": (lambda s: mp.exp(-0.8 * mp.sqrt(s)) / s, lambda t: math.erfc(0.8 / (2 * math.sqrt(t)))),
    "iterated_erfc": (
        lambda s: mp.exp(-0.8 * mp.sqrt(s)) / s**1.5,
        lambda t: math.sqrt(t) * f_half(0.8 / math.sqrt(t), 0.5),
    ),
}


def test_examples():
    assert invert(lambda s: 1 / s, 1.0) == pytest.approx(1.0, rel=1e-12)
    assert invert(lambda s: 1 / s**2, 3.0) == pytest.approx(3.0, rel=1e-12)
    value = invert(lambda s: mp.exp(-mp.sqrt(s)) / s, 1.0)
    assert value == pytest.approx(math.erfc(0.5), rel=1e-12)
    assert value == pytest.approx(0.479500, abs=1e-6)


@pytest.mark.parametrize("name", sorted(KNOWN_PAIRS))
def test_known_pair_suite(name):
    transform, exact = KNOWN_PAIRS[name]
    for t in TIMES:
        assert invert(transform, t) == pytest.approx(exact(t), rel=1e-8)


def test_double_precision_talbot():
    cfg = ILTConfig(Method.TALBOT, 32, Precision.DOUBLE)
    assert invert(lambda s: 1 / (s + 1), 2.0, cfg) == pytest.approx(math.exp(-2), rel=1e-8)


def test_stehfest_weights():
    weights = stehfest_weights(16)
    assert all(isinstance(w, Fraction) for w in weights)
    assert sum(weights) == 0
    assert stehfest_weights(2) == (Fraction(2), Fraction(-2))


def test_dehoog():
    cfg = ILTConfig(Method.DEHOOG)
    for t in (0.5, 5.0):
        assert invert(lambda s: 1 / (s + 1), t, cfg) == pytest.approx(math.exp(-t), rel=1e-12)


def test_config_validation():
    assert ILTConfig().node_count == 64
    assert ILTConfig(Method.STEHFEST).node_count == 16
    with pytest.raises(ValueError):
        ILTConfig(Method.STEHFEST, 15)
    with pytest.raises(ValueError):
        ILTConfig(Method.STEHFEST, 22, Precision.DOUBLE)
    with pytest.raises(ValueError):
        ILTConfig(Method.DEHOOG, 20, Precision.DOUBLE)
    assert ILTConfig(Method.STEHFEST, 22, Precision.HIGH).node_count == 22


def test_errors():
    with pytest.raises(NonPositiveTime):
        invert(lambda s: 1 / s, 0.0)
    with pytest.raises(NonPositiveTime):
        invert(lambda s: 1 / s, -1.0)
    with pytest.raises(NumericalBreakdown):
        invert(lambda s: mp.exp(s**2) / s, 1.0, ILTConfig(Method.TALBOT, 16, Precision.DOUBLE))


def test_delay_is_the_shift_theorem():
    g = lambda s: 1 / (s + 1)  # noqa: E731
    assert invert(g, 0.5, delay=1.0) == 0.0
    assert invert(g, 3.0, delay=1.0) == pytest.approx(math.exp(-2.0), rel=1e-12)


def test_response_examples(maxwell, voigt):
    for t in (0.5, 2.0):
        assert invert_response(maxwell, t, 0.0) == pytest.approx(1.0, rel=1e-12)
    for t in (0.2, 0.5, 0.9, 0.999):
        assert abs(invert_response(maxwell, t, 1.0)) <= 1e-6
    early = invert_response(voigt, 0.01, 1.0)
    assert 0 < early < 0.05


def test_maxwell_response_against_telegraph_solution(maxwell):
    # unit Maxwell: r = e^{-x/2} + (x/2) int_x^t e^{-u/2} I1(sqrt(u^2-x^2)/2)/sqrt(u^2-x^2) du
    x = 1.0
    for t in (1.05, 1.5, 3.0):
        with mp.workdps(30):
            integrand = lambda u: mp.exp(-u / 2) * mp.besseli(1, mp.sqrt(u**2 - x**2) / 2) / mp.sqrt(u**2 - x**2)  # noqa: E731
            exact = mp.exp(-x / 2) + x / 2 * mp.quad(integrand, [x, t])
        assert invert_response(maxwell, t, x) == pytest.approx(float(exact), rel=1e-10)


@pytest.mark.parametrize("model", ALL_UNIT_MODELS, ids=lambda m: f"{m.family.value}-{m.alpha}")
def test_talbot_and_stehfest_agree_on_smooth_region(model):
    stehfest = ILTConfig(Method.STEHFEST, 40, Precision.HIGH)
    for x in (0.5, 1.0):
        front = x * model.front_slowness
        for dt in (0.5, 1.0, 3.0, 10.0, 30.0):
            t = front + dt
            a = invert_response(model, t, x)
            b = invert_response(model, t, x, stehfest)
            assert abs(a - b) <= 1e-5
