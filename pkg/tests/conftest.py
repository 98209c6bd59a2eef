import pytest
from hypothesis import HealthCheck, settings

from viscowave.models import ModelSpec

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def maxwell():
    return ModelSpec.maxwell()


@pytest.fixture
def frac_maxwell_half():
    return ModelSpec.fractional_maxwell("1/2")


@pytest.fixture
def frac_maxwell_3q():
    return ModelSpec.fractional_maxwell("3/4")


@pytest.fixture
def voigt():
    return ModelSpec.voigt()


@pytest.fixture
def frac_voigt_half():
    return ModelSpec.fractional_voigt("1/2")


ALL_UNIT_MODELS = [
    ModelSpec.maxwell(),
    ModelSpec.fractional_maxwell("1/2"),
    ModelSpec.fractional_maxwell("3/4"),
    ModelSpec.voigt(),
    ModelSpec.fractional_voigt("1/2"),
]


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    RESULTS = getattr(module, "RESULTS", None)
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
