import random

import pytest

from src.curve.models import Curve
from src.funcfield.service import rational_function_field
from src.gf.service import FiniteFieldService


def function_field(p: int, n: int = 1):
    return rational_function_field(FiniteFieldService.get_field(p, n), "t")


def legendre(p: int) -> Curve:
    """y^2 = x(x-1)(x-t^2) over F_p(t)."""
    F = function_field(p)
    t = F.gen
    return Curve(F, [0, -(1 + t * t), 0, t * t, 0])


@pytest.fixture
def f5():
    return function_field(5)


@pytest.fixture
def f7():
    return function_field(7)


@pytest.fixture
def f11():
    return function_field(11)


@pytest.fixture
def legendre5() -> Curve:
    return legendre(5)


@pytest.fixture
def legendre13() -> Curve:
    return legendre(13)


@pytest.fixture
def curve11() -> Curve:
    """y^2 + (1-t)xy - ty = x^3 - tx^2 over F_11(t), with the 5-torsion point (0, 0)."""
    F = function_field(11)
    t = F.gen
    return Curve(F, [1 - t, -t, -t, 0, 0])


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def curve_file(tmp_path):
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write
