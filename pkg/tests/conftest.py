"""Shared fixtures: one large free-boson algebra and its twisted module.

The engines cache mode computations on the data objects, so sharing them
across test modules keeps the suite fast; everything derived from them is
deterministic.
"""

from fractions import Fraction as F

import pytest

from twistedzhu.quotient import FiniteModule, induce, zhu_algebra
from twistedzhu.voacore import ModuleMapHandle, Window, builtin
from twistedzhu.zhuprod import Quadruple


@pytest.fixture(scope="session")
def V():
    return builtin("heisenberg", 11)


@pytest.fixture(scope="session")
def M(V):
    return builtin("heisenberg_theta_twisted", Window.of(11, 8), voa=V)


@pytest.fixture(scope="session")
def Q(V):
    return Quadruple(V, "id", "theta", "theta", 2)


@pytest.fixture(scope="session")
def H(V, M):
    return ModuleMapHandle(V, M)


@pytest.fixture(scope="session")
def theta_alg(V):
    return zhu_algebra(V, "theta", 0, 8, report_window=5)


@pytest.fixture(scope="session")
def bottom_module(theta_alg):
    return FiniteModule.one_dimensional(theta_alg, {"1": F(1)})


@pytest.fixture(scope="session")
def verma3(V, Q, bottom_module):
    return induce(V, Q, 0, bottom_module, maxN=3, window=11, gen_window=11,
                  rel_window=7, report_window=6)


@pytest.fixture(scope="session")
def verma2(V, Q, bottom_module):
    return induce(V, Q, 0, bottom_module, maxN=2, window=11, gen_window=11,
                  rel_window=7, report_window=6)
