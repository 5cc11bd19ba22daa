"""Shared reference instances.

The five pinned instances from the acceptance description plus two healthy
companions for the orthogonal/symplectic flavors (the pinned one-weak-point
configurations are rigid under sphere automorphisms and provably degenerate
for the grading; see the degeneracy witness tests).
"""

import pytest

from laxcoh import (
    Cycle,
    ExactMatrix,
    Flavor,
    GradedBasis,
    MarkedSphere,
    TyurinData,
    build_connection,
)
from laxcoh.scalars import I, Scalar


def col(*xs):
    return ExactMatrix.column(
        [x if isinstance(x, Scalar) else Scalar(x) for x in xs])


class Instance:
    def __init__(self, name, tyurin, healthy=True):
        self.name = name
        self.tyurin = tyurin
        self.flavor = tyurin.flavor
        self.sphere = tyurin.sphere
        self.healthy = healthy
        self._basis = None
        self._omega = None

    def basis(self, window=(-10, 10)):
        if self._basis is None or self._basis.window[0] > window[0] \
                or self._basis.window[1] < window[1]:
            lo = min(window[0], -10)
            hi = max(window[1], 10)
            self._basis = GradedBasis(self.tyurin, (lo, hi))
        return self._basis

    def omega(self, pole_budget=1):
        if self._omega is None:
            self._omega = build_connection(self.tyurin, pole_budget)
        return self._omega

    def separating_cycle(self):
        return Cycle.separating(self.sphere)


_SPHERE12 = MarkedSphere([Scalar(1), Scalar(2)])
_SPHERE1 = MarkedSphere([Scalar(1)])


def _make(name):
    if name == "GL2":
        return Instance("REF-GL2", TyurinData(
            _SPHERE12, [col(1, 0), col(1, 1)], Flavor("gl", 2)))
    if name == "SL2":
        return Instance("REF-SL2", TyurinData(
            _SPHERE12, [col(1, 0), col(1, 1)], Flavor("sl", 2)))
    if name == "SO3":
        return Instance("REF-SO3", TyurinData(
            _SPHERE1, [col(1, I, 0)], Flavor("so", 3)), healthy=False)
    if name == "SP4":
        return Instance("REF-SP4", TyurinData(
            _SPHERE1, [col(1, 0, 0, 0)], Flavor("sp", 2)), healthy=False)
    if name == "LOOP":
        return Instance("REF-LOOP", TyurinData(
            MarkedSphere([]), [], Flavor("sl", 2)))
    if name == "SO3W":
        return Instance("REF-SO3W", TyurinData(
            _SPHERE12, [col(1, I, 0), col(0, 1, I)], Flavor("so", 3)))
    if name == "SP4W":
        return Instance("REF-SP4W", TyurinData(
            _SPHERE12, [col(1, 0, 0, 0), col(0, 0, 1, 0)], Flavor("sp", 2)))
    raise KeyError(name)


_CACHE = {}


def get_instance(name) -> Instance:
    if name not in _CACHE:
        _CACHE[name] = _make(name)
    return _CACHE[name]


@pytest.fixture(scope="session")
def gl2():
    return get_instance("GL2")


@pytest.fixture(scope="session")
def sl2():
    return get_instance("SL2")


@pytest.fixture(scope="session")
def so3():
    return get_instance("SO3")


@pytest.fixture(scope="session")
def sp4():
    return get_instance("SP4")


@pytest.fixture(scope="session")
def loop():
    return get_instance("LOOP")


@pytest.fixture(scope="session")
def so3w():
    return get_instance("SO3W")


@pytest.fixture(scope="session")
def sp4w():
    return get_instance("SP4W")
