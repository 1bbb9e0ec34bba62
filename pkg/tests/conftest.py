"""Shared fields and curves for the suite.

The degree-16 towers take a couple of seconds to build, so everything
here is session-scoped.  Construction recipes are hand-derived where a
comment says so; the tests that use a fixture freeze the expected
invariants next to the assertion, not here.
"""

import pytest

from ramlock.localfield import make_field, make_unramified_field
from ramlock.towers import (
    cyclotomic_extend,
    radical_extend,
    unramified_extend,
)


@pytest.fixture(scope="session")
def q3():
    return make_field(3, [-3, 1])


@pytest.fixture(scope="session")
def q5():
    return make_field(5, [-5, 1])


@pytest.fixture(scope="session")
def kz3():
    # Phi_3(x+1) = x^2 + 3x + 3: Q_3(zeta_3) with pi = zeta_3 - 1
    return make_field(3, [3, 3, 1])


@pytest.fixture(scope="session")
def kz5():
    # Phi_5(x+1) = x^4 + 5x^3 + 10x^2 + 10x + 5
    return make_field(5, [5, 10, 10, 5, 1])


@pytest.fixture(scope="session")
def kz9(q3):
    return cyclotomic_extend(q3, 2).field


@pytest.fixture(scope="session")
def unram4_5():
    return make_unramified_field(5, 4)


@pytest.fixture(scope="session")
def tower16_ord(unram4_5):
    # Q_5(zeta_5) composed with the unramified quartic: e = 4, f = 4
    return cyclotomic_extend(unram4_5, 1).field


@pytest.fixture(scope="session")
def tower16_ss():
    # The 3-division field of y^2 = x^3 + x.  The x-coordinates of the
    # 3-torsion are the roots of 3x^4 + 6x^2 - 1; for a root x0 the
    # reciprocal w = 1/x0 satisfies w^4 - 6w^2 - 3 = 0, which is
    # Eisenstein, so k4 = Q_3(w) is totally ramified of degree 4 and
    # contains x0 = 1/w.  Then y0^2 = x0^3 + x0 = (w + w^3)/w^4 needs the
    # square root of w + w^3 (valuation 1, so a ramified quadratic), and
    # the remaining two x-coordinates generate the unramified quadratic
    # on top: e = 8, f = 2, degree 16.
    k4 = make_field(3, [-3, 0, -6, 0, 1])
    w = k4.pi()
    k8 = radical_extend(k4, w + w**3, 2).field
    return unramified_extend(k8, 2).field


def _curve(field, a):
    from ramlock.elliptic import WeierstrassCurve

    return WeierstrassCurve(field, a)


@pytest.fixture(scope="session")
def e5_q5(q5):
    # y^2 = x^3 - x
    return _curve(q5, [0, 0, 0, -1, 0])


@pytest.fixture(scope="session")
def e3_q3(q3):
    # y^2 = x^3 + x
    return _curve(q3, [0, 0, 0, 1, 0])


@pytest.fixture(scope="session")
def e5_unram4(unram4_5):
    return _curve(unram4_5, [0, 0, 0, -1, 0])


@pytest.fixture(scope="session")
def e5_tower(tower16_ord):
    return _curve(tower16_ord, [0, 0, 0, -1, 0])


@pytest.fixture(scope="session")
def e3_tower(tower16_ss):
    return _curve(tower16_ss, [0, 0, 0, 1, 0])
