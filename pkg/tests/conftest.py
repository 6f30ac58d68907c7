from fractions import Fraction as F

import pytest

from qbern.qcore import Domain, QContext, QPoint


def exact(q) -> QContext:
    return QContext(F(q), Domain.EXACT)


def f64(q) -> QContext:
    return QContext(F(q), Domain.FLOAT)


@pytest.fixture
def quarter():
    """q = 1/4 with x = 1/2, where u = v = 2/3 exactly."""
    ctx = exact("1/4")
    return ctx, QPoint.from_x([F(1, 2)], ctx)
