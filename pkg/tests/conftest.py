from fractions import Fraction

import pytest

from app.core.scalars import SYMBOLIC, Params
from app.schemas import ParamAssignment


@pytest.fixture
def sym():
    return SYMBOLIC


@pytest.fixture
def num():
    """A generic rational point: d away from roots of unity, distinct a-values."""
    assignment = ParamAssignment(
        d=Fraction(3, 2),
        beta=Fraction(2, 7),
        a=[Fraction(5), Fraction(-3, 4), Fraction(11, 3), Fraction(7), Fraction(-2), Fraction(13, 5)],
    )
    return Params.numeric(assignment)
