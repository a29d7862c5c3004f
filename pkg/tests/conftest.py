import pytest

from strainwave import Column, Scenario, water_defaults

# Standard deep-ocean case used throughout: 3700 m column, strong bottom
# forcing q_ref = 1.1296, unit Strickler friction.
Z_FLOOR = -3700.0
Q_REF = 1.1296


@pytest.fixture(scope="session")
def water():
    return water_defaults()


@pytest.fixture(scope="session")
def column(water):
    return Column(z_f=Z_FLOOR, params=water)


@pytest.fixture(scope="session")
def scenario(column):
    return Scenario(column=column, q_ref=Q_REF, k=1.0)
