import numpy as np
import pytest

from shearcascade import Basis, Domain, GalerkinRHS, MixingLayer, Truncation

TWO_PI = 2.0 * np.pi


@pytest.fixture(scope="session")
def square_domain():
    return Domain(Lx=TWO_PI, Ly=TWO_PI, h=np.pi, nu=0.02)


@pytest.fixture(scope="session")
def rect_domain():
    return Domain(Lx=TWO_PI, Ly=np.pi, h=np.pi, nu=0.02)


@pytest.fixture(scope="session")
def basis444(square_domain):
    return Basis(square_domain, Truncation(4, 4, 4))


@pytest.fixture(scope="session")
def basis444_rect(rect_domain):
    return Basis(rect_domain, Truncation(4, 4, 4))


@pytest.fixture(scope="session")
def mixing_profile():
    return MixingLayer(U1=1.0, U2=-1.0, delta=np.pi / 10.0)


@pytest.fixture(scope="session")
def rhs444(basis444, mixing_profile):
    return GalerkinRHS(basis444, mixing_profile)
