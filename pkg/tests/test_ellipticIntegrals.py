# This Python file uses the following encoding: utf-8
import numpy as np
import pytest
from scipy import integrate, special

from staeckels3.sources.ellipticIntegrals import (EllipticKind, completeElliptic, ellipsoidalModulus,
                                                  ellipticValue)
from staeckels3.sources.errors import DomainError



def thirdKind(alpha, k):
    return integrate.quad(lambda t: 1./((1. - alpha*np.sin(t)**2)*np.sqrt(1. - k**2*np.sin(t)**2)),
                          0., 0.5*np.pi, epsabs=1e-13, epsrel=1e-13)[0]



@pytest.mark.parametrize('k', [0., 0.1, 0.5, 0.9, 0.999])
def test_first_kind(k):
    assert completeElliptic(EllipticKind.K, k)==pytest.approx(special.ellipk(k**2), rel=1e-12)



@pytest.mark.parametrize('alpha', [-3., -0.5, 0.2, 0.75, 0.95])
@pytest.mark.parametrize('k', [0., 0.35, 0.8])
def test_third_kind(alpha, k):
    assert completeElliptic('Pi', k, alpha)==pytest.approx(thirdKind(alpha, k), rel=1e-10)



def test_special_values():
    assert completeElliptic('K', 0.)==pytest.approx(0.5*np.pi)
    assert completeElliptic('Pi', 0., 0.5)==pytest.approx(0.5*np.pi/np.sqrt(0.5))
    assert completeElliptic('Pi', 0.4, 0.)==completeElliptic('K', 0.4)



@pytest.mark.parametrize('k, alpha', [(1., None), (-0.1, None), (0.5, 1.), (0.5, 2.)])
def test_domain(k, alpha):
    with pytest.raises(DomainError):
        completeElliptic('Pi' if alpha is not None else 'K', k, alpha)



def test_third_kind_needs_characteristic():
    with pytest.raises(DomainError):
        completeElliptic('Pi', 0.5)



def test_elliptic_value():
    value = ellipticValue(0.3, 0.4)
    assert value.K==completeElliptic('K', 0.3)
    assert value.Pi==completeElliptic('Pi', 0.3, 0.4)
    assert (value.k, value.alpha)==(0.3, 0.4)



def test_ellipsoidal_modulus():
    assert ellipsoidalModulus((1., 2., 5., 8.))==pytest.approx(np.sqrt(1./8.))
