# This Python file uses the following encoding: utf-8
import numpy as np
import pytest

from staeckels3.sources.quadrature import IntegrationQuadrature



@pytest.fixture(scope='module')
def quadrature():
    return IntegrationQuadrature(n=16, tol=1e-13, maxDepth=30)



def test_fixed_is_exact_on_polynomials(quadrature):
    assert quadrature.fixed(lambda x: x**5, 0., 1.)==pytest.approx(1./6., rel=1e-14)



def test_integrate(quadrature):
    assert quadrature.integrate(np.sin, 0., np.pi)==pytest.approx(2., rel=1e-12)
    assert quadrature.integrate(np.sin, np.pi, 0.)==pytest.approx(-2., rel=1e-12)
    assert not quadrature.depthReached



def test_zero_interval(quadrature):
    assert quadrature.integrate(np.exp, 1., 1.)==0.
    assert quadrature.integrateSqrtEnds(np.exp, 1., 1.)==0.



@pytest.mark.parametrize('lo, hi', [(0., 1.), (2., 5.), (-1., 7.)])
def test_square_root_ends(quadrature, lo, hi):
    inverse = quadrature.integrateSqrtEnds(lambda s: 1./np.sqrt((s - lo)*(hi - s)), lo, hi)
    direct = quadrature.integrateSqrtEnds(lambda s: np.sqrt(np.clip((s - lo)*(hi - s), 0., None)), lo, hi)
    assert inverse==pytest.approx(np.pi, rel=1e-10)
    assert direct==pytest.approx(np.pi*(hi - lo)**2/8., rel=1e-10)



def test_depth_limit():
    quadrature = IntegrationQuadrature(n=4, tol=1e-14, maxDepth=2)
    quadrature.integrate(lambda x: (x>0.3).astype(float), 0., 1.)
    assert quadrature.depthReached



def test_tolerance_floor():
    # Rounding noise never falls below a zero tolerance
    quadrature = IntegrationQuadrature(n=8, tol=0., maxDepth=16)
    value = quadrature.integrate(lambda x: 1. + 1e-14*np.sin(1e9*x), 0., 1.)
    assert value==pytest.approx(1., rel=1e-12)
    assert not quadrature.depthReached



def test_square_root_ends_offsets(quadrature):
    lo, hi = 1e8, 1e8 + 1.
    direct = quadrature.integrateSqrtEnds(lambda s, dlo, dhi: np.sqrt(dlo*dhi), lo, hi, offsets=True)
    assert direct==pytest.approx(np.pi/8., rel=1e-12)
