# This Python file uses the following encoding: utf-8
import numpy as np
import pytest

from staeckels3.sources.errors import DomainError
from staeckels3.sources.functions import getRng, sampleSphere
from staeckels3.sources.s2Appendix import (S2Bivector, S2Kind, eulerTopField, s2Bracket, s2Chart,
                                           s2Classify, s2CriticalPoints, s2Integral, s2ReducedFlow,
                                           s2Weights, so3Structure)

E = (1., 2., 5.)



def test_weights():
    np.testing.assert_array_equal(s2Weights(E), (5., 2., 1.))
    np.testing.assert_array_equal(s2Weights(None, 'spherical'), (0., 0., 1.))
    with pytest.raises(DomainError):
        s2Weights((1., 1., 5.))



def test_integral():
    L = S2Bivector(1., 2., 3.)
    assert L.casimir==14.
    assert s2Integral(E, L)==5. + 8. + 9.
    assert s2Integral(None, L, S2Kind.SPHERICAL)==9.



def test_so3_bracket():
    L = np.array([0.3, -0.7, 1.1])
    B = so3Structure(L)
    np.testing.assert_allclose(B, -B.T)
    # {l12, l13} = l23
    assert s2Bracket((1., 0., 0.), (0., 1., 0.), L)==pytest.approx(L[2])
    np.testing.assert_allclose(B@(2.*L), 0., atol=1e-15)



def test_euler_top_field_conserves():
    w = s2Weights(E)
    for M in sampleSphere(10, 3, getRng(7)):
        field = eulerTopField(M, w)
        assert field@M==pytest.approx(0., abs=1e-14)
        assert field@(w*M)==pytest.approx(0., abs=1e-14)
        np.testing.assert_allclose(field, so3Structure(M)@(2.*w*M), atol=1e-14)



@pytest.mark.parametrize('kind, s, e', [('elliptic', (1.5, 3.), E),
                                        ('elliptic', (1., 5.), E),
                                        ('spherical', (0.3, 0.8), None)])
def test_chart_on_sphere(kind, s, e):
    assert np.sum(s2Chart(kind, s, e)**2)==pytest.approx(1.)



def test_chart_bounds():
    with pytest.raises(DomainError):
        s2Chart('elliptic', (2.5, 3.), E)
    with pytest.raises(DomainError):
        s2Chart('spherical', (0.3, 1.5))



def test_critical_points():
    critical = s2CriticalPoints(E, twoH=2.)
    np.testing.assert_allclose([v for v, _ in critical], (2., 4., 10.))
    types = [s2Classify(E, points[0]) for _, points in critical]
    assert types==['Elliptic', 'Hyperbolic', 'Elliptic']



def test_spherical_critical_points():
    (equator, points), (pole, poles) = s2CriticalPoints(None, 'spherical')
    assert equator==0. and pole==1.
    assert s2Classify(None, points[3], 'spherical')=='Degenerate'
    assert s2Classify(None, poles[0], 'spherical')=='Elliptic'



def test_regular_point():
    assert s2Classify(E, (0.6, 0.0, 0.8))=='Regular'



def test_reduced_flow():
    L0 = np.array([0.6, 0.48, 0.64])
    t, L = s2ReducedFlow(L0, E, 10., n=50)
    assert L.shape==(50, 3)
    np.testing.assert_allclose(np.sum(L**2, axis=1), L0@L0, rtol=1e-9)
    np.testing.assert_allclose([s2Integral(E, l) for l in L], s2Integral(E, L0), rtol=1e-9)
