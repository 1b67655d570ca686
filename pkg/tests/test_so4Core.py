# This Python file uses the following encoding: utf-8
from fractions import Fraction
import numpy as np
import pytest
from hypothesis import given, strategies as st

from staeckels3.sources.errors import DomainError
from staeckels3.sources.functions import getRng, sampleCotangent, wedge
from staeckels3.sources.so4Core import (CotangentPoint, QuadraticObservable, XYPair,
                                        buildIntegrals, casimirObservables, casimirs,
                                        compatibleStructure, diracStructure, ellipsoidalIntegrals,
                                        hodgeDual, jacobiResidual, join, lpBracket, lpStructure,
                                        momentumMap, split, traceRational)
from staeckels3.sources.separation import separatedMomentumSq
from staeckels3.sources.systemSpec import IntegralValues, SystemSpec

SPECS = [SystemSpec.ellipsoidal((1., 2., 5., 8.), 1.),
         SystemSpec.prolate(2.4, 1.),
         SystemSpec.oblate(2.4, 1.),
         SystemSpec.lame((0.4, 1.3, 3.2), 1.),
         SystemSpec.spherical23(1.),
         SystemSpec.cylindrical(1.)]

bivectors = st.lists(st.floats(-10., 10., allow_nan=False), min_size=6, max_size=6)



def test_cotangent_point_rejects_off_sphere():
    with pytest.raises(DomainError):
        CotangentPoint((1., 1., 0., 0.), (0., 0., 1., 0.))
    with pytest.raises(DomainError):
        CotangentPoint((1., 0., 0., 0.), (1., 0., 0., 0.))



def test_dirac_structure_keeps_constraints():
    x, y = sampleCotangent(5, getRng(1))
    for xi, yi in zip(x, y):
        B = diracStructure(CotangentPoint(xi, yi))
        np.testing.assert_allclose(B, -B.T, atol=1e-15)
        # x.x and x.y are Casimirs
        np.testing.assert_allclose(B@np.concatenate((2.*xi, np.zeros(4))), 0., atol=1e-14)
        np.testing.assert_allclose(B@np.concatenate((yi, xi)), 0., atol=1e-14)



def test_dirac_structure_zero_x():
    with pytest.raises(DomainError):
        diracStructure((np.zeros(4), np.ones(4)))



def test_angular_momenta_brackets(leaf):
    l12, l13, l23 = (QuadraticObservable.component(k) for k in (0, 1, 3))
    for L in leaf[:20]:
        assert lpBracket(l12, l13, L)==pytest.approx(L[3])
        assert lpBracket(l13, l23, L)==pytest.approx(L[0])



def test_casimirs_are_central(leaf):
    C1, C2 = casimirObservables()
    for L in leaf[:50]:
        B = lpStructure(L)
        np.testing.assert_allclose(B@C1.gradient(L), 0., atol=1e-14)
        np.testing.assert_allclose(B@C2.gradient(L), 0., atol=1e-14)
        np.testing.assert_allclose(C2.gradient(L), hodgeDual(L), atol=1e-15)



def test_casimirs_on_leaf(leaf):
    for L in leaf[:50]:
        C1, C2 = casimirs(L)
        assert C1==pytest.approx(1., abs=1e-12)
        assert C2==pytest.approx(0., abs=1e-12)



@pytest.mark.parametrize('C', [(1., 2., 5., 8.), (0., 1., 2.4, 2.4), (-1., 0.3, 0.3, 7.)])
def test_jacobi_identity(C):
    rng = getRng(2)
    for _ in range(10):
        f, g, k, L = rng.standard_normal((4, 6))
        assert abs(jacobiResidual(lpStructure, f, g, k, L))<1e-12
        assert abs(jacobiResidual(lambda M: compatibleStructure(M, C), f, g, k, L))<1e-11



def test_compatible_structure_identity(leaf):
    for L in leaf[:10]:
        np.testing.assert_allclose(compatibleStructure(L, (1., 1., 1., 1.)), -lpStructure(L), atol=1e-15)



@given(bivectors)
def test_split_join_inverse(L):
    L = np.array(L)
    np.testing.assert_allclose(join(split(L)), L, atol=1e-12)



@given(bivectors)
def test_split_norms(L):
    X, Y = split(L)
    C1, C2 = casimirs(L)
    assert 4.*X@X==pytest.approx(C1 + 2.*C2, abs=1e-9)
    assert 4.*Y@Y==pytest.approx(C1 - 2.*C2, abs=1e-9)



def test_join_of_pair():
    L = join(XYPair(np.array([1., 0., 0.]), np.array([0., 0., 1.])))
    np.testing.assert_allclose(L, [1., 0., 1., -1., 0., 1.])



@pytest.mark.parametrize('spec', SPECS, ids=lambda s: s.family.value)
def test_integrals_commute(spec, leaf):
    f, g = buildIntegrals(spec)
    for L in leaf:
        scale = np.linalg.norm(f.gradient(L))*np.linalg.norm(g.gradient(L))
        assert abs(lpBracket(f, g, L))<=1e-12*max(1., scale)



def test_ellipsoidal_integrals_are_exact():
    eta1, eta2 = ellipsoidalIntegrals((1, 2, 5, 8))
    # l12 pairs with the complement {3, 4}
    assert eta1.exact[0, 0]==Fraction(13)
    assert eta2.exact[0, 0]==Fraction(40)
    assert eta1.exact[5, 5]==Fraction(3)
    assert eta2.exact[5, 5]==Fraction(2)



def test_linear_integrals():
    f, g = buildIntegrals(SystemSpec.cylindrical(1.))
    assert f.isLinear and g.isLinear
    L = np.arange(1., 7.)
    assert f(L)==1.
    assert g(L)==6.



def test_momentum_map_level():
    x = np.array([1., 0., 0., 0.])
    y = np.array([0., 2., 0., 0.])
    value = momentumMap(wedge(x, y), SystemSpec.prolate(2.4, 1.))
    assert value.twoH==pytest.approx(4.)
    assert value.x==0.
    assert value.y==pytest.approx(2.4*4.)



def test_trace_rational_matches_momenta(ellipsoidal, leaf):
    f, g = buildIntegrals(ellipsoidal)
    for L in leaf[:20]:
        values = IntegralValues(f(L), g(L), 1.)
        for s in (1.5, 3., 6.5):
            p2 = separatedMomentumSq(s, 0 if s<2. else 1 if s<5. else 2, values, ellipsoidal)
            assert traceRational(s, L, ellipsoidal.e)==pytest.approx(8.*p2, rel=1e-10, abs=1e-12)



def test_trace_rational_pole(ellipsoidal, leaf):
    with pytest.raises(DomainError):
        traceRational(2., leaf[0], ellipsoidal.e)
