# This Python file uses the following encoding: utf-8
import numpy as np
import pytest
from hypothesis import given, strategies as st

from staeckels3.sources.errors import DomainError
from staeckels3.sources.functions import getRng, relabelBivector, sampleLeaf
from staeckels3.sources.paramSpace import (BlowupChart, blowup, degenerationOrder, degenerationPath,
                                           faceOfBlowup, involution, normalize, parameterActionMap,
                                           reflect, representativeChart, transformIntegralValues)
from staeckels3.sources.so4Core import buildIntegrals
from staeckels3.sources.systemSpec import Family, IntegralValues, SystemSpec



def test_normalize():
    spec, record = normalize((1., 2., 5., 8.))
    assert spec.e==(0., 1., 4., 7.)
    assert record.alpha==1.
    assert record.beta==-1.



@pytest.mark.parametrize('e', [(1., 1., 5., 8.), (1., 2., 8., 5.), (1., 2., 5.)])
def test_normalize_rejects(e):
    with pytest.raises(DomainError):
        normalize(e)



def test_reflect():
    e, record = reflect((1., 2., 5., 8.))
    assert e==(-8., -5., -2., -1.)
    assert record==(-1., 0.)



@pytest.mark.parametrize('alpha, beta', [(1., -1.), (2., 0.5), (0.5, 3.)])
def test_transform_integral_values(alpha, beta):
    e = np.array([1., 2., 5., 8.])
    twoH = 1.7
    L = sampleLeaf(20, getRng(3), twoH)
    f, g = buildIntegrals(SystemSpec.ellipsoidal(e, twoH))
    e2 = alpha*e + beta
    f2, g2 = buildIntegrals(SystemSpec.ellipsoidal(e2, twoH))
    for l in L:
        value = transformIntegralValues(IntegralValues(f(l), g(l), twoH), alpha, beta)
        assert value.eta1==pytest.approx(f2(l), rel=1e-12, abs=1e-12)
        assert value.eta2==pytest.approx(g2(l), rel=1e-12, abs=1e-12)



def test_transform_needs_alpha():
    with pytest.raises(DomainError):
        transformIntegralValues(IntegralValues(1., 1., 1.), 0., 1.)



def test_involution():
    np.testing.assert_allclose(involution(4., 7.), (2., 7./3.))
    with pytest.raises(DomainError):
        involution(3., 3.)



@given(st.floats(1.01, 50.), st.floats(0.01, 50.))
def test_involution_is_an_involution(a, d):
    b = a + d
    np.testing.assert_allclose(involution(*involution(a, b)), (a, b), rtol=1e-9)



def test_blowup():
    np.testing.assert_allclose(blowup(4., 7.), (1./7., 0.5))
    assert blowup(1., 1., 0.3)==BlowupChart(1., 0.3)
    with pytest.raises(DomainError):
        blowup(1., 1.)
    with pytest.raises(DomainError):
        blowup(1., 1., 1.5)
    with pytest.raises(DomainError):
        blowup(5., 4.)



def test_representative_chart():
    chart, flipped = representativeChart(4., 7.)
    assert flipped
    np.testing.assert_allclose(chart, (3./7., 0.75))
    assert faceOfBlowup(chart)=='ellipsoidal'

    chart, flipped = representativeChart(1.5, 1.8)
    assert not flipped
    assert chart.q>=(1. - chart.r)/(2. - chart.r)



@pytest.mark.parametrize('chart, face', [((1., 0.), 'spherical23'),
                                         ((0., 1.), 'cylindrical'),
                                         ((0.5, 0.), 'symmetric prolate'),
                                         ((1., 0.5), 'lame'),
                                         ((0.7, 0.), 'prolate'),
                                         ((0.5, 1.), 'oblate'),
                                         ((0.4, 1./3.), 'self-dual ellipsoidal'),
                                         ((0.8, 0.5), 'ellipsoidal')])
def test_face_of_blowup(chart, face):
    assert faceOfBlowup(BlowupChart(*chart))==face



@pytest.mark.parametrize('chart', [(0.1, 0.5), (1.2, 0.5), (0.5, -0.1)])
def test_face_of_blowup_rejects(chart):
    with pytest.raises(DomainError):
        faceOfBlowup(BlowupChart(*chart))



def test_parameter_action_map():
    np.testing.assert_allclose(parameterActionMap(1., 2.), (0.5, 0.5))
    j1, j3 = parameterActionMap(4., 7.)
    assert 0.<j1<1. and 0.<j3<1.
    assert j1 + j3<1.



EDGES = [(SystemSpec.ellipsoidal((1., 2., 5., 8.), 1.), Family.PROLATE),
         (SystemSpec.ellipsoidal((1., 2., 5., 8.), 1.), Family.OBLATE),
         (SystemSpec.ellipsoidal((1., 2., 5., 8.), 1.), Family.LAME),
         (SystemSpec.ellipsoidal((1., 2., 5., 8.), 1.), Family.CYLINDRICAL),
         (SystemSpec.oblate(2.4, 1.), Family.SPHERICAL23),
         (SystemSpec.lame((0.4, 1.3, 3.2), 1.), Family.SPHERICAL23),
         (SystemSpec.prolate(2.4, 1.), Family.SPHERICAL23)]



@pytest.mark.parametrize('source, target', EDGES, ids=lambda v: v.value if isinstance(v, Family) else v.family.value)
def test_degeneration_is_linear(source, target):
    order, defects = degenerationOrder(source, target, n=500, seed=4)
    assert order==pytest.approx(1., abs=0.1)
    assert defects[0]>defects[-1]



def test_degeneration_limit_values_shape(ellipsoidal, leaf):
    path = degenerationPath(ellipsoidal, Family.PROLATE, 1e-3)
    assert path.limitValues(leaf).shape==(len(leaf), 2)
    assert path.targetValues(leaf).shape==(len(leaf), 2)



def test_degeneration_rejects(ellipsoidal, prolate):
    with pytest.raises(DomainError):
        degenerationPath(ellipsoidal, Family.PROLATE, 0.)
    with pytest.raises(DomainError):
        degenerationPath(ellipsoidal, Family.CYLINDRICAL, 2.)
    with pytest.raises(DomainError):
        degenerationPath(prolate, Family.LAME, 1e-3)



def test_prolate_degeneration_relabels(leaf):
    path = degenerationPath(SystemSpec.prolate(2.4, 1.), Family.SPHERICAL23, 1e-3)
    assert path.source.b==pytest.approx(1.001)
    L = relabelBivector(leaf, path.order)
    np.testing.assert_allclose(L[:, 5], leaf[:, 3])
    np.testing.assert_allclose(np.sum(L[:, :3]**2, axis=1), np.sum(leaf[:, :3]**2, axis=1))
    np.testing.assert_allclose(np.sum(L**2, axis=1), np.sum(leaf**2, axis=1))
