# This Python file uses the following encoding: utf-8
from fractions import Fraction
import numpy as np
import pytest

from staeckels3.sources.criticalStructure import (OUTSIDE, Chamber, RankOneType, SingularityType,
                                                  bifurcationSet, chamber, classify, criticalPoints,
                                                  fibreDescription, momentumMapRank, s2Bifurcation,
                                                  uhlenbeck, uhlenbeckIdentityResidual, vertexType)
from staeckels3.sources.errors import DomainError
from staeckels3.sources.systemSpec import SystemSpec

SPECS = [SystemSpec.ellipsoidal((1., 2., 5., 8.), 1.),
         SystemSpec.prolate(2.4, 1.),
         SystemSpec.oblate(2.4, 1.),
         SystemSpec.lame((0.4, 1.3, 3.2), 1.),
         SystemSpec.spherical23(1.),
         SystemSpec.cylindrical(1.)]

ids = [s.family.value for s in SPECS]

ELLIPSOIDALVERTICES = {'d12' : (3, 2),
                       'd13' : (6, 5),
                       'd14' : (9, 8),
                       'd23' : (7, 10),
                       'd24' : (10, 16),
                       'd34' : (13, 40),
                       'd2'  : (4, 4),
                       'd3'  : (10, 25)}

ELLIPSOIDALTYPES = {'d12' : SingularityType.EE,
                    'd14' : SingularityType.EE,
                    'd34' : SingularityType.EE,
                    'd13' : SingularityType.EH,
                    'd24' : SingularityType.EH,
                    'd23' : SingularityType.HH,
                    'd2'  : SingularityType.DEGENERATE,
                    'd3'  : SingularityType.DEGENERATE}



def test_ellipsoidal_vertices_are_exact(ellipsoidal):
    diagram = bifurcationSet(ellipsoidal, segments=False)
    assert {v.name for v in diagram.vertices}==set(ELLIPSOIDALVERTICES)
    for name, (x, y) in ELLIPSOIDALVERTICES.items():
        assert diagram.vertex(name).exact==(Fraction(x), Fraction(y))



def test_unknown_vertex(ellipsoidal):
    with pytest.raises(DomainError):
        bifurcationSet(ellipsoidal, segments=False).vertex('d15')



@pytest.mark.slow
@pytest.mark.parametrize('name, expected', ELLIPSOIDALTYPES.items())
def test_ellipsoidal_vertex_types(ellipsoidal, name, expected):
    assert vertexType(ellipsoidal, name)==expected



@pytest.mark.parametrize('spec, name, expected', [(SystemSpec.prolate(2.4, 1.), 'ff', SingularityType.FF),
                                                  (SystemSpec.lame((0.4, 1.3, 3.2), 1.), 'T123', SingularityType.SPHERICAL),
                                                  (SystemSpec.spherical23(1.), 'D23', SingularityType.SPHERICAL)])
def test_other_vertex_types(spec, name, expected):
    assert vertexType(spec, name)==expected



@pytest.mark.parametrize('spec', SPECS, ids=ids)
def test_critical_points_are_critical(spec):
    diagram = bifurcationSet(spec, segments=False)
    for curve in diagram.curves:
        lo, hi = curve.tRange
        t = lo + 0.37*(hi - lo)
        critical = criticalPoints(spec, curve.value(t), n=6)
        assert critical.kernelResidual()<1e-10
        assert np.all(critical.ranks()<=1)



@pytest.mark.parametrize('spec', SPECS, ids=ids)
def test_vertices_have_rank_zero_points(spec):
    for vertex in bifurcationSet(spec, segments=False).vertices:
        if vertex.fibre=='S1':
            # tangency of two rank one curves
            continue
        critical = criticalPoints(spec, vertex.value, n=6)
        assert critical.kernelResidual()<1e-10
        assert np.min(critical.ranks())==0



def test_focus_focus_points(prolate):
    critical = criticalPoints(prolate, (0., 1.))
    points = critical.lowestRank()
    np.testing.assert_allclose(sorted(points[:, 2]), (-1., 1.))
    np.testing.assert_allclose(np.delete(points, 2, axis=1), 0., atol=1e-15)



def test_critical_points_off_the_set(ellipsoidal):
    with pytest.raises(DomainError, match='off the bifurcation set'):
        criticalPoints(ellipsoidal, (7., 10.05))



def test_regular_point(ellipsoidal, leaf):
    assert momentumMapRank(leaf[0], ellipsoidal)==2
    assert classify(leaf[0], ellipsoidal)==SingularityType.REGULAR



@pytest.mark.parametrize('spec', SPECS, ids=ids)
def test_segments_cover_the_curves(spec):
    for curve in bifurcationSet(spec).curves:
        if not curve.segments:
            continue
        assert curve.segments[0].lo==pytest.approx(curve.tRange[0])
        assert curve.segments[-1].hi==pytest.approx(curve.tRange[1])
        for a, b in zip(curve.segments[:-1], curve.segments[1:]):
            assert a.hi==b.lo
            assert a.type!=b.type



@pytest.mark.parametrize('value, expected', [((7., 10.05), Chamber((2, 2), 4)),
                                             ((7., 9.95), Chamber((1, 3), 2)),
                                             ((5., 5.), Chamber((1, 2), 2)),
                                             ((0., 0.), OUTSIDE)])
def test_ellipsoidal_chambers(ellipsoidal, value, expected):
    assert chamber(value, ellipsoidal)==expected



def test_other_chambers(prolate, oblate, lame, cylindrical):
    assert chamber((0., 0.5), prolate)==Chamber('T2', 1)
    assert chamber((0., 3.), prolate)==OUTSIDE
    assert chamber((0., 0.5), oblate)==Chamber('I', 1)
    assert chamber((0., 1.5), oblate)==Chamber('II', 2)
    assert chamber((0.5, 0.3), lame)==Chamber('below-L2', 2)
    assert chamber((0.5, 1.), lame)==Chamber('above-L2', 2)
    assert chamber((0.3, 0.3), cylindrical)==Chamber('T2', 1)
    assert chamber((0.8, 0.3), cylindrical)==OUTSIDE



def test_fibres(ellipsoidal):
    assert fibreDescription((7., 10.), ellipsoidal)=='C2xC2 (contains 4S1)'
    assert fibreDescription((7., 10.05), ellipsoidal)=='4T2'
    assert fibreDescription((5., 5.), ellipsoidal)=='2T2'
    assert fibreDescription((0., 0.), ellipsoidal)=='empty'



def test_uhlenbeck(ellipsoidal, leaf):
    for L in leaf[:20]:
        assert np.sum(uhlenbeck(L, ellipsoidal))==pytest.approx(0., abs=1e-12)
        assert uhlenbeckIdentityResidual(L, ellipsoidal, (0., 3., 6.5, 11.))<1e-10



def test_uhlenbeck_limits(oblate, lame, prolate, leaf):
    assert uhlenbeck(leaf[0], oblate).shape==(4,)
    assert uhlenbeck(leaf[0], lame).shape==(4,)
    with pytest.raises(DomainError):
        uhlenbeck(leaf[0], prolate)



def test_s2_bifurcation():
    result = s2Bifurcation((1., 2., 5.))
    np.testing.assert_allclose(result.criticalValues, (1., 2., 5.))
    np.testing.assert_allclose(result.segment, (1., 5.))
    assert result.types==(RankOneType.ELLIPTIC, RankOneType.HYPERBOLIC, RankOneType.ELLIPTIC)

    result = s2Bifurcation(None, 'spherical')
    assert result.criticalValues[0]==0.
    assert result.types[0]==RankOneType.DEGENERATE

    with pytest.raises(DomainError):
        s2Bifurcation((1., 5., 2.))
