# This Python file uses the following encoding: utf-8
import numpy as np
import pytest

from staeckels3.sources.errors import DomainError, NotInImageError
from staeckels3.sources.functions import getRng, sampleCotangent, wedge
from staeckels3.sources.separation import (CurvilinearPoint, angularMomentaFromSp, cartesianSquares,
                                           conjugateMomenta, coordinateIntervals, factoredMomentumSq,
                                           fromCartesian, metricDiagonal, momentumFactors,
                                           motionIntervals, rootDiagram, separatedMomentumSq,
                                           stackelMatrix, toCartesian, turningRoots)
from staeckels3.sources.so4Core import casimirs, momentumMap
from staeckels3.sources.systemSpec import IntegralValues, SystemSpec

SPECS = [SystemSpec.ellipsoidal((1., 2., 5., 8.), 1.),
         SystemSpec.prolate(2.4, 1.),
         SystemSpec.oblate(2.4, 1.),
         SystemSpec.lame((0.4, 1.3, 3.2), 1.),
         SystemSpec.spherical23(1.),
         SystemSpec.cylindrical(1.)]

ids = [s.family.value for s in SPECS]



@pytest.fixture(scope='module')
def cotangent():
    return sampleCotangent(20, getRng(5), 1.)



def test_first_axis_coordinates(ellipsoidal):
    p = fromCartesian((1., 0., 0., 0.), ellipsoidal)
    np.testing.assert_allclose(p.s, (2., 5., 8.))



def test_off_sphere(ellipsoidal):
    with pytest.raises(DomainError):
        fromCartesian((1., 1., 0., 0.), ellipsoidal)



def test_curvilinear_point_bounds(ellipsoidal):
    with pytest.raises(DomainError):
        CurvilinearPoint((0.5, 3., 6.), ellipsoidal)
    with pytest.raises(DomainError):
        CurvilinearPoint((1.5, 3.), ellipsoidal)



@pytest.mark.parametrize('spec', SPECS, ids=ids)
def test_chart_is_on_sphere(spec):
    s = [0.5*(lo + hi) for lo, hi in coordinateIntervals(spec)]
    assert np.sum(cartesianSquares(s, spec))==pytest.approx(1., abs=1e-12)
    assert np.all(cartesianSquares(s, spec)>=0.)



@pytest.mark.parametrize('spec', SPECS, ids=ids)
def test_chart_round_trip(spec, cotangent):
    x, _ = cotangent
    for xi in x:
        np.testing.assert_allclose(toCartesian(fromCartesian(xi, spec)), np.abs(xi), atol=1e-8)



@pytest.mark.parametrize('spec', SPECS, ids=ids)
def test_stackel_matrix_matches_metric(spec, cotangent):
    x, _ = cotangent
    for xi in x[:5]:
        _, residual = stackelMatrix(spec, fromCartesian(xi, spec))
        assert residual<1e-8



@pytest.mark.parametrize('spec', SPECS, ids=ids)
def test_metric_identity(spec, cotangent):
    for xi, yi in zip(*cotangent):
        point, p = conjugateMomenta(xi, yi, spec)
        assert np.sum(p**2/metricDiagonal(point))==pytest.approx(yi@yi, rel=1e-8)



@pytest.mark.parametrize('spec', SPECS, ids=ids)
def test_separated_momenta(spec, cotangent):
    for xi, yi in zip(*cotangent):
        point, p = conjugateMomenta(xi, yi, spec)
        values = momentumMap(wedge(xi, yi), spec)
        for i, si in enumerate(point.s):
            assert separatedMomentumSq(si, i, values, spec)==pytest.approx(p[i]**2, rel=1e-6, abs=1e-9)



@pytest.mark.parametrize('spec', SPECS, ids=ids)
def test_angular_momenta_from_momenta(spec, cotangent):
    for xi, yi in zip(*cotangent):
        point, p = conjugateMomenta(xi, yi, spec)
        L = angularMomentaFromSp(point.s, p, spec, np.sign(xi))
        np.testing.assert_allclose(L, wedge(xi, yi), atol=1e-8)
        C1, C2 = casimirs(L)
        assert C1==pytest.approx(1., abs=1e-8)
        assert C2==pytest.approx(0., abs=1e-8)



@pytest.mark.parametrize('spec', SPECS[:3], ids=ids[:3])
def test_factored_momenta(spec, cotangent):
    for xi, yi in zip(*cotangent):
        point, p = conjugateMomenta(xi, yi, spec)
        values = momentumMap(wedge(xi, yi), spec)
        for interval in motionIntervals(values, spec):
            factors = momentumFactors(interval.coordinate, values, spec)
            if factors is None:
                continue
            si = point.s[interval.coordinate]
            p2 = factoredMomentumSq(factors, interval.lo, interval.hi, si - interval.lo, interval.hi - si)
            assert float(p2)==pytest.approx(p[interval.coordinate]**2, rel=1e-6, abs=1e-9)



def test_factored_momenta_families(lame, spherical):
    values = IntegralValues(0.3, 0.2, 1.)
    assert momentumFactors(1, values, SystemSpec.prolate(2.4, 1.)) is None
    assert momentumFactors(2, values, SystemSpec.oblate(2.4, 1.)) is None
    assert momentumFactors(0, values, lame) is None
    assert momentumFactors(0, values, spherical) is None
    assert momentumFactors(0, IntegralValues(7., 10., 1.), SystemSpec.ellipsoidal((1., 2., 5., 8.), 1.)).roots==(2., 5.)



def test_turning_roots(ellipsoidal):
    np.testing.assert_allclose(turningRoots(IntegralValues(7., 10., 1.), ellipsoidal), (2., 5.))
    with pytest.raises(NotInImageError) as info:
        turningRoots(IntegralValues(1., 10., 1.), ellipsoidal)
    assert info.value.value==IntegralValues(1., 10., 1.)



def test_motion_intervals(ellipsoidal):
    intervals = motionIntervals(IntegralValues(7., 10., 1.), ellipsoidal)
    assert [(m.lo, m.hi) for m in intervals]==[(1., 2.), (2., 5.), (5., 8.)]



def test_cylindrical_closed_forms(cylindrical):
    intervals = motionIntervals(IntegralValues(0.3, 0.4, 1.), cylindrical)
    closed = [m.closedForm for m in intervals]
    np.testing.assert_allclose(closed, (0.3, 0.3, 0.4))



def test_momentum_at_pole(ellipsoidal):
    values = IntegralValues(7., 12., 1.)
    assert separatedMomentumSq(2., 0, values, ellipsoidal)==np.inf
    assert np.isfinite(separatedMomentumSq(1.5, 0, values, ellipsoidal))



def test_root_diagram(ellipsoidal):
    df = rootDiagram(IntegralValues(7., 12., 1.), ellipsoidal, n=50)
    assert list(df.columns)==['coordinate', 's', 'p2']
    assert len(df)==150
    assert np.all(np.isfinite(df.p2))
    # R(z) = (z - 3)(z - 4) vanishes inside the second interval
    second = df[df.coordinate==2]
    assert np.any(second.p2>0.) and np.any(second.p2<0.)
