# This Python file uses the following encoding: utf-8
import numpy as np
import pytest

from staeckels3.sources.dynamics import (LNAMES, Trajectory, eulerSubstructureCheck, geodesicField,
                                         integrateGeodesic, integrateReduced, laxResidual, toricFlow,
                                         toricImage)
from staeckels3.sources.errors import DomainError
from staeckels3.sources.functions import getRng, sampleCotangent
from staeckels3.sources.so4Core import CotangentPoint, buildIntegrals
from staeckels3.sources.systemSpec import SystemSpec

SPECS = [SystemSpec.ellipsoidal((1., 2., 5., 8.), 1.),
         SystemSpec.prolate(2.4, 1.),
         SystemSpec.oblate(2.4, 1.),
         SystemSpec.lame((0.4, 1.3, 3.2), 1.),
         SystemSpec.spherical23(1.),
         SystemSpec.cylindrical(1.)]

ids = [s.family.value for s in SPECS]



@pytest.fixture(scope='module')
def start():
    x, y = sampleCotangent(1, getRng(11), 1.)
    return CotangentPoint(x[0], y[0])



def test_geodesic_field_is_tangent(start):
    field = geodesicField(0., start.state)
    assert start.x@field[:4]==pytest.approx(0., abs=1e-15)
    # d(x.y)/dt = y.y - y.y
    assert field[:4]@start.y + start.x@field[4:]==pytest.approx(0., abs=1e-15)



@pytest.mark.parametrize('spec', SPECS, ids=ids)
def test_geodesic_conservation(start, spec):
    trajectory = integrateGeodesic(start, 20., tol=1e-10, n=11, spec=spec)
    drift = trajectory.maxDrift()
    assert set(LNAMES)<=set(drift.index)
    assert set(f.name for f in buildIntegrals(spec))<=set(drift.index)
    assert drift.max()<1e-7



def test_great_circles_close(start):
    trajectory = integrateGeodesic(start, 2.*np.pi, tol=1e-11, n=5)
    np.testing.assert_allclose(trajectory.final, start.state, atol=1e-8)
    df = trajectory.toDataFrame()
    assert list(df.columns)==['t', 'x1', 'x2', 'x3', 'x4', 'y1', 'y2', 'y3', 'y4']



def test_integration_time(start):
    with pytest.raises(DomainError):
        integrateGeodesic(start, 0.)



@pytest.mark.parametrize('spec', SPECS, ids=ids)
def test_reduced_conservation(spec, leaf):
    f, g = buildIntegrals(spec)
    trajectory = integrateReduced(leaf[1], g, 5., tol=1e-11, n=11, spec=spec)
    assert trajectory.maxDrift().max()<1e-8*max(1., float(np.abs(g(leaf[1]))))
    assert trajectory.toDataFrame().columns[1:].tolist()==list(LNAMES)



@pytest.mark.parametrize('spec', SPECS, ids=ids)
def test_lax_form(spec, leaf):
    for F in buildIntegrals(spec):
        for L in leaf[:10]:
            assert laxResidual(L, F)<1e-12



def test_trajectory_validation():
    with pytest.raises(DomainError):
        Trajectory(np.array([0., 0.]), np.zeros((2, 6)), None)
    with pytest.raises(DomainError):
        Trajectory(np.array([0., 1.]), np.full((2, 6), np.nan), None)



def test_euler_substructure(lame, leaf):
    report = eulerSubstructureCheck(lame, leaf[2], T=5., n=21, seed=0)
    assert report.coupling<1e-12
    assert report.fieldResidual<1e-12
    assert report.trajectoryResidual<1e-7
    assert not report.singular
    assert report.rotationResidual<1e-12
    assert report.closure<1e-7



def test_euler_singular_locus(lame):
    report = eulerSubstructureCheck(lame, (1., 0., 0., 0., 0., 0.), T=1., n=5, seed=0)
    assert report.singular
    assert np.isnan(report.closure)



def test_euler_needs_lame(ellipsoidal, leaf):
    with pytest.raises(DomainError):
        eulerSubstructureCheck(ellipsoidal, leaf[0])



@pytest.mark.parametrize('which', ['X1', 'Y1'])
def test_toric_flows_are_periodic(which, leaf):
    trajectory = toricFlow(leaf[3], which, tol=1e-11)
    np.testing.assert_allclose(trajectory.final, leaf[3], atol=1e-8)
    with pytest.raises(DomainError):
        toricFlow(leaf[3], 'Z1')



def test_toric_image():
    df = toricImage(500, 1., seed=2)
    assert np.all(np.abs(df.X1)<=0.5 + 1e-12)
    assert np.all(np.abs(df.Y1)<=0.5 + 1e-12)
    assert np.all(np.abs(df.l12) + np.abs(df.l34)<=1. + 1e-12)
    np.testing.assert_allclose(np.abs(df.l12) + np.abs(df.l34), 2.*np.maximum(np.abs(df.X1), np.abs(df.Y1)), atol=1e-12)
