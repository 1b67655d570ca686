# This Python file uses the following encoding: utf-8
import numpy as np
import pytest
from hypothesis import given, strategies as st

from staeckels3.sources.errors import DomainError
from staeckels3.sources.grassmann import (OrientedPlane, hodgeSplit, hodgeStar, minors3, plucker,
                                          pluckerMatrix, planeFromBivector, randomPlanes,
                                          subspaceAngle)
from staeckels3.sources.so4Core import casimirs, split

vectors = st.lists(st.floats(-5., 5., allow_nan=False), min_size=4, max_size=4)



@pytest.fixture(scope='module')
def planes():
    return randomPlanes(200, seed=8)



def test_plucker_lies_on_the_leaf(planes):
    for p in planes:
        C1, C2 = casimirs(plucker(p))
        assert C1==pytest.approx(1., abs=1e-12)
        assert C2==pytest.approx(0., abs=1e-12)



def test_plane_round_trip(planes):
    for p in planes:
        L = plucker(p)
        q = planeFromBivector(L)
        assert subspaceAngle(p, q)<1e-10
        np.testing.assert_allclose(plucker(q), L, atol=1e-10)



def test_plane_of_scaled_bivector(planes):
    L = plucker(planes[0])
    np.testing.assert_allclose(plucker(planeFromBivector(3.*L)), L, atol=1e-10)



def test_minors_vanish_on_planes(planes):
    for p in planes:
        assert np.max(np.abs(minors3(plucker(p))))<1e-12
        np.testing.assert_allclose(pluckerMatrix(plucker(p))@p.basis.T, 0., atol=1e-14)



def test_non_decomposable_bivector():
    L = np.array([1., 0., 0., 0., 0., 1.])
    assert np.max(np.abs(minors3(L)))>0.5
    with pytest.raises(DomainError, match='decomposable'):
        planeFromBivector(L)
    with pytest.raises(DomainError):
        planeFromBivector(np.zeros(6))



@given(st.lists(st.floats(-10., 10., allow_nan=False), min_size=6, max_size=6))
def test_hodge_split_matches_split(L):
    X, Y = hodgeSplit(L)
    np.testing.assert_allclose(X, split(L).X, atol=1e-12)
    np.testing.assert_allclose(Y, split(L).Y, atol=1e-12)
    np.testing.assert_allclose(hodgeStar(hodgeStar(L)), L)



@given(vectors, vectors)
def test_from_vectors(u, v):
    u, v = np.array(u), np.array(v)
    if np.linalg.norm(u)<1e-3 or np.linalg.norm(v - (u@v)/(u@u)*u)<1e-3*max(1., np.linalg.norm(v)):
        return
    p = OrientedPlane.fromVectors(u, v)
    np.testing.assert_allclose(p.basis@p.basis.T, np.eye(2), atol=1e-12)
    # same orientation as u^v
    w = u[:, None]*v[None, :] - v[:, None]*u[None, :]
    assert np.sum(w*(p.x[:, None]*p.y[None, :] - p.y[:, None]*p.x[None, :]))>0.



def test_degenerate_bases():
    with pytest.raises(DomainError):
        OrientedPlane.fromVectors((1., 0., 0., 0.), (2., 0., 0., 0.))
    with pytest.raises(DomainError):
        OrientedPlane.fromVectors((0., 0., 0., 0.), (1., 0., 0., 0.))
    with pytest.raises(DomainError):
        OrientedPlane((1., 0., 0., 0.), (1., 1., 0., 0.))



def test_subspace_angle():
    p = OrientedPlane((1., 0., 0., 0.), (0., 1., 0., 0.))
    q = OrientedPlane((1., 0., 0., 0.), (0., 0., 1., 0.))
    assert subspaceAngle(p, p)==pytest.approx(0., abs=1e-12)
    assert subspaceAngle(p, q)==pytest.approx(0.5*np.pi)
