# This Python file uses the following encoding: utf-8
import logging
import numpy as np
import pytest

from staeckels3.sources.actions import (ActionTriple, actionGrid, actionTriple, boundaryArcs,
                                        closedFormVertices, collinearityResidual, derivativeJump,
                                        focusFocusActions, hyperbolicLimit, interiorArcs, oblateArc,
                                        resolveCharacteristic, semitoricPolygon, valueGrid,
                                        vertexActionTable)
from staeckels3.sources.errors import DomainError, NotInImageError
from staeckels3.sources.quadrature import IntegrationQuadrature
from staeckels3.sources.systemSpec import SystemSpec

SPECS = [SystemSpec.ellipsoidal((1., 2., 5., 8.), 1.),
         SystemSpec.prolate(2.4, 1.),
         SystemSpec.oblate(2.4, 1.),
         SystemSpec.lame((0.4, 1.3, 3.2), 1.),
         SystemSpec.spherical23(1.),
         SystemSpec.cylindrical(1.),
         SystemSpec.ellipsoidal((1., 2., 5., 8.), 2.5)]

ids = ['{}-{:g}'.format(s.family.value, s.twoH) for s in SPECS]

CLOSEDFORMS = {'A21' : (0.0996775, 0., 0.9003225),
               'A22' : (0.7326614, 0., 0.2673386),
               'A31' : (1./3., 2./3., 0.),
               'A12' : (0., 0.5, 0.5)}



def test_action_triple():
    J = ActionTriple.scaled((0.25, 0.25, 0.5), 4.)
    assert J==(0.5, 0.5, 1.)
    assert J.total==2.



@pytest.mark.parametrize('spec', SPECS, ids=ids)
def test_sum_rule(spec):
    grid = valueGrid(spec, 6)
    assert len(grid)>0
    for x, y in zip(grid.iloc[:, 0], grid.iloc[:, 1]):
        J = actionTriple((x, y), spec)
        assert J.total==pytest.approx(np.sqrt(spec.twoH), abs=1e-8)
        assert min(J)>=-1e-12



@pytest.mark.slow
@pytest.mark.parametrize('spec', SPECS[:5], ids=ids[:5])
def test_sum_rule_fine_grid(spec):
    grid = valueGrid(spec, 20)
    J = np.array([actionTriple((x, y), spec) for x, y in zip(grid.iloc[:, 0], grid.iloc[:, 1])])
    np.testing.assert_allclose(J.sum(axis=1), np.sqrt(spec.twoH), atol=1e-8)
    assert J.min()>=-1e-12



@pytest.mark.parametrize('spec, value', [(SystemSpec.prolate(2.4, 1.), (1e-6, 0.5)),
                                         (SystemSpec.oblate(2.4, 1.), (1e-6, 0.99))],
                         ids=['prolate', 'oblate'])
def test_actions_next_to_double_pole(caplog, spec, value):
    quadrature = IntegrationQuadrature()
    with caplog.at_level(logging.WARNING):
        J = actionTriple(value, spec, quadrature)
    assert not quadrature.depthReached
    assert not [r for r in caplog.records if r.levelno>=logging.WARNING]
    assert J.total==pytest.approx(1., abs=1e-9)



def test_outside_the_image(ellipsoidal):
    with pytest.raises(NotInImageError):
        actionTriple((0., 0.), ellipsoidal)



def test_cylindrical_actions(cylindrical):
    np.testing.assert_allclose(actionTriple((0.3, -0.4), cylindrical), (0.3, 0.3, 0.4))



@pytest.mark.parametrize('name', CLOSEDFORMS)
def test_closed_form_vertices(ellipsoidal, name):
    np.testing.assert_allclose(closedFormVertices(ellipsoidal)[name], CLOSEDFORMS[name], atol=1e-7)



def test_closed_forms_scale_with_level():
    closed = closedFormVertices(SystemSpec.ellipsoidal((1., 2., 5., 8.), 4.))
    np.testing.assert_allclose(closed['A31'], (2./3., 4./3., 0.))
    np.testing.assert_allclose(closed['A21'], 2.*np.array(CLOSEDFORMS['A21']), atol=1e-6)



def test_closed_forms_need_ellipsoidal(prolate):
    with pytest.raises(DomainError):
        closedFormVertices(prolate)



@pytest.mark.slow
def test_vertex_action_table(ellipsoidal):
    table = vertexActionTable(ellipsoidal).set_index('vertex')
    assert table.loc[['A31', 'A12'], 'residual'].max()<1e-9
    assert table.loc[['A21', 'A22'], 'residual'].max()<1e-8
    assert table.loc['HH', 'residual']<1e-5



@pytest.mark.slow
def test_resolve_characteristic(ellipsoidal):
    df = resolveCharacteristic(ellipsoidal)
    selected = df[df.selected]
    assert len(selected)==4
    assert set(selected[selected.action=='J1'].characteristic)=={'alpha1'}
    assert set(selected[selected.action=='J3'].characteristic)=={'alpha3'}
    assert selected.residual.max()<1e-8



def test_hyperbolic_limit(ellipsoidal):
    limit, df = hyperbolicLimit(ellipsoidal)
    np.testing.assert_allclose(limit, (0.24675171, 0.29887723, 0.45437105), atol=1e-6)
    np.testing.assert_allclose(limit, closedFormVertices(ellipsoidal)['HH'], atol=1e-6)
    assert limit.total==pytest.approx(1., abs=1e-6)
    assert len(df)==3
    gaps = np.abs(df.above1 - df.below1)
    assert gaps.iloc[-1]<gaps.iloc[0]
    # J1 is larger in the chamber above d23
    assert df.above1.iloc[-1]>df.below1.iloc[-1]



def test_hyperbolic_limit_rejects(ellipsoidal, prolate):
    with pytest.raises(DomainError):
        hyperbolicLimit(prolate)
    with pytest.raises(DomainError):
        hyperbolicLimit(ellipsoidal, ladder=[1e-3, 1e-4])



def test_oblate_arc_ends(oblate):
    lstar = np.sqrt(1.4/2.4)
    np.testing.assert_allclose(oblateArc(0., oblate)[0], (0.44669962, 0.55330038, 0.), atol=1e-8)
    np.testing.assert_allclose(oblateArc(lstar, oblate)[0], (0.23623738, 0., 0.76376262), atol=1e-8)



def test_oblate_arc_quadrature(oblate):
    arc, = interiorArcs(oblate, n=6)
    np.testing.assert_allclose(arc.actions, arc.closedForm, atol=1e-5)



def test_lame_arc(lame):
    arc, = interiorArcs(lame, n=6)
    np.testing.assert_allclose(arc.end, (0., 0.38375093, 0.61624907), atol=1e-5)
    assert collinearityResidual(arc.closedForm)<1e-12
    assert collinearityResidual(arc.actions)<1e-5



def test_ellipsoidal_arcs_cross(ellipsoidal):
    gamma1, gamma2 = interiorArcs(ellipsoidal, n=5)
    assert gamma1.start==closedFormVertices(ellipsoidal)['A21']
    assert gamma2.end==closedFormVertices(ellipsoidal)['A22']
    np.testing.assert_allclose(gamma1.actions.sum(axis=1), 1., atol=1e-8)
    np.testing.assert_allclose(gamma2.actions.sum(axis=1), 1., atol=1e-8)



def test_no_interior_arcs(cylindrical):
    assert interiorArcs(cylindrical)==[]



def test_collinearity_residual():
    points = np.array([[0., 0., 0.], [1., 1., 1.], [2., 2., 2.]])
    assert collinearityResidual(points)==0.
    points[1] = (1., 1., 1. + np.sqrt(12.))
    assert collinearityResidual(points)==pytest.approx(np.sqrt(8.)/np.sqrt(12.))



def test_boundary_arcs(spherical):
    df = boundaryArcs(spherical, n=7, threads=1)
    assert list(df.columns)==['curve', 't', 'x', 'y', 'J1', 'J2', 'J3', 'color']
    np.testing.assert_allclose(df[['J1', 'J2', 'J3']].sum(axis=1), 1., atol=1e-8)



def test_value_grid_rejects_resolution(ellipsoidal):
    with pytest.raises(DomainError):
        valueGrid(ellipsoidal, 1)



def test_action_grid(cylindrical):
    grid = actionGrid(cylindrical, 7, threads=1)
    assert list(grid.columns)==['l12', 'l34', 'chamber', 'multiplicity', 'J1', 'J2', 'J3']
    np.testing.assert_allclose(grid[['J1', 'J2', 'J3']].sum(axis=1), 1., atol=1e-12)
    np.testing.assert_allclose(grid.J1, np.abs(grid.l12))



def test_focus_focus_actions(prolate):
    np.testing.assert_allclose(focusFocusActions(prolate), (0.44669962, 0., 0.55330038), atol=1e-8)
    with pytest.raises(DomainError):
        focusFocusActions(SystemSpec.oblate(2.4, 1.))



@pytest.mark.parametrize('g, kappa', [(0.5, (0., 1.)), (1.5, (1., 0.))])
def test_derivative_jump(prolate, g, kappa):
    np.testing.assert_allclose(derivativeJump(g, prolate), kappa, atol=1e-2)



def test_semitoric_polygon(prolate):
    polygon = semitoricPolygon(prolate)
    assert polygon.height==pytest.approx(0.55330038, abs=1e-8)
    assert polygon.heightQuadrature==pytest.approx(polygon.height, abs=1e-6)
    np.testing.assert_allclose(polygon.fakeCorner, (0., 1.))
    np.testing.assert_allclose(polygon.focus, (0., polygon.height))
