# This Python file uses the following encoding: utf-8
import numpy as np
import pytest

from staeckels3.sources.systemSpec import SystemSpec
from staeckels3.sources.verifySuite import (CheckResult, VerificationReport, _result, checkClosedForms,
                                            checkCommutation, checkHeight, checkOblateArc, checkPlucker,
                                            checkSumRule, checkToric, checkVertices, verify)



def test_result_threshold():
    assert _result('a', 1e-12, 1e-10).passed
    assert not _result('a', 1e-9, 1e-10).passed
    assert not _result('a', float('nan'), 1e-10).passed



def test_report_to_dict(cylindrical):
    report = VerificationReport(cylindrical, [CheckResult('a', True, np.float64(0.5), 1.),
                                             CheckResult('b', False, np.array([1, 2]), 1., 'too large')])
    d = report.toDict()
    assert not d['passed']
    assert d['a']==0.5
    assert d['b']==[1, 2]
    assert d['b.detail']=='too large'
    assert 'a.detail' not in d
    assert report.failures()==['b']



@pytest.mark.parametrize('spec', [SystemSpec.ellipsoidal((1., 2., 5., 8.), 1.),
                                  SystemSpec.lame((0.4, 1.3, 3.2), 1.)],
                         ids=['ellipsoidal', 'lame'])
def test_commutation(spec):
    assert checkCommutation(spec, n=500, seed=1).passed



def test_vertices(ellipsoidal):
    assert checkVertices(ellipsoidal).passed
    assert checkVertices(SystemSpec.ellipsoidal((1., 2., 5., 8.), 1.5)).passed



def test_plucker():
    assert all(check.passed for check in checkPlucker(n=100, seed=2))



def test_toric():
    assert all(check.passed for check in checkToric(n=10, twoH=2., seed=3))



def test_sum_rule(cylindrical):
    assert checkSumRule(cylindrical, 6, threads=1).passed



def test_height(prolate):
    assert checkHeight(prolate).passed



def test_oblate_arc(oblate):
    assert checkOblateArc(oblate).passed



@pytest.mark.slow
def test_verify_spherical(spherical):
    report = verify(spherical, grid=5, duration=20., seed=0, threads=1)
    assert report.passed, report.failures()
    names = {check.name for check in report.checks}
    assert {'commutation', 'sumRule', 'conservation.geodesic', 'plucker.minors'}<=names



@pytest.mark.slow
def test_verify_reports_errors(monkeypatch, cylindrical):
    from staeckels3.sources import verifySuite
    from staeckels3.sources.errors import StepSizeUnderflowError

    def fail(*args, **kwargs):
        raise StepSizeUnderflowError('too stiff')

    monkeypatch.setattr(verifySuite, 'checkConservation', fail)
    report = verify(cylindrical, grid=5, duration=10., seed=0, threads=1)
    assert not report.passed
    errors = [check for check in report.checks if check.name.startswith('error.')]
    assert len(errors)==1
    assert errors[0].detail=='too stiff'



@pytest.mark.slow
def test_closed_forms(ellipsoidal):
    results = {check.name : check for check in checkClosedForms(ellipsoidal)}
    assert 'closedForm.HHlimit' in results
    assert all(check.passed for check in results.values()), [name for name, check in results.items() if not check.passed]
