# This Python file uses the following encoding: utf-8
from fractions import Fraction
from typing import Any, Callable, Dict, List, NamedTuple, Optional
import logging
import numpy as np

from .config import loadConfigCurrent
config = loadConfigCurrent()
from .actions import (actionGrid, closedFormVertices, hyperbolicLimit, interiorArcs, semitoricPolygon,
                      vertexActionTable)
from .criticalStructure import SingularityType, bifurcationSet, vertexType
from .dynamics import eulerSubstructureCheck, integrateGeodesic, integrateReduced, toricFlow, toricImage
from .errors import StaeckelError
from .functions import getRng, sampleCotangent, sampleLeaf
from .grassmann import minors3, planeFromBivector, plucker, randomPlanes, subspaceAngle
from .monodromy import monodromy
from .paramSpace import degenerationOrder
from .so4Core import CotangentPoint, buildIntegrals, lpStructure, toFraction
from .systemSpec import Family, SystemSpec

logger = logging.getLogger(__name__)

MONODROMY = np.array([[1, 2, 0],
                      [0, 1, 0],
                      [0, -2, 1]])

# Lowest rank singularity type of the vertices that carry one
VERTEXTYPES = {Family.ELLIPSOIDAL : {'d12' : SingularityType.EE,
                                     'd14' : SingularityType.EE,
                                     'd34' : SingularityType.EE,
                                     'd13' : SingularityType.EH,
                                     'd24' : SingularityType.EH,
                                     'd23' : SingularityType.HH,
                                     'd2'  : SingularityType.DEGENERATE,
                                     'd3'  : SingularityType.DEGENERATE},
               Family.PROLATE     : {'ff'   : SingularityType.FF},
               Family.LAME        : {'T123' : SingularityType.SPHERICAL},
               Family.SPHERICAL23 : {'D23'  : SingularityType.SPHERICAL}}

# Edges of the degeneration graph leaving each family
DEGENERATIONS = {Family.ELLIPSOIDAL : (Family.PROLATE, Family.OBLATE, Family.LAME, Family.CYLINDRICAL),
                 Family.OBLATE      : (Family.SPHERICAL23,),
                 Family.LAME        : (Family.SPHERICAL23,),
                 Family.PROLATE     : (Family.SPHERICAL23,)}



class CheckResult(NamedTuple):
    """
    Outcome of one check: the measured value, passed when below threshold.
    """

    name: str
    passed: bool
    value: Any
    threshold: float
    detail: str = ''



class VerificationReport(NamedTuple):

    spec: SystemSpec
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> List[str]:
        return [check.name for check in self.checks if not check.passed]

    def toDict(self) -> Dict[str, Any]:
        """
        Return a flat dictionary, one key per check and measured quantity,
        ready for json.dump.
        """

        d = {'system'  : self.spec.describe(),
             'family'  : self.spec.family.value,
             'params'  : list(self.spec.params),
             'twoH'    : self.spec.casimirLevel,
             'passed'  : self.passed}
        for check in self.checks:
            value = check.value
            if isinstance(value, np.ndarray):
                value = value.tolist()
            elif isinstance(value, (np.floating, np.integer)):
                value = value.item()
            d[check.name] = value
            d[check.name + '.passed'] = check.passed
            d[check.name + '.threshold'] = check.threshold
            if check.detail:
                d[check.name + '.detail'] = check.detail
        return d



def _result(name: str,
            value: float,
            threshold: float,
            detail: str='') -> CheckResult:

    passed = bool(np.isfinite(value) and value<threshold)
    if passed:
        logger.info('{}: {:.3e} < {:.1e}'.format(name, value, threshold))
    else:
        logger.error('{} failed: {:.3e} >= {:.1e} {}'.format(name, value, threshold, detail))
    return CheckResult(name, passed, float(value), threshold, detail)



###########################################################################
#
#
#                           Checks
#
#
###########################################################################



def checkCommutation(spec: SystemSpec,
                     n: int=10000,
                     seed: Optional[int]=None) -> CheckResult:
    """
    Return the largest relative bracket {eta1, eta2} over n leaf points.
    """

    L = sampleLeaf(n, getRng(seed), spec.twoH)
    f, g = buildIntegrals(spec)
    gf, gg = f.gradient(L), g.gradient(L)
    # B_L is linear in L
    basis = np.array([lpStructure(e) for e in np.eye(6)])
    bracket = np.einsum('ni,nk,kij,nj->n', gf, L, basis, gg)
    scale = np.linalg.norm(gf, axis=1)*np.linalg.norm(gg, axis=1)*np.linalg.norm(L, axis=1)
    return _result('commutation', float(np.max(np.abs(bracket)/np.maximum(scale, 1e-300))), 1e-10)



def checkVertices(spec: SystemSpec) -> CheckResult:
    """
    Return the number of ellipsoidal vertices differing from their exact
    value (2h(e_i + e_j), 2h e_i e_j) and tangencies (4h e_i, 2h e_i^2).
    """

    h = toFraction(spec.twoH)
    e = [toFraction(ei) for ei in spec.e]
    expected = {'d{}{}'.format(i+1, j+1) : (h*(e[i] + e[j]), h*e[i]*e[j]) for i in range(4) for j in range(i+1, 4)}
    expected.update({'d{}'.format(i+1) : (2*h*e[i], h*e[i]**2) for i in (1, 2)})

    diagram = bifurcationSet(spec, segments=False)
    wrong = [v.name for v in diagram.vertices if v.name in expected and tuple(Fraction(c) for c in v.exact)!=expected[v.name]]
    found = {v.name for v in diagram.vertices}
    missing = sorted(set(expected) - found)
    return _result('vertices', len(wrong) + len(missing), 0.5, ' '.join(wrong + missing))



def checkClassification(spec: SystemSpec) -> CheckResult:
    """
    Return the number of vertices whose singularity type differs from the
    expected one.
    """

    wrong = []
    for name, expected in VERTEXTYPES[spec.family].items():
        found = vertexType(spec, name)
        if found!=expected:
            wrong.append('{}:{}!={}'.format(name, found.value, expected.value))
    return _result('classification', len(wrong), 0.5, ' '.join(wrong))



def checkSumRule(spec: SystemSpec,
                 n: int=20,
                 threads: Optional[int]=None) -> CheckResult:

    grid = actionGrid(spec, n, threads)
    defect = np.abs(grid[['J1', 'J2', 'J3']].sum(axis=1) - np.sqrt(spec.twoH))
    return _result('sumRule', float(defect.max()) if len(grid) else float('nan'), 1e-8, '{} values'.format(len(grid)))



def checkClosedForms(spec: SystemSpec) -> List[CheckResult]:
    """
    Compare the quadrature of the actions at the vertices of the action
    triangle with their closed form.

    The hyperbolic-hyperbolic point is also reached by extrapolation from
    its two neighbouring chambers.
    """

    thresholds = {'A31' : 1e-9, 'A12' : 1e-9, 'A21' : 1e-8, 'A22' : 1e-8, 'HH' : 1e-5}
    table = vertexActionTable(spec)
    results = [_result('closedForm.{}'.format(row.vertex), row.residual, thresholds[row.vertex]) for row in table.itertuples()]

    limit, _ = hyperbolicLimit(spec)
    residual = float(np.max(np.abs(np.array(limit) - np.array(closedFormVertices(spec)['HH']))))
    results.append(_result('closedForm.HHlimit', residual, 1e-6))
    return results



def checkMonodromy(spec: SystemSpec,
                   threads: Optional[int]=None) -> List[CheckResult]:
    """
    Transport the period lattice around the focus-focus value, and around a
    loop that does not encircle it.
    """

    around = monodromy(spec, threads=threads)
    defect = int(np.max(np.abs(around.matrix - MONODROMY)))
    results = [CheckResult('monodromy', defect==0 and around.residual<1e-2, around.matrix, 1e-2,
                           'residual {:.3e}'.format(around.residual))]
    logger.log(logging.INFO if results[0].passed else logging.ERROR, 'monodromy: {}'.format(around.matrix.tolist()))

    contractible = monodromy(spec, center=(0., 0.4*spec.twoH), radius=0.2*spec.twoH, threads=threads)
    defect = int(np.max(np.abs(contractible.matrix - np.eye(3, dtype=int))))
    results.append(CheckResult('monodromyContractible', defect==0, contractible.matrix, 1e-2,
                               'residual {:.3e}'.format(contractible.residual)))
    return results



def checkHeight(spec: SystemSpec) -> CheckResult:

    polygon = semitoricPolygon(spec)
    return _result('height', abs(polygon.heightQuadrature - polygon.height), 1e-6,
                   'height {:.10f}'.format(polygon.height))



def checkDegenerations(spec: SystemSpec,
                       seed: Optional[int]=None) -> List[CheckResult]:
    """
    Return the distance to one of the fitted slopes of the defects along
    each degeneration leaving the family.
    """

    results = []
    for target in DEGENERATIONS.get(spec.family, ()):
        order, defects = degenerationOrder(spec, target, n=1000, seed=seed)
        results.append(_result('degeneration.{}'.format(target.value), abs(order - 1.), 0.1,
                               'defects {}'.format(['{:.3e}'.format(d) for d in defects])))
    return results



def checkConservation(spec: SystemSpec,
                      T: float=1000.,
                      tol: float=1e-10,
                      seed: Optional[int]=None) -> List[CheckResult]:
    """
    Return the largest drift of the conserved quantities along the geodesic
    flow and along the reduced flow of the first integral.
    """

    x, y = sampleCotangent(1, getRng(seed), spec.twoH)
    p0 = CotangentPoint(x[0], y[0], tol=1e-10)
    geodesic = integrateGeodesic(p0, T, tol, n=11, spec=spec)
    L0 = p0.angularMomenta()
    reduced = integrateReduced(L0, buildIntegrals(spec)[0], T, tol, n=11, spec=spec)

    scale = 1e-8*max(1., spec.twoH)
    return [_result('conservation.geodesic', float(geodesic.maxDrift().max()), scale),
            _result('conservation.reduced', float(reduced.maxDrift().max()), scale)]



def checkPlucker(n: int=1000,
                 seed: Optional[int]=None) -> List[CheckResult]:
    """
    Return the largest angle between a plane and the plane rebuilt from its
    bivector, and the largest 3x3 minor of M_L on the leaf.
    """

    angle = max(subspaceAngle(p, planeFromBivector(plucker(p))) for p in randomPlanes(n, seed))
    L = sampleLeaf(n, getRng(seed))
    minor = max(float(np.max(np.abs(minors3(Li)))) for Li in L)
    return [_result('plucker.roundTrip', angle, 1e-10),
            _result('plucker.minors', minor, 1e-12)]



def checkToric(n: int=100,
               twoH: float=1.,
               seed: Optional[int]=None) -> List[CheckResult]:
    """
    Return the closure distance of the flows of X1 and Y1 after 2pi, and the
    defect of the (X1, Y1) square and of the (l12, l34) diamond.
    """

    L = sampleLeaf(n, getRng(seed), twoH)
    closure = 0.
    for L0 in L:
        for which in ('X1', 'Y1'):
            closure = max(closure, float(np.max(np.abs(toricFlow(L0, which, n=2).final - L0))))

    image = toricImage(10*n, twoH, seed)
    r = np.sqrt(twoH)
    side = float(np.max(np.abs(image[['X1', 'Y1']].to_numpy())))
    diamond = float(np.max(np.abs(image.l12) + np.abs(image.l34)))
    # Excess over the polytope, and how far its boundary stays unreached
    square = max(side - r/2., 0.) + max(0.95*r/2. - side, 0.)
    return [_result('toric.closure', closure, 1e-8),
            _result('toric.square', square, 1e-12),
            _result('toric.diamond', max(diamond - r, 0.), 1e-12)]



def checkOblateArc(spec: SystemSpec) -> CheckResult:

    arc = interiorArcs(spec, n=11)[0]
    return _result('oblateArc', float(np.max(np.abs(arc.actions - arc.closedForm))), 1e-5,
                   'O1 {} O2 {}'.format(np.round(arc.end, 8).tolist(), np.round(arc.start, 8).tolist()))



def checkEuler(spec: SystemSpec,
               seed: Optional[int]=None) -> CheckResult:

    L0 = sampleLeaf(1, getRng(seed), spec.twoH)[0]
    report = eulerSubstructureCheck(spec, L0, seed=seed)
    value = max(report.coupling, report.fieldResidual, report.trajectoryResidual)
    if not report.singular:
        value = max(value, report.rotationResidual, report.closure)
    return _result('euler', value, 1e-8)



###########################################################################
#
#
#                           Suite
#
#
###########################################################################



def verify(spec: SystemSpec,
           grid: int=20,
           duration: float=1000.,
           seed: Optional[int]=None,
           threads: Optional[int]=None) -> VerificationReport:
    """
    Run the checks relevant to the family of a system.

    A check that raises is reported as failed with the error message.

    Parameters
    ----------
    spec : SystemSpec
    grid : int
        Resolution of the action grid of the sum rule.
    duration : float
        Integration time of the conservation checks.
    seed : int, optional
        Seed of every random sampling, config['seed'] by default.
    threads : int, optional
        Size of the worker pools.
    """

    seed = int(config['seed']) if seed is None else seed
    family = spec.family

    suite: List[Callable[[], Any]] = [lambda: checkCommutation(spec, seed=seed),
                                      lambda: checkSumRule(spec, grid, threads),
                                      lambda: checkConservation(spec, duration, seed=seed),
                                      lambda: checkPlucker(seed=seed)]
    if family in VERTEXTYPES:
        suite.append(lambda: checkClassification(spec))
    if family in DEGENERATIONS:
        suite.append(lambda: checkDegenerations(spec, seed))

    if family==Family.ELLIPSOIDAL:
        suite += [lambda: checkVertices(spec),
                  lambda: checkClosedForms(spec)]
    elif family==Family.PROLATE:
        suite += [lambda: checkMonodromy(spec, threads),
                  lambda: checkHeight(spec)]
    elif family==Family.OBLATE:
        suite.append(lambda: checkOblateArc(spec))
    elif family==Family.LAME:
        suite.append(lambda: checkEuler(spec, seed))
    elif family==Family.CYLINDRICAL:
        suite.append(lambda: checkToric(twoH=spec.twoH, seed=seed))

    checks = []
    for run in suite:
        try:
            outcome = run()
        except StaeckelError as e:
            logger.error('Check aborted: {}'.format(e))
            outcome = CheckResult('error.{}'.format(len(checks)), False, float('nan'), 0., str(e))
        checks.extend(outcome if isinstance(outcome, list) else [outcome])

    report = VerificationReport(spec, checks)
    logger.info('{}: {} checks, {} failed'.format(spec.describe(), len(checks), len(report.failures())))
    return report
