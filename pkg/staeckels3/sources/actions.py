# This Python file uses the following encoding: utf-8
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union
import logging
import numpy as np
import pandas as pd

from .config import loadConfigCurrent
config = loadConfigCurrent()
from .criticalStructure import OUTSIDE, CurveKind, bifurcationSet, chamber
from .ellipticIntegrals import tangentialAction
from .errors import DomainError, NotInImageError
from .functions import powerLawFit
from .quadrature import IntegrationQuadrature
from .separation import (MotionInterval, factoredMomentumSq, momentumFactors, motionIntervals,
                         separatedMomentumSq)
from .systemSpec import Family, IntegralValues, SystemSpec
from .workers.sweepGrid import sweepGrid

logger = logging.getLogger(__name__)

ValueLike = Union[IntegralValues, Tuple[float, float], Sequence[float]]



class ActionTriple(NamedTuple):
    """
    The three actions of a torus, J1 + J2 + J3 = sqrt(2h).
    """

    J1: float
    J2: float
    J3: float

    @property
    def total(self) -> float:
        return self.J1 + self.J2 + self.J3

    @classmethod
    def scaled(cls, J: Sequence[float],
                    twoH: float) -> 'ActionTriple':
        return cls(*(float(np.sqrt(twoH)*j) for j in J))



def _values(value: ValueLike,
            spec: SystemSpec) -> IntegralValues:

    if isinstance(value, IntegralValues):
        return value
    x, y = value
    return IntegralValues(float(x), float(y), spec.twoH)



###########################################################################
#
#
#                           Quadrature of the actions
#
#
###########################################################################



def _intervalAction(interval: MotionInterval,
                    values: IntegralValues,
                    spec: SystemSpec,
                    quadrature: IntegrationQuadrature) -> float:
    """
    Return (2/pi) int_lo^hi sqrt(p^2) ds on one interval of motion.
    """

    if interval.closedForm is not None:
        return float(interval.closedForm)

    if interval.hi - interval.lo<=config['tolZeroInterval']:
        return 0.

    factors = momentumFactors(interval.coordinate, values, spec)
    if factors is not None:
        def factored(s, dlo, dhi):
            p2 = factoredMomentumSq(factors, interval.lo, interval.hi, dlo, dhi)
            return np.sqrt(np.clip(p2, 0., None))

        return 2./np.pi*quadrature.integrateSqrtEnds(factored, interval.lo, interval.hi, offsets=True)

    def integrand(s):
        p2 = np.array([separatedMomentumSq(si, interval.coordinate, values, spec) for si in s])
        # Gauss nodes never sit on a pole, p^2 < 0 only by rounding near a root
        return np.sqrt(np.clip(p2, 0., None))

    return 2./np.pi*quadrature.integrateSqrtEnds(integrand, interval.lo, interval.hi)



def actionTriple(value: ValueLike,
                 spec: SystemSpec,
                 quadrature: Optional[IntegrationQuadrature]=None) -> ActionTriple:
    """
    Return the actions J_i = (2/pi) int p_i ds_i of the torus above value.

    The limits of each integral are the turning points and pole positions
    of motionIntervals. Trivial actions, |l23| for the prolate system for
    instance, use their closed form, and an interval shorter than
    config['tolZeroInterval'] gives a vanishing action.

    Parameters
    ----------
    value : IntegralValues or (x, y)
        Values of the two integrals of the family.
    spec : SystemSpec
        The system.
    quadrature : IntegrationQuadrature, optional
        Quadrature rule, built from the configuration by default.

    Raises
    ------
    NotInImageError
        value is not in the image of the momentum map.
    """

    values = _values(value, spec)
    if chamber(values, spec)==OUTSIDE:
        raise NotInImageError('Values {} of {} are outside the image of the momentum map'.format(values.asTuple(), spec.describe()), values)

    if quadrature is None:
        quadrature = IntegrationQuadrature()

    J = ActionTriple(*(_intervalAction(interval, values, spec, quadrature) for interval in motionIntervals(values, spec)))

    defect = abs(J.total - np.sqrt(values.twoH))
    if defect>1e-8:
        logger.debug('Action sum rule defect {:.3e} at {}'.format(defect, values.asTuple()))

    return J



###########################################################################
#
#
#                           Closed forms
#
#
###########################################################################



def closedFormVertices(spec: SystemSpec) -> Dict[str, ActionTriple]:
    """
    Return the closed form actions of the distinguished points of the
    ellipsoidal action triangle.

        A21, A22 : tangencies of the parabola with J2 = 0, images of the
                   degenerate values d2 and d3, complete elliptic integrals
                   with the characteristics
                   alpha1 = (e2 - e1)/(e2 - e4), alpha3 = (e4 - e3)/(e1 - e3).
        A31      : end of gamma1 on J3 = 0, image of d24,
                   (2/pi)(asin u1, acos u1, 0), u1 = sqrt((e1 - e2)/(e1 - e3)).
        A12      : end of gamma2 on J1 = 0, image of d13,
                   (2/pi)(0, asin u2, acos u2), u2 = sqrt((e2 - e3)/(e2 - e4)).
        HH       : crossing of gamma1 and gamma2, image of d23,
                   (2/pi)(asin v1, asin v2 - asin v1, acos v2),
                   v1 = sqrt((e1 - e2)/(e1 - e4)), v2 = sqrt((e1 - e3)/(e1 - e4)).

    Raises
    ------
    DomainError
        The system is not ellipsoidal.
    """

    if spec.family!=Family.ELLIPSOIDAL:
        raise DomainError('Closed form vertices only exist for the ellipsoidal family, got {}'.format(spec.family.value))

    e = spec.e
    e1, e2, e3, e4 = e
    twoH = spec.twoH

    alpha1 = (e2 - e1)/(e2 - e4)
    alpha3 = (e4 - e3)/(e1 - e3)
    u1 = np.sqrt((e1 - e2)/(e1 - e3))
    u2 = np.sqrt((e2 - e3)/(e2 - e4))
    v1 = np.sqrt((e1 - e2)/(e1 - e4))
    v2 = np.sqrt((e1 - e3)/(e1 - e4))

    return {'A21' : ActionTriple(tangentialAction(e2, e4, alpha1, e, twoH), 0., tangentialAction(e1, e2, alpha3, e, twoH)),
            'A22' : ActionTriple(tangentialAction(e3, e4, alpha1, e, twoH), 0., tangentialAction(e1, e3, alpha3, e, twoH)),
            'A31' : ActionTriple.scaled(2./np.pi*np.array([np.arcsin(u1), np.arccos(u1), 0.]), twoH),
            'A12' : ActionTriple.scaled(2./np.pi*np.array([0., np.arcsin(u2), np.arccos(u2)]), twoH),
            'HH'  : ActionTriple.scaled(2./np.pi*np.array([np.arcsin(v1), np.arcsin(v2) - np.arcsin(v1), np.arccos(v2)]), twoH)}



def vertexValues(spec: SystemSpec) -> Dict[str, IntegralValues]:
    """
    Return the critical values whose tori shrink to the closed form
    vertices of closedFormVertices.
    """

    e1, e2, e3, e4 = spec.e
    twoH = spec.twoH

    def onLine(ei, t):
        return IntegralValues(twoH*(ei + t), twoH*ei*t, twoH)

    return {'A21' : onLine(e2, e2),
            'A22' : onLine(e3, e3),
            'A31' : onLine(e2, e4),
            'A12' : onLine(e1, e3),
            'HH'  : onLine(e2, e3)}



def vertexActionTable(spec: SystemSpec,
                      quadrature: Optional[IntegrationQuadrature]=None) -> pd.DataFrame:
    """
    Return the closed form vertices next to the quadrature of the actions at
    their critical values.

    Returns
    -------
    df : pd.DataFrame
        Columns vertex, J1, J2, J3 (closed form), Q1, Q2, Q3 (quadrature)
        and residual, the largest difference.
    """

    closed = closedFormVertices(spec)
    rows = []
    for name, value in vertexValues(spec).items():
        Q = actionTriple(value, spec, quadrature)
        rows.append((name, *closed[name], *Q, float(np.max(np.abs(np.array(closed[name]) - np.array(Q))))))

    return pd.DataFrame(rows, columns=['vertex', 'J1', 'J2', 'J3', 'Q1', 'Q2', 'Q3', 'residual'])



def resolveCharacteristic(spec: SystemSpec,
                          quadrature: Optional[IntegrationQuadrature]=None) -> pd.DataFrame:
    """
    Decide which characteristic enters each elliptic action of A21 and A22.

    Both alpha1 and alpha3 are tried for the non vanishing actions J1 and
    J3 of the two tangencies and compared to the quadrature at d2 and d3.

    Returns
    -------
    df : pd.DataFrame
        Columns vertex, action, characteristic, value, quadrature, residual
        and selected, True for the candidate with the smallest residual.
    """

    if spec.family!=Family.ELLIPSOIDAL:
        raise DomainError('The characteristic question only concerns the ellipsoidal family, got {}'.format(spec.family.value))

    e = spec.e
    e1, e2, e3, e4 = e
    candidates = {'alpha1' : (e2 - e1)/(e2 - e4),
                  'alpha3' : (e4 - e3)/(e1 - e3)}
    # (u, v) of the elliptic action of J1 and J3 at each tangency
    limits = {'A21' : {'J1' : (e2, e4), 'J3' : (e1, e2)},
              'A22' : {'J1' : (e3, e4), 'J3' : (e1, e3)}}

    values = vertexValues(spec)
    rows = []
    for vertex, actions in limits.items():
        Q = actionTriple(values[vertex], spec, quadrature)._asdict()
        for action, (u, v) in actions.items():
            block = []
            for name, alpha in candidates.items():
                J = tangentialAction(u, v, alpha, e, spec.twoH)
                block.append([vertex, action, name, J, Q[action], abs(J - Q[action]), False])
            best = int(np.argmin([row[5] for row in block]))
            block[best][6] = True
            logger.info('{} {}: characteristic {} selected, residual {:.3e}'.format(vertex, action, block[best][2], block[best][5]))
            rows.extend(block)

    return pd.DataFrame(rows, columns=['vertex', 'action', 'characteristic', 'value', 'quadrature', 'residual', 'selected'])



def hyperbolicLimit(spec: SystemSpec,
                    ladder: Optional[Sequence[float]]=None,
                    quadrature: Optional[IntegrationQuadrature]=None) -> Tuple[ActionTriple, pd.DataFrame]:
    """
    Extrapolate the actions to the hyperbolic-hyperbolic value d23 from the
    two chambers it separates.

    The actions are computed at eta2 = e2 e3 2h +- delta 2h for a geometric
    ladder of delta. The mean of both sides converges like A*delta**p, the
    power law being fitted on the steps of the means and its geometric tail
    added to the mean at the smallest delta.

    Returns
    -------
    limit : ActionTriple
        Extrapolated actions.
    df : pd.DataFrame
        Columns delta, above1, above2, above3, below1, below2, below3.

    Raises
    ------
    DomainError
        The system is not ellipsoidal or the ladder is shorter than 3.
    """

    if spec.family!=Family.ELLIPSOIDAL:
        raise DomainError('The hyperbolic-hyperbolic value only exists for the ellipsoidal family, got {}'.format(spec.family.value))

    if ladder is None:
        ladder = config['hyperbolicLadder']
    ladder = np.sort(np.asarray(ladder, dtype=float))[::-1]
    if len(ladder)<3:
        raise DomainError('The extrapolation needs at least 3 distances, got {}'.format(len(ladder)))

    center = vertexValues(spec)['HH']
    rows = []
    means = []
    for delta in ladder:
        shift = delta*center.twoH
        above = actionTriple(IntegralValues(center.x, center.y + shift, center.twoH), spec, quadrature)
        below = actionTriple(IntegralValues(center.x, center.y - shift, center.twoH), spec, quadrature)
        rows.append((float(delta), *above, *below))
        means.append(0.5*(np.array(above) + np.array(below)))
    means = np.array(means)

    limit = means[-1].copy()
    ratio = ladder[-1]/ladder[-2]
    for k in range(3):
        steps = np.diff(means[:, k])
        # Steps of both signs are rounding, nothing to extrapolate
        if not (np.all(steps>0.) or np.all(steps<0.)):
            continue
        C, order = powerLawFit(ladder[:-1], np.abs(steps))
        if order<=0.5:
            continue
        limit[k] += np.sign(steps[-1])*C*ladder[-1]**order/(1. - ratio**order)

    df = pd.DataFrame(rows, columns=['delta', 'above1', 'above2', 'above3', 'below1', 'below2', 'below3'])
    logger.info('Hyperbolic-hyperbolic actions extrapolated to ({:.8f}, {:.8f}, {:.8f})'.format(*limit))

    return ActionTriple(*(float(J) for J in limit)), df



###########################################################################
#
#
#                           Arcs in action space
#
#
###########################################################################



class ActionArc(NamedTuple):
    """
    Image in action space of a curve of critical values.

    t is the parameter of the curve, values its points and actions their
    actions by quadrature. closedForm holds the closed form of the actions
    when one is known, start and end the closed form end points.
    """

    name: str
    t: np.ndarray
    values: np.ndarray
    actions: np.ndarray
    closedForm: Optional[np.ndarray]
    start: ActionTriple
    end: ActionTriple



def oblateArc(l: Union[float, np.ndarray],
              spec: SystemSpec) -> np.ndarray:
    """
    Return the closed form actions of the hyperbolic part of the parabola
    O2, |l34| <= sqrt(2h (a - 1)/a). At 2h = 1, with c = a(1 - l^2),

        J1 = (2/pi)(asin(1/sqrt(c)) - |l| atan(|l|/sqrt(c - 1)))
        J2 = 1 - J1 - |l|
        J3 = |l|
    """

    r = np.sqrt(spec.twoH)
    l = np.abs(np.atleast_1d(np.asarray(l, dtype=float)))/r
    c = spec.a*(1. - l**2)
    J1 = 2./np.pi*(np.arcsin(np.clip(1./np.sqrt(c), -1., 1.)) - l*np.arctan2(l, np.sqrt(np.clip(c - 1., 0., None))))
    return r*np.stack((J1, 1. - J1 - l, l), axis=-1)



def _arc(name: str,
         spec: SystemSpec,
         t: np.ndarray,
         valueAt,
         start: ActionTriple,
         end: ActionTriple,
         closedForm: Optional[np.ndarray],
         quadrature: IntegrationQuadrature) -> ActionArc:

    values = np.array([valueAt(ti) for ti in t], dtype=float)
    actions = np.array([actionTriple(IntegralValues(x, y, spec.twoH), spec, quadrature) for x, y in values])
    return ActionArc(name, t, values, actions, closedForm, start, end)



def interiorArcs(spec: SystemSpec,
                 n: int=21,
                 quadrature: Optional[IntegrationQuadrature]=None) -> List[ActionArc]:
    """
    Return the arcs lying inside the action triangle, images of hyperbolic
    critical values.

        ellipsoidal : gamma1 from A21 to A31 (line L2) and gamma2 from A12
                      to A22 (line L3), crossing at HH.
        oblate      : gamma_obl from O2 = (2/pi)(asin(1/sqrt a), acos(1/sqrt a), 0)
                      to O1 = (1 - sqrt((a - 1)/a), 0, sqrt((a - 1)/a)).
        lame        : the straight segment L_M from (1, 0, 0) to
                      (2/pi)(0, asin D, acos D), D = sqrt((f1 - f2)/(f1 - f3)),
                      image of the line L2.
    Other families have no interior arc.
    """

    if quadrature is None:
        quadrature = IntegrationQuadrature()

    twoH = spec.twoH
    r = np.sqrt(twoH)

    if spec.family==Family.ELLIPSOIDAL:
        e1, e2, e3, e4 = spec.e
        vertices = closedFormVertices(spec)
        diagram = bifurcationSet(spec, segments=False)
        return [_arc('gamma1', spec, np.linspace(e2, e4, n), diagram.curve('L2').valueAt,
                     vertices['A21'], vertices['A31'], None, quadrature),
                _arc('gamma2', spec, np.linspace(e1, e3, n), diagram.curve('L3').valueAt,
                     vertices['A12'], vertices['A22'], None, quadrature)]

    elif spec.family==Family.OBLATE:
        a = spec.a
        lstar = np.sqrt(twoH*(a - 1.)/a)
        t = np.linspace(0., lstar, n)
        closed = oblateArc(t, spec)
        return [_arc('gammaObl', spec, t, lambda l: (l, twoH - l**2),
                     ActionTriple(*closed[0]), ActionTriple(*closed[-1]), closed, quadrature)]

    elif spec.family==Family.LAME:
        f1, f2, f3 = spec.f
        delta = np.sqrt((f1 - f2)/(f1 - f3))
        start = ActionTriple(r, 0., 0.)
        end = ActionTriple.scaled(2./np.pi*np.array([0., np.arcsin(delta), np.arccos(delta)]), twoH)
        # F_L runs from 2h (T123) down to 0
        t = np.linspace(twoH, 0., n)
        J1 = r - np.sqrt(twoH - t)
        closed = np.array(end) + np.outer(J1/r, np.array(start) - np.array(end))
        return [_arc('lameM', spec, t, lambda F: (F, f2*(twoH - F)),
                     start, end, closed, quadrature)]

    return []



def collinearityResidual(points: np.ndarray) -> float:
    """
    Return the largest distance of points (n, 3) to the line through the
    first and last one, relative to the length of the chord.
    """

    points = np.asarray(points, dtype=float)
    chord = points[-1] - points[0]
    length = np.linalg.norm(chord)
    if length==0.:
        return float(np.max(np.linalg.norm(points - points[0], axis=1)))
    u = chord/length
    rel = points - points[0]
    perp = rel - np.outer(rel@u, u)
    return float(np.max(np.linalg.norm(perp, axis=1))/length)



def boundaryArcs(spec: SystemSpec,
                 n: int=41,
                 threads: Optional[int]=None) -> pd.DataFrame:
    """
    Return the images in action space of the curves of the bifurcation
    diagram.

    Returns
    -------
    df : pd.DataFrame
        Columns curve, t, x, y, J1, J2, J3 and color, the color tag of the
        curve.
    """

    diagram = bifurcationSet(spec, segments=False)
    items = []
    for curve in diagram.curves:
        if curve.kind==CurveKind.POINT:
            ts = [curve.tRange[0]]
        else:
            ts = np.linspace(*curve.tRange, n)
        for t in ts:
            x, y = curve.valueAt(t)
            items.append((curve.name, float(t), float(x), float(y), curve.colorTag))

    def evaluate(item):
        name, t, x, y, colorTag = item
        try:
            return tuple(actionTriple(IntegralValues(x, y, spec.twoH), spec))
        except NotInImageError:
            # Parts of a conic outside of the image
            return (np.nan, np.nan, np.nan)

    J = sweepGrid(evaluate, items, threads)

    df = pd.DataFrame([item[:4] + tuple(j) + (item[4],) for item, j in zip(items, J)],
                      columns=['curve', 't', 'x', 'y', 'J1', 'J2', 'J3', 'color'])
    return df.dropna().reset_index(drop=True)



###########################################################################
#
#
#                           Action grid
#
#
###########################################################################



def valueGrid(spec: SystemSpec,
              n: int) -> pd.DataFrame:
    """
    Return the values of an n x n grid over the bounding box of the image
    of the momentum map that are in the image, with their chamber.
    """

    if n<2:
        raise DomainError('Grid resolution must be >= 2, got {}'.format(n))

    curves = bifurcationSet(spec, segments=False).toDataFrame(200)
    xs = np.linspace(curves.x.min(), curves.x.max(), n)
    ys = np.linspace(curves.y.min(), curves.y.max(), n)

    rows = []
    for x in xs:
        for y in ys:
            c = chamber((x, y), spec)
            if c!=OUTSIDE:
                rows.append((float(x), float(y), str(c.code), c.multiplicity))

    return pd.DataFrame(rows, columns=[*spec.integralNames, 'chamber', 'multiplicity'])



def actionGrid(spec: SystemSpec,
               n: int=20,
               threads: Optional[int]=None) -> pd.DataFrame:
    """
    Return the actions of the in-image values of an n x n grid, computed
    through the worker pool.

    Returns
    -------
    df : pd.DataFrame
        The columns of valueGrid followed by J1, J2, J3.
    """

    grid = valueGrid(spec, n)
    names = list(spec.integralNames)
    twoH = spec.twoH

    def evaluate(xy):
        return tuple(actionTriple(IntegralValues(xy[0], xy[1], twoH), spec))

    J = sweepGrid(evaluate, list(zip(grid[names[0]], grid[names[1]])), threads)
    grid[['J1', 'J2', 'J3']] = np.array(J, dtype=float).reshape(-1, 3)

    logger.info('{} actions computed for {}'.format(len(grid), spec.describe()))

    return grid



###########################################################################
#
#
#                           Prolate system
#
#
###########################################################################



def derivativeJump(g: float,
                   spec: SystemSpec,
                   step: Optional[float]=None,
                   quadrature: Optional[IntegrationQuadrature]=None) -> Tuple[float, float]:
    """
    Return (kappa1, kappa3) such that J_i = S_i - kappa_i |l23| near l23 = 0
    with S_i smooth, from one sided derivatives of order two at G_pro = g.

    Only one of J1 and J3 is non differentiable at l23 = 0: J3 below the
    focus-focus value (g < 2h), J1 above it.
    """

    if spec.family!=Family.PROLATE:
        raise DomainError('The derivative jump is defined for the prolate family, got {}'.format(spec.family.value))

    h = float(config['monodromyStep']) if step is None else float(step)
    if quadrature is None:
        quadrature = IntegrationQuadrature()

    def J(l):
        return np.array(actionTriple((l, g), spec, quadrature))[[0, 2]]

    J0 = J(0.)
    right = (-3.*J0 + 4.*J(h) - J(2.*h))/(2.*h)
    left = (3.*J0 - 4.*J(-h) + J(-2.*h))/(2.*h)
    kappa = 0.5*(left - right)

    return float(kappa[0]), float(kappa[1])



def focusFocusActions(spec: SystemSpec) -> ActionTriple:
    """
    Return the actions of the focus-focus fibre of the prolate system,
    (2/pi)(asin sqrt(1/b), 0, acos sqrt(1/b)).
    """

    if spec.family!=Family.PROLATE:
        raise DomainError('No focus-focus value for the {} family'.format(spec.family.value))

    u = np.sqrt(1./spec.b)
    return ActionTriple.scaled(2./np.pi*np.array([np.arcsin(u), 0., np.arccos(u)]), spec.twoH)



class SemitoricPolygon(NamedTuple):
    """
    A representative of the polygon invariant of the prolate system, in
    the plane (l23, J3).

    J3 is smooth away from the cut {l23 = 0, G_pro < 2h} running from the
    focus-focus value down to G_pro = 0, whose image ends in the fake corner.
    """

    vertices: np.ndarray
    fakeCorner: np.ndarray
    focus: np.ndarray
    height: float
    heightQuadrature: float



def semitoricPolygon(spec: SystemSpec,
                     quadrature: Optional[IntegrationQuadrature]=None) -> SemitoricPolygon:
    """
    Return the polygon invariant and the height invariant
    (2/pi) acos sqrt(1/b) of the prolate system.

    The height is also measured as J3 at the focus-focus value by
    quadrature.
    """

    if spec.family!=Family.PROLATE:
        raise DomainError('The semitoric polygon is defined for the prolate family, got {}'.format(spec.family.value))

    r = np.sqrt(spec.twoH)
    height = focusFocusActions(spec).J3
    measured = actionTriple((0., spec.twoH), spec, quadrature).J3
    logger.info('Height invariant {:.10f}, quadrature {:.10f}'.format(height, measured))

    return SemitoricPolygon(vertices=np.array([[-r, 0.], [r, 0.], [0., r]]),
                            fakeCorner=np.array([0., r]),
                            focus=np.array([0., height]),
                            height=float(height),
                            heightQuadrature=float(measured))
