# This Python file uses the following encoding: utf-8
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple, Union
import logging
import numpy as np
import pandas as pd
from scipy.linalg import null_space
from scipy.optimize import brentq, minimize_scalar

from .config import loadConfigCurrent
config = loadConfigCurrent()
from .errors import DomainError, NotInImageError
from .functions import COMPLEMENTS, PAIRS, scaleOf
from .s2Appendix import S2Kind, s2Classify, s2CriticalPoints
from .separation import motionIntervals, separatedMomentumSq, turningRoots
from .so4Core import (XYPair, QuadraticObservable, buildIntegrals,
                      casimirObservables, hodgeDual, join, lpStructure,
                      structureDerivative, toFraction)
from .systemSpec import Family, IntegralValues, SystemSpec

logger = logging.getLogger(__name__)

ValueLike = Union[IntegralValues, Tuple[float, float], Sequence[float]]

# Angles of the generic combinations cos(t) f + sin(t) g used at rank 0
GENERICANGLES = (0.7137, 2.0311)



class CurveKind(str, Enum):
    LINE     = 'Line'
    PARABOLA = 'Parabola'
    ARC      = 'ParametricArc'
    POINT    = 'Point'



class RankOneType(str, Enum):
    ELLIPTIC   = 'Elliptic'
    HYPERBOLIC = 'Hyperbolic'
    DEGENERATE = 'Degenerate'



class SingularityType(str, Enum):
    EE              = 'EllipticElliptic'
    EH              = 'EllipticHyperbolic'
    HH              = 'HyperbolicHyperbolic'
    FF              = 'FocusFocus'
    RANK1ELLIPTIC   = 'Rank1Elliptic'
    RANK1HYPERBOLIC = 'Rank1Hyperbolic'
    DEGENERATE      = 'Degenerate'
    SPHERICAL       = 'SphericalType'
    REGULAR         = 'Regular'



RANKONE = {SingularityType.RANK1ELLIPTIC   : RankOneType.ELLIPTIC,
           SingularityType.RANK1HYPERBOLIC : RankOneType.HYPERBOLIC}



class Segment(NamedTuple):
    """
    Sub-arc [lo, hi] of a curve parameter with a constant rank one type.
    """

    lo: float
    hi: float
    type: RankOneType



class Vertex(NamedTuple):
    """
    Special critical value: intersection, tangency or isolated value.
    exact is given when the value is rational in the parameters.
    """

    name: str
    value: Tuple[float, float]
    exact: Optional[Tuple[Fraction, Fraction]]
    fibre: str



class Chamber(NamedTuple):
    """
    Connected component of regular values and the number of tori in its
    fibres. Ellipsoidal chambers are keyed by the intervals of the two
    turning roots.
    """

    code: Union[Tuple[int, int], str]
    multiplicity: int



OUTSIDE = Chamber('Outside', 0)



def _asValues(value: ValueLike,
              spec: SystemSpec) -> IntegralValues:

    if isinstance(value, IntegralValues):
        return value
    x, y = value
    return IntegralValues(float(x), float(y), spec.twoH)



###########################################################################
#
#
#                           Curves
#
#
###########################################################################



@dataclass(frozen=True, eq=False)
class BifurcationCurve:
    """
    A curve t -> (x(t), y(t)) of critical values together with the critical
    points above it.

    Parameters
    ----------
    name : str
        Name of the curve, 'L1', 'parabola', 'O1', ...
    kind : CurveKind
        Line, parabola, parametric arc or isolated point.
    family : Family
        Family of the system.
    tRange : tuple
        Parameter interval.
    colorTag : str
        Key of the curveColors configuration.
    coefficients : tuple
        (a, b, c, d, e, f) of the conic a x^2 + b xy + c y^2 + d x + e y + f = 0
        carrying the curve, empty for arcs which are not conics, (x, y) for
        points. Fractions when exact.
    valueAt : callable
        t -> (x, y).
    pointsAt : callable
        (t, phi) -> array (k, 6) of critical points, phi running along the
        critical circles.
    combination : callable
        t -> (alpha, beta) such that the vector field of alpha f + beta g
        vanishes on pointsAt(t, .).
    breakpoints : tuple
        Parameters at which the critical set changes.
    fibres : tuple
        (lo, hi, description) of the critical fibres along the curve.
    segments : tuple
        Rank one type of each sub-arc, filled by bifurcationSet.
    """

    name: str
    kind: CurveKind
    family: Family
    tRange: Tuple[float, float]
    colorTag: str
    coefficients: Tuple[Union[float, Fraction], ...]
    valueAt: Callable[[float], Tuple[float, float]]
    pointsAt: Callable[[float, float], np.ndarray]
    combination: Callable[[float], Tuple[float, float]]
    breakpoints: Tuple[float, ...] = ()
    fibres: Tuple[Tuple[float, float, str], ...] = ()
    segments: Tuple[Segment, ...] = ()



    @property
    def endpoints(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.value(self.tRange[0]), self.value(self.tRange[1])



    def value(self, t: float) -> np.ndarray:
        return np.asarray(self.valueAt(float(t)), dtype=float)



    def conicResidual(self, value: ValueLike) -> float:
        """
        Return the conic equation evaluated at value, nan for arcs which are
        not conics.
        """

        if len(self.coefficients)!=6:
            return float('nan')
        x, y = (value.x, value.y) if isinstance(value, IntegralValues) else value
        a, b, c, d, e, f = (float(k) for k in self.coefficients)
        return float(a*x**2 + b*x*y + c*y**2 + d*x + e*y + f)



    def sample(self, n: int=200) -> Tuple[np.ndarray, np.ndarray]:
        """
        Return n parameters and the values (n, 2) of the curve.
        """

        lo, hi = self.tRange
        t = np.linspace(lo, hi, n if self.kind!=CurveKind.POINT else 1)
        return t, np.array([self.value(ti) for ti in t])



    def distance(self, value: ValueLike) -> Tuple[float, float]:
        """
        Return (distance, t) of the closest point of the curve to value.
        """

        target = np.asarray((value.x, value.y) if isinstance(value, IntegralValues) else value, dtype=float)
        lo, hi = self.tRange

        if self.kind==CurveKind.POINT or hi<=lo:
            return float(np.linalg.norm(self.value(lo) - target)), float(lo)

        ts = np.unique(np.concatenate((np.linspace(lo, hi, 401), self.breakpoints)))
        d = np.array([np.linalg.norm(self.value(t) - target) for t in ts])
        k = int(np.argmin(d))
        best, bestT = float(d[k]), float(ts[k])

        # Closest point as a root of (v(t) - target).v'(t) on each side
        h = 1e-7*(hi - lo)
        def slope(t):
            dv = (self.value(min(t + h, hi)) - self.value(max(t - h, lo)))/(min(t + h, hi) - max(t - h, lo))
            return float((self.value(t) - target)@dv)

        for a, b in ((ts[max(k-1, 0)], ts[k]), (ts[k], ts[min(k+1, len(ts)-1)])):
            if b<=a:
                continue
            try:
                sa, sb = slope(a), slope(b)
                if sa*sb<0.:
                    t = brentq(slope, a, b, xtol=1e-15*max(1., abs(hi - lo)))
                else:
                    t = minimize_scalar(lambda s: float(np.sum((self.value(s) - target)**2)),
                                        bounds=(a, b), method='bounded').x
            except ValueError:
                continue
            dist = float(np.linalg.norm(self.value(t) - target))
            if dist<best:
                best, bestT = dist, float(t)

        # A vertex within tolerance is preferred, the critical set changes there
        tol = config['tolBifurcationDistance']*scaleOf(target)
        for bp in (lo, hi) + tuple(self.breakpoints):
            if abs(bp - bestT)<1e-6*max(1., hi - lo):
                dist = float(np.linalg.norm(self.value(bp) - target))
                if dist<=tol:
                    return dist, float(bp)

        return best, bestT



    def typeAt(self, t: float) -> Optional[RankOneType]:
        for segment in self.segments:
            if segment.lo<=t<=segment.hi:
                return segment.type
        return None



    def fibreAt(self, t: float) -> str:
        tol = 1e-9*max(1., self.tRange[1] - self.tRange[0])
        for lo, hi, description in self.fibres:
            if lo - tol<=t<=hi + tol:
                return description
        return ''



@dataclass(frozen=True, eq=False)
class BifurcationDiagram:
    """
    The critical values of a family: its curves and its vertices.
    """

    spec: SystemSpec
    curves: Tuple[BifurcationCurve, ...]
    vertices: Tuple[Vertex, ...]



    def curve(self, name: str) -> BifurcationCurve:
        for curve in self.curves:
            if curve.name==name:
                return curve
        raise DomainError('No curve {} in the {} diagram'.format(name, self.spec.family.value))



    def vertex(self, name: str) -> Vertex:
        for vertex in self.vertices:
            if vertex.name==name:
                return vertex
        raise DomainError('No vertex {} in the {} diagram'.format(name, self.spec.family.value))



    def distance(self, value: ValueLike) -> Tuple[float, Optional[BifurcationCurve], float]:
        """
        Return (distance, closest curve, its parameter) of value to the
        bifurcation set.
        """

        best = (float('inf'), None, float('nan'))
        for curve in self.curves:
            d, t = curve.distance(value)
            if d<best[0]:
                best = (d, curve, t)
        return best



    def toDataFrame(self, n: int=200) -> pd.DataFrame:
        """
        Return the sampled curves.

        Returns
        -------
        df : pd.DataFrame
            Columns curve, t, x, y, type, color.
        """

        rows = []
        for curve in self.curves:
            t, values = curve.sample(n)
            for ti, (x, y) in zip(t, values):
                kind = curve.typeAt(ti)
                rows.append((curve.name, ti, x, y, kind.value if kind is not None else '', curve.colorTag))
        return pd.DataFrame(rows, columns=['curve', 't', 'x', 'y', 'type', 'color'])



    def verticesDataFrame(self) -> pd.DataFrame:

        rows = [(v.name, v.value[0], v.value[1],
                 str(v.exact[0]) if v.exact is not None else '',
                 str(v.exact[1]) if v.exact is not None else '',
                 v.fibre) for v in self.vertices]
        return pd.DataFrame(rows, columns=['name', 'x', 'y', 'exact_x', 'exact_y', 'fibre'])



###########################################################################
#
#
#                           Critical sets of each family
#
#
###########################################################################



def _sphereConic(weights: Sequence[float],
                 t: float,
                 phi: float) -> np.ndarray:
    """
    Return the two points at angle phi of the conic
    {|u| = 1, sum w_k u_k^2 = t} of the unit sphere, array (2, 3).

    At t equal to the extreme weights the conic shrinks to two antipodal
    points, at the middle weight it is a pair of great circles.
    """

    w = np.asarray(weights, dtype=float)
    a, b, c = np.argsort(w)
    tol = 1e-12*max(1., float(np.max(np.abs(w))))
    u = np.zeros((2, 3))

    if t<=w[a] + tol:
        u[0, a], u[1, a] = 1., -1.
    elif t>=w[c] - tol:
        u[0, c], u[1, c] = 1., -1.
    elif abs(t - w[b])<=tol:
        ratio = np.sqrt((t - w[a])/(w[c] - t))
        for s, row in zip((1., -1.), u):
            row[a], row[b], row[c] = np.cos(phi), np.sin(phi), s*ratio*np.cos(phi)
    elif t<w[b]:
        for s, row in zip((1., -1.), u):
            row[a] = s/np.sqrt(t - w[a])
            row[b] = np.cos(phi)/np.sqrt(w[b] - t)
            row[c] = np.sin(phi)/np.sqrt(w[c] - t)
    else:
        for s, row in zip((1., -1.), u):
            row[c] = s/np.sqrt(w[c] - t)
            row[a] = np.cos(phi)/np.sqrt(t - w[a])
            row[b] = np.sin(phi)/np.sqrt(t - w[b])

    return u/np.linalg.norm(u, axis=1)[:, None]



def _circle(t: float,
            phi: float,
            twoH: float,
            fixed: int,
            plane: Tuple[int, int]) -> np.ndarray:
    """
    Points with L[fixed] = t, (L[plane]) on the circle of radius
    sqrt(2h - t^2), every other component zero.
    """

    rho = np.sqrt(max(twoH - t**2, 0.))
    L = np.zeros((1, 6))
    L[:, fixed] = t
    L[:, plane[0]] = rho*np.cos(phi)
    L[:, plane[1]] = rho*np.sin(phi)
    return L



def _ellipsoidalLine(spec: SystemSpec,
                     i: int) -> BifurcationCurve:
    """
    Line L_i: eta2 - e_i eta1 + 2h e_i^2 = 0, the critical points having
    l_ik = 0 for every k.
    """

    e = spec.e
    twoH = spec.twoH
    r = np.sqrt(twoH)
    others = [k for k, pair in enumerate(PAIRS) if i not in pair]
    weights = np.array([e[[c for c in COMPLEMENTS[k] if c!=i][0]] for k in others])

    def valueAt(t):
        return (twoH*(e[i] + t), twoH*e[i]*t)

    def pointsAt(t, phi):
        L = np.zeros((2, 6))
        L[:, others] = r*_sphereConic(weights, t, phi)
        return L

    ei, h = toFraction(e[i]), toFraction(twoH)
    e1, e2, e3, e4 = e
    fibres = {0 : ((e2, e4, '2S1'),),
              1 : ((e1, e2, '2S1'), (e2, e3, '2BxS1'), (e3, e4, 'S1xC2')),
              2 : ((e1, e2, 'S1xC2'), (e2, e3, '2BxS1'), (e3, e4, '2S1')),
              3 : ((e1, e3, '2S1'),)}[i]

    return BifurcationCurve(name='L{}'.format(i+1),
                            kind=CurveKind.LINE,
                            family=spec.family,
                            tRange=(float(np.min(weights)), float(np.max(weights))),
                            colorTag='L{}'.format(i+1),
                            coefficients=(Fraction(0), Fraction(0), Fraction(0), -ei, Fraction(1), h*ei**2),
                            valueAt=valueAt,
                            pointsAt=pointsAt,
                            combination=lambda t: (-e[i], 1.),
                            breakpoints=tuple(sorted(float(w) for w in weights)),
                            fibres=fibres)



def _ellipsoidalParabola(spec: SystemSpec) -> BifurcationCurve:
    """
    Parabola eta1^2 = 4 (2h) eta2 of the double roots t in [e2, e3], with
    four critical circles.
    """

    e1, e2, e3, e4 = spec.e
    twoH = spec.twoH
    c2 = (e3 - e2)*(e4 - e1)
    c3 = (e4 - e2)*(e3 - e1)

    def q(x):
        return np.sqrt(max(x, 0.))

    def valueAt(t):
        return (2.*twoH*t, twoH*t**2)

    def pointsAt(t, phi):
        b2 = np.sqrt(2.*twoH/c2)*np.cos(phi)
        b3 = np.sqrt(2.*twoH/c3)*np.sin(phi)
        rows = []
        for sa in (1., -1.):
            a1 = sa*np.sqrt(b2**2 + b3**2)
            for sg in (1., -1.):
                rows.append([ a1*q(t - e1)*q(t - e2),
                             -sg*b2*q(t - e1)*q(e3 - t),
                             -b3*q(t - e1)*q(e4 - t),
                             -sg*b3*q(t - e2)*q(e3 - t),
                              b2*q(t - e2)*q(e4 - t),
                             -sg*a1*q(e3 - t)*q(e4 - t)])
        return np.array(rows)/np.sqrt(2.)

    h = toFraction(twoH)
    return BifurcationCurve(name='parabola',
                            kind=CurveKind.PARABOLA,
                            family=spec.family,
                            tRange=(e2, e3),
                            colorTag='parabola',
                            coefficients=(Fraction(1), Fraction(0), Fraction(0), Fraction(0), -4*h, Fraction(0)),
                            valueAt=valueAt,
                            pointsAt=pointsAt,
                            combination=lambda t: (-t, 1.),
                            breakpoints=(e2, e3),
                            fibres=((e2, e3, '4S1'),))



def _ellipsoidal(spec: SystemSpec) -> Tuple[List[BifurcationCurve], List[Vertex]]:

    e = spec.e
    twoH = spec.twoH
    h = toFraction(twoH)
    ef = [toFraction(ei) for ei in e]

    curves = [_ellipsoidalLine(spec, i) for i in range(4)]
    curves.append(_ellipsoidalParabola(spec))

    fibres = {(0, 1) : '2 points', (0, 2) : 'C2', (0, 3) : '2 points',
              (1, 2) : 'C2xC2 (contains 4S1)', (1, 3) : 'C2', (2, 3) : '2 points'}
    vertices = []
    for (i, j), fibre in fibres.items():
        exact = (h*(ef[i] + ef[j]), h*ef[i]*ef[j])
        vertices.append(Vertex('d{}{}'.format(i+1, j+1), (float(exact[0]), float(exact[1])), exact, fibre))
    for i in (1, 2):
        exact = (2*h*ef[i], h*ef[i]**2)
        vertices.append(Vertex('d{}'.format(i+1), (float(exact[0]), float(exact[1])), exact, '2S1'))

    return curves, vertices



def _prolate(spec: SystemSpec) -> Tuple[List[BifurcationCurve], List[Vertex]]:

    b = spec.b
    twoH = spec.twoH
    r = np.sqrt(twoH)
    h = toFraction(twoH)

    P1 = BifurcationCurve(name='P1',
                          kind=CurveKind.PARABOLA,
                          family=spec.family,
                          tRange=(-r, r),
                          colorTag='prolate',
                          coefficients=(b, 0., 0., 0., 1., -b*twoH),
                          valueAt=lambda t: (t, b*(twoH - t**2)),
                          pointsAt=lambda t, phi: _circle(t, phi, twoH, 3, (0, 1)),
                          combination=lambda t: (2.*b*t, 1.),
                          breakpoints=(-r, r),
                          fibres=((-r, r, 'S1'),))

    P2 = BifurcationCurve(name='P2',
                          kind=CurveKind.LINE,
                          family=spec.family,
                          tRange=(-r, r),
                          colorTag='L1',
                          coefficients=(0., 0., 0., 0., 1., 0.),
                          valueAt=lambda t: (t, 0.),
                          pointsAt=lambda t, phi: _circle(t, phi, twoH, 3, (4, 5)),
                          combination=lambda t: (0., 1.),
                          breakpoints=(-r, r),
                          fibres=((-r, r, 'S1'),))

    def focusPoints(t, phi):
        L = np.zeros((2, 6))
        L[:, 2] = (r, -r)
        return L

    FF = BifurcationCurve(name='FF',
                          kind=CurveKind.POINT,
                          family=spec.family,
                          tRange=(0., 0.),
                          colorTag='degenerate',
                          coefficients=(0., twoH),
                          valueAt=lambda t: (0., twoH),
                          pointsAt=focusPoints,
                          combination=lambda t: (1., 0.),
                          fibres=((0., 0., 'doubly pinched torus'),))

    vertices = [Vertex('p+', (r, 0.), None, '1 point'),
                Vertex('p-', (-r, 0.), None, '1 point'),
                Vertex('ff', (0., twoH), (Fraction(0), h), 'doubly pinched torus')]

    return [P1, P2, FF], vertices



def _oblateTop(t: float,
               phi: float,
               a: float,
               twoH: float) -> np.ndarray:
    """
    The two critical circles above O1 at l34 = t.
    """

    kappa = np.sqrt(twoH/(a*(a - 1.)))
    alpha = a - abs(t)/kappa
    sign = 1. if t>=0. else -1.
    root = np.sqrt(max(alpha*(alpha - 1.), 0.))
    rho = np.sqrt(max(alpha*abs(t)*kappa, 0.))
    l13, l14 = rho*np.cos(phi), rho*np.sin(phi)

    L = np.zeros((2, 6))
    for s, row in zip((1., -1.), L):
        beta = 2.*s*root
        row[:] = (s*root*sign*kappa, l13, l14, -beta*l14/(2.*alpha), beta*l13/(2.*alpha), t)
    return L



def _oblate(spec: SystemSpec) -> Tuple[List[BifurcationCurve], List[Vertex]]:

    a = spec.a
    twoH = spec.twoH
    r = np.sqrt(twoH)
    lstar = np.sqrt(twoH*(a - 1.)/a)
    kappa = np.sqrt(twoH/(a*(a - 1.)))

    def topCombination(t):
        alpha = a - abs(t)/kappa
        sign = 1. if t>=0. else -1.
        return (2.*alpha*t + 2.*alpha*(alpha - 1.)*sign*kappa, 1.)

    O1 = BifurcationCurve(name='O1',
                          kind=CurveKind.ARC,
                          family=spec.family,
                          tRange=(-lstar, lstar),
                          colorTag='oblate',
                          coefficients=(),
                          valueAt=lambda t: (t, (np.sqrt(twoH*a) - np.sqrt(a - 1.)*abs(t))**2),
                          pointsAt=lambda t, phi: _oblateTop(t, phi, a, twoH),
                          combination=topCombination,
                          breakpoints=(-lstar, 0., lstar),
                          fibres=((-lstar, lstar, '2S1'),))

    O2 = BifurcationCurve(name='O2',
                          kind=CurveKind.PARABOLA,
                          family=spec.family,
                          tRange=(-r, r),
                          colorTag='L2',
                          coefficients=(1., 0., 0., 0., 1., -twoH),
                          valueAt=lambda t: (t, twoH - t**2),
                          pointsAt=lambda t, phi: _circle(t, phi, twoH, 5, (1, 2)),
                          combination=lambda t: (2.*t, 1.),
                          breakpoints=(-r, -lstar, lstar, r),
                          fibres=((-r, -lstar, 'S1'), (-lstar, lstar, 'BxS1'), (lstar, r, 'S1')))

    O3 = BifurcationCurve(name='O3',
                          kind=CurveKind.LINE,
                          family=spec.family,
                          tRange=(-r, r),
                          colorTag='L2',
                          coefficients=(0., 0., 0., 0., 1., 0.),
                          valueAt=lambda t: (t, 0.),
                          pointsAt=lambda t, phi: _circle(t, phi, twoH, 5, (3, 4)),
                          combination=lambda t: (0., 1.),
                          breakpoints=(-r, r),
                          fibres=((-r, r, 'S1'),))

    h, af = toFraction(twoH), toFraction(a)
    vertices = [Vertex('o11', (0., twoH*a), (Fraction(0), h*af), '2 points'),
                Vertex('o12+', (lstar, twoH/a), None, 'S1'),
                Vertex('o12-', (-lstar, twoH/a), None, 'S1'),
                Vertex('o23+', (r, 0.), None, '1 point'),
                Vertex('o23-', (-r, 0.), None, '1 point')]

    return [O1, O2, O3], vertices



def _lameLine(spec: SystemSpec,
              k: int) -> BifurcationCurve:
    """
    Line G_L = f_k (2h - F_L), k = 1, 2, 3.
    """

    fk = spec.f[k-1]
    twoH = spec.twoH
    # (circle plane, component fixed by the square root)
    plane, axis = {1 : ((1, 2), 5),
                   2 : ((0, 2), 4),
                   3 : ((0, 1), 3)}[k]

    def pointsAt(t, phi):
        rho = np.sqrt(max(t, 0.))
        L = np.zeros((2, 6))
        L[:, plane[0]] = rho*np.cos(phi)
        L[:, plane[1]] = rho*np.sin(phi)
        L[:, axis] = (np.sqrt(max(twoH - t, 0.)), -np.sqrt(max(twoH - t, 0.)))
        return L

    h, ff = toFraction(twoH), toFraction(fk)
    return BifurcationCurve(name='Lame{}'.format(k),
                            kind=CurveKind.LINE,
                            family=spec.family,
                            tRange=(0., twoH),
                            colorTag='L{}'.format(k),
                            coefficients=(Fraction(0), Fraction(0), Fraction(0), ff, Fraction(1), -h*ff),
                            valueAt=lambda t: (t, fk*(twoH - t)),
                            pointsAt=pointsAt,
                            combination=lambda t: (fk, 1.),
                            breakpoints=(0., twoH),
                            fibres=((0., twoH, 'S1xC2' if k==2 else '2S1'),))



def _lame(spec: SystemSpec) -> Tuple[List[BifurcationCurve], List[Vertex]]:

    f1, f2, f3 = spec.f
    twoH = spec.twoH
    r = np.sqrt(twoH)
    # Euler top on (l23, l24, l34) with weights (f3, f2, f1)
    indices = [3, 4, 5]
    weights = np.array([f3, f2, f1])

    def eulerPoints(t, phi):
        L = np.zeros((2, 6))
        L[:, indices] = r*_sphereConic(weights, t, phi)
        return L

    h = toFraction(twoH)
    fs = [toFraction(f) for f in spec.f]
    L4 = BifurcationCurve(name='Lame4',
                          kind=CurveKind.LINE,
                          family=spec.family,
                          tRange=(f1, f3),
                          colorTag='L4',
                          coefficients=(Fraction(0), Fraction(0), Fraction(0), Fraction(1), Fraction(0), Fraction(0)),
                          valueAt=lambda t: (0., twoH*t),
                          pointsAt=eulerPoints,
                          combination=lambda t: (1., 0.),
                          breakpoints=(f1, f2, f3),
                          fibres=((f1, f2, '2S1'), (f2, f3, '2S1')))

    curves = [_lameLine(spec, k) for k in (1, 2, 3)] + [L4]
    vertices = [Vertex('t14', (0., twoH*f1), (Fraction(0), h*fs[0]), '2 points'),
                Vertex('t24', (0., twoH*f2), (Fraction(0), h*fs[1]), 'C2'),
                Vertex('t34', (0., twoH*f3), (Fraction(0), h*fs[2]), '2 points'),
                Vertex('T123', (twoH, 0.), (h, Fraction(0)), 'S2')]

    return curves, vertices



def _spherical(spec: SystemSpec) -> Tuple[List[BifurcationCurve], List[Vertex]]:

    twoH = spec.twoH
    r = np.sqrt(twoH)

    S1 = BifurcationCurve(name='Sph1',
                          kind=CurveKind.PARABOLA,
                          family=spec.family,
                          tRange=(-r, r),
                          colorTag='spherical',
                          coefficients=(1., 0., 0., 0., 1., -twoH),
                          valueAt=lambda t: (t, twoH - t**2),
                          pointsAt=lambda t, phi: _circle(t, phi, twoH, 5, (1, 2)),
                          combination=lambda t: (2.*t, 1.),
                          breakpoints=(-r, 0., r),
                          fibres=((-r, r, 'S1'),))

    S2 = BifurcationCurve(name='Sph2',
                          kind=CurveKind.LINE,
                          family=spec.family,
                          tRange=(-r, r),
                          colorTag='spherical',
                          coefficients=(0., 0., 0., 0., 1., 0.),
                          valueAt=lambda t: (t, 0.),
                          pointsAt=lambda t, phi: _circle(t, phi, twoH, 5, (3, 4)),
                          combination=lambda t: (0., 1.),
                          breakpoints=(-r, r),
                          fibres=((-r, r, 'S1'),))

    vertices = [Vertex('D+', (r, 0.), None, '1 point'),
                Vertex('D-', (-r, 0.), None, '1 point'),
                Vertex('D23', (0., twoH), (Fraction(0), toFraction(twoH)), 'S2')]

    return [S1, S2], vertices



def _cylindrical(spec: SystemSpec) -> Tuple[List[BifurcationCurve], List[Vertex]]:
    """
    The four edges |l12| + |l34| = sqrt(2h). On the edges X (or Y) is
    fixed at +-sqrt(2h)/2 e1 and the other half turns on a circle.
    """

    twoH = spec.twoH
    r = np.sqrt(twoH)
    half = 0.5*r

    def edge(fixedX, sign):
        def pointsAt(t, phi):
            first = t - sign*half
            rho = np.sqrt(max(half**2 - first**2, 0.))
            moving = np.array([first, rho*np.cos(phi), rho*np.sin(phi)])
            fixed = np.array([sign*half, 0., 0.])
            pair = XYPair(fixed, moving) if fixedX else XYPair(moving, fixed)
            return join(pair)[None, :]
        return pointsAt

    curves = []
    for name, fixedX, sign in (('X+', True, 1.), ('X-', True, -1.), ('Y+', False, 1.), ('Y-', False, -1.)):
        tRange = (0., r) if sign>0 else (-r, 0.)
        if fixedX:
            valueAt = (lambda s: lambda t: (t, s*r - t))(sign)
            coefficients = (0., 0., 0., 1., 1., -sign*r)
            combination = lambda t: (1., 1.)
        else:
            valueAt = (lambda s: lambda t: (t, t - s*r))(sign)
            coefficients = (0., 0., 0., 1., -1., -sign*r)
            combination = lambda t: (1., -1.)
        curves.append(BifurcationCurve(name=name,
                                       kind=CurveKind.LINE,
                                       family=spec.family,
                                       tRange=tRange,
                                       colorTag='cylindrical',
                                       coefficients=coefficients,
                                       valueAt=valueAt,
                                       pointsAt=edge(fixedX, sign),
                                       combination=combination,
                                       breakpoints=tRange,
                                       fibres=((tRange[0], tRange[1], 'S1'),)))

    vertices = [Vertex('c+0', (r, 0.), None, '1 point'),
                Vertex('c-0', (-r, 0.), None, '1 point'),
                Vertex('c0+', (0., r), None, '1 point'),
                Vertex('c0-', (0., -r), None, '1 point')]

    return curves, vertices



BUILDERS = {Family.ELLIPSOIDAL : _ellipsoidal,
            Family.PROLATE     : _prolate,
            Family.OBLATE      : _oblate,
            Family.LAME        : _lame,
            Family.SPHERICAL23 : _spherical,
            Family.CYLINDRICAL : _cylindrical}



###########################################################################
#
#
#                           Classification
#
#
###########################################################################



def linearisation(F: QuadraticObservable,
                  L: Sequence[float]) -> np.ndarray:
    """
    Return the 6x6 derivative at L of the vector field L -> B_L grad F(L),

        B_L H_F + A_gradF,   A_v the matrix of L -> B_L v.
    """

    L = np.asarray(L, dtype=float)
    return lpStructure(L)@F.hessian() + structureDerivative(lpStructure, F.gradient(L))



def _leafBasis(L: np.ndarray) -> np.ndarray:
    """
    Orthonormal basis (6, 4) of the tangent space of the symplectic leaf,
    the complement of the two Casimir gradients.
    """

    if not np.any(L):
        raise DomainError('The origin of so*(4) is not on a symplectic leaf of positive Casimir')
    return null_space(np.vstack((2.*L, hodgeDual(L))))



def _eigenPattern(Jr: np.ndarray) -> str:
    """
    Return the eigenvalue pattern of a 4x4 infinitesimally symplectic
    matrix as two letters, E for +-i w, H for +-l, 0 for a zero pair, or
    'FF' for a complex quadruple.

    With eigenvalues +-m1, +-m2 and z = m^2, z1 + z2 = tr(J^2)/2 and
    z1^2 + z2^2 = tr(J^4)/2.
    """

    tol = config['tolZeroEigenvalue']
    J2 = Jr@Jr
    size = max(float(np.sum(Jr**2)), np.finfo(float).tiny)
    s = 0.5*np.trace(J2)
    p = 0.5*(s**2 - 0.5*np.trace(J2@J2))
    disc = s**2 - 4.*p

    if disc<-tol*size**2:
        return 'FF'

    root = np.sqrt(max(disc, 0.))
    letters = []
    for z in sorted((0.5*(s - root), 0.5*(s + root))):
        if z<-tol*size:
            letters.append('E')
        elif z>tol*size:
            letters.append('H')
        else:
            letters.append('0')
    return ''.join(sorted(letters))



def _rankAndKernel(L: np.ndarray,
                   f: QuadraticObservable,
                   g: QuadraticObservable) -> Tuple[int, np.ndarray]:
    """
    Return the rank of the momentum map at L and the (alpha, beta) of the
    smallest singular value of [X_f, X_g].
    """

    B = lpStructure(L)
    gf, gg = f.gradient(L), g.gradient(L)
    M = np.stack((B@gf, B@gg), axis=1)
    _, sv, vt = np.linalg.svd(M)
    scale = np.linalg.norm(L)*max(np.linalg.norm(gf), np.linalg.norm(gg), np.finfo(float).tiny)
    rank = int(np.sum(sv>config['tolZeroEigenvalue']*scale))
    return rank, vt[-1]



def momentumMapRank(L: Sequence[float],
                    spec: SystemSpec) -> int:
    """
    Return the rank (0, 1 or 2) of the momentum map at L on its leaf.
    """

    f, g = buildIntegrals(spec)
    return _rankAndKernel(np.asarray(L, dtype=float), f, g)[0]



def _sphericalOrDegenerate(L: np.ndarray,
                           T: np.ndarray,
                           candidates: Sequence[QuadraticObservable]) -> SingularityType:
    """
    Tell a spherical type point from a degenerate one: for a candidate
    combination with zero spectrum, the Hessian on the leaf has a two
    dimensional kernel which is filled with critical points of the same
    combination (a sphere of equilibria).
    """

    tol = config['tolZeroEigenvalue']
    C1, C2 = casimirObservables()
    N = np.stack((2.*L, hodgeDual(L)), axis=1)
    norm = np.linalg.norm(L)

    for F in candidates:
        if _eigenPattern(T.T@linearisation(F, L)@T)!='00':
            continue

        mu = np.linalg.lstsq(N, F.gradient(L), rcond=None)[0]
        H = T.T@(F.hessian() - mu[0]*C1.hessian() - mu[1]*C2.hessian())@T
        w, V = np.linalg.eigh(H)
        zero = np.abs(w)<=tol*max(float(np.max(np.abs(w))), np.finfo(float).tiny)
        if np.sum(~zero)!=2:
            continue

        K = T@V[:, zero]
        eps = 1e-3*norm
        scale = max(float(np.linalg.norm(F.hessian())), np.finfo(float).tiny)
        filled = True
        for theta in (0., np.pi/3., 2.*np.pi/3.):
            Lp = L + eps*(np.cos(theta)*K[:, 0] + np.sin(theta)*K[:, 1])
            Lp *= norm/np.linalg.norm(Lp)
            if np.linalg.norm(lpStructure(Lp)@F.gradient(Lp))>1e-6*eps**2*scale:
                filled = False
                break
        if filled:
            return SingularityType.SPHERICAL

    return SingularityType.DEGENERATE



def classify(L: Sequence[float],
             spec: SystemSpec) -> SingularityType:
    """
    Return the singularity type of the point L of the reduced system.

    The linearisation of the vector field of a combination alpha f + beta g
    is restricted to the leaf through L, where its eigenvalues come in
    pairs. At rank one the combination is the one whose vector field
    vanishes, at rank zero a generic one.
    """

    L = np.asarray(L, dtype=float)
    f, g = buildIntegrals(spec)
    rank, kernel = _rankAndKernel(L, f, g)

    if rank==2:
        return SingularityType.REGULAR

    T = _leafBasis(L)

    if rank==1:
        F = f*float(kernel[0]) + g*float(kernel[1])
        pattern = _eigenPattern(T.T@linearisation(F, L)@T)
        if pattern=='00':
            return _sphericalOrDegenerate(L, T, [F])
        if pattern in ('0E', 'EE'):
            return SingularityType.RANK1ELLIPTIC
        if pattern in ('0H', 'HH'):
            return SingularityType.RANK1HYPERBOLIC
        if pattern=='EH':
            logger.debug('Rank one point with two non zero pairs at {}'.format(L))
        return SingularityType.DEGENERATE

    candidates = []
    best = None
    for angle in GENERICANGLES:
        F = f*np.cos(angle) + g*np.sin(angle)
        candidates.append(F)
        pattern = _eigenPattern(T.T@linearisation(F, L)@T)
        if pattern=='FF' or '0' not in pattern:
            best = pattern
            break

    if best is None:
        return _sphericalOrDegenerate(L, T, [f, g] + candidates)

    return {'FF' : SingularityType.FF,
            'EE' : SingularityType.EE,
            'EH' : SingularityType.EH,
            'HH' : SingularityType.HH}[best]



###########################################################################
#
#
#                           Diagrams and critical points
#
#
###########################################################################



def _typeAt(curve: BifurcationCurve,
            t: float,
            spec: SystemSpec) -> RankOneType:

    kind = classify(curve.pointsAt(t, 0.37)[0], spec)
    return RANKONE.get(kind, RankOneType.DEGENERATE)



def _segments(curve: BifurcationCurve,
              spec: SystemSpec,
              n: int=24) -> Tuple[Segment, ...]:
    """
    Classify n midpoints of the curve and locate the changes of type by
    bisection, snapped to the breakpoints of the curve.
    """

    if curve.kind==CurveKind.POINT:
        return ()

    lo, hi = curve.tRange
    ts = lo + (np.arange(n) + 0.5)*(hi - lo)/n
    types = [_typeAt(curve, t, spec) for t in ts]

    segments = []
    start = lo
    for k in range(1, n):
        if types[k]==types[k-1]:
            continue
        a, b = ts[k-1], ts[k]
        for _ in range(40):
            mid = 0.5*(a + b)
            if _typeAt(curve, mid, spec)==types[k-1]:
                a = mid
            else:
                b = mid
        cut = 0.5*(a + b)
        for bp in curve.breakpoints:
            if abs(bp - cut)<1e-6*(hi - lo):
                cut = bp
        segments.append(Segment(float(start), float(cut), types[k-1]))
        start = cut
    segments.append(Segment(float(start), float(hi), types[-1]))

    logger.debug('Curve {}: {}'.format(curve.name, ', '.join('[{:.6g}, {:.6g}] {}'.format(s.lo, s.hi, s.type.value) for s in segments)))

    return tuple(segments)



@lru_cache(maxsize=32)
def bifurcationSet(spec: SystemSpec,
                   segments: bool=True) -> BifurcationDiagram:
    """
    Return the bifurcation diagram of a family: every curve of critical
    values with its coefficients, parameter range, critical points and,
    when segments is True, the rank one type of its sub-arcs, together
    with the vertices.
    """

    curves, vertices = BUILDERS[spec.family](spec)
    if segments:
        curves = [replace(curve, segments=_segments(curve, spec)) for curve in curves]
    return BifurcationDiagram(spec, tuple(curves), tuple(vertices))



@dataclass(frozen=True, eq=False)
class CriticalSet:
    """
    Critical points sampled above a critical value.

    Parameters
    ----------
    spec : SystemSpec
    value : IntegralValues
    curves : tuple
        Names of the curves through the value.
    points : np.ndarray
        Critical points, shape (n, 6).
    combinations : np.ndarray
        (alpha, beta) of each point, shape (n, 2), the vector field of
        alpha f + beta g vanishing there.
    """

    spec: SystemSpec
    value: IntegralValues
    curves: Tuple[str, ...]
    points: np.ndarray
    combinations: np.ndarray

    def __len__(self) -> int:
        return len(self.points)



    def kernelResidual(self) -> float:
        """
        Return max |B_L grad(alpha f + beta g)| over the points.
        """

        f, g = buildIntegrals(self.spec)
        residual = 0.
        for L, (alpha, beta) in zip(self.points, self.combinations):
            X = lpStructure(L)@(alpha*f.gradient(L) + beta*g.gradient(L))
            residual = max(residual, float(np.linalg.norm(X))/max(1., abs(alpha), abs(beta)))
        return residual



    def ranks(self) -> np.ndarray:
        return np.array([momentumMapRank(L, self.spec) for L in self.points])



    def lowestRank(self) -> np.ndarray:
        """
        Return the points of lowest momentum map rank.
        """

        ranks = self.ranks()
        return self.points[ranks==np.min(ranks)]



def criticalPoints(spec: SystemSpec,
                   value: ValueLike,
                   n: int=16) -> CriticalSet:
    """
    Return the critical points above a critical value, n angles being
    sampled on every critical circle.

    Raises
    ------
    DomainError
        value off the bifurcation set, the message carries the distance.
    """

    value = _asValues(value, spec)
    diagram = bifurcationSet(spec, segments=False)
    tol = config['tolBifurcationDistance']*scaleOf(value.asTuple())

    hits = []
    closest = float('inf')
    for curve in diagram.curves:
        d, t = curve.distance(value)
        closest = min(closest, d)
        if d<=tol:
            hits.append((curve, t))

    if not hits:
        raise DomainError('Value ({:.12g}, {:.12g}) is off the bifurcation set, distance {:.3e}'.format(value.x, value.y, closest))

    points, combinations = [], []
    for curve, t in hits:
        angles = [0.] if curve.kind==CurveKind.POINT else np.linspace(0., 2.*np.pi, n, endpoint=False)
        for phi in angles:
            P = curve.pointsAt(t, phi)
            points.extend(P)
            combinations.extend([curve.combination(t)]*len(P))

    return CriticalSet(spec=spec,
                       value=value,
                       curves=tuple(curve.name for curve, _ in hits),
                       points=np.array(points),
                       combinations=np.array(combinations, dtype=float))



def vertexType(spec: SystemSpec,
               name: str) -> SingularityType:
    """
    Return the singularity type of the lowest rank critical points of a
    vertex.
    """

    vertex = bifurcationSet(spec, segments=False).vertex(name)
    points = criticalPoints(spec, vertex.value).lowestRank()
    return classify(points[0], spec)



###########################################################################
#
#
#                           Chambers and fibres
#
#
###########################################################################



def _rootIntervals(r: float,
                   e: Sequence[float]) -> List[int]:
    """
    Return the intervals [e_k, e_k+1] holding r, two of them when r sits on
    a shared end point.
    """

    return [k + 1 for k in range(3) if e[k]<=r<=e[k+1]] or [0]



def _accessible(value: IntegralValues,
                spec: SystemSpec,
                m: int=9) -> bool:
    """
    Check that p^2 >= 0 on the interval of every separated coordinate.
    """

    tol = config['tolDiscriminant']*scaleOf(value.asTuple())
    for interval in motionIntervals(value, spec):
        if interval.hi<interval.lo - config['tolZeroInterval']:
            return False
        if interval.hi - interval.lo<=config['tolZeroInterval']:
            continue
        for s in interval.lo + (np.arange(m) + 0.5)*(interval.hi - interval.lo)/m:
            if separatedMomentumSq(s, interval.coordinate, value, spec)<-tol:
                return False
    return True



def chamber(value: ValueLike,
            spec: SystemSpec) -> Chamber:
    """
    Return the chamber of a value, OUTSIDE when it is not in the image of
    the momentum map.

    Ellipsoidal chambers are coded by the intervals [e_k, e_k+1] of the two
    turning roots, the code (2, 2) having four tori in its fibres and the
    other ones two.
    """

    value = _asValues(value, spec)
    x, y, twoH = value.x, value.y, value.twoH
    tol = config['tolBifurcationDistance']*scaleOf(value.asTuple())

    if spec.family==Family.ELLIPSOIDAL:
        try:
            r1, r2 = turningRoots(value, spec)
        except NotInImageError:
            return OUTSIDE
        codes = [(k1, k2) for k1 in _rootIntervals(r1, spec.e) for k2 in _rootIntervals(r2, spec.e)
                 if (k1, k2) in ((1, 2), (1, 3), (2, 2), (2, 3))]
        if not codes or not _accessible(value, spec):
            return OUTSIDE
        code = codes[0]
        return Chamber(code, 4 if code==(2, 2) else 2)

    elif spec.family==Family.PROLATE:
        if x**2<=twoH + tol and -tol<=y<=spec.b*(twoH - x**2) + tol:
            return Chamber('T2', 1)

    elif spec.family==Family.OBLATE:
        a = spec.a
        lstar = np.sqrt(twoH*(a - 1.)/a)
        lower = twoH - x**2
        upper = (np.sqrt(twoH*a) - np.sqrt(a - 1.)*abs(x))**2 if abs(x)<=lstar else lower
        if x**2<=twoH + tol and -tol<=y<=upper + tol:
            return Chamber('I', 1) if y<=lower else Chamber('II', 2)

    elif spec.family==Family.LAME:
        f1, f2, f3 = spec.f
        rest = twoH - x
        if -tol<=x<=twoH + tol and f1*rest - tol<=y<=f3*rest + tol:
            return Chamber('below-L2', 2) if y<f2*rest else Chamber('above-L2', 2)

    elif spec.family==Family.SPHERICAL23:
        if x**2<=twoH + tol and -tol<=y<=twoH - x**2 + tol:
            return Chamber('T2', 1)

    elif spec.family==Family.CYLINDRICAL:
        if abs(x) + abs(y)<=np.sqrt(twoH) + tol:
            return Chamber('T2', 1)

    return OUTSIDE



def fibreDescription(value: ValueLike,
                     spec: SystemSpec) -> str:
    """
    Return a description of the fibre above a value: the critical fibre of
    a vertex or a curve, '<m>T2' for regular values, 'empty' outside of the
    image.
    """

    value = _asValues(value, spec)
    diagram = bifurcationSet(spec, segments=False)
    tol = config['tolBifurcationDistance']*scaleOf(value.asTuple())

    for vertex in diagram.vertices:
        if np.hypot(vertex.value[0] - value.x, vertex.value[1] - value.y)<=tol:
            return vertex.fibre

    d, curve, t = diagram.distance(value)
    if curve is not None and d<=tol:
        return curve.fibreAt(t)

    c = chamber(value, spec)
    if c==OUTSIDE:
        return 'empty'
    return '{}T2'.format(c.multiplicity) if c.multiplicity>1 else 'T2'



###########################################################################
#
#
#                           Uhlenbeck integrals
#
#
###########################################################################



def uhlenbeck(L: Sequence[float],
              spec: SystemSpec) -> np.ndarray:
    """
    Return the four Uhlenbeck integrals

        F_i = sum_{j != i} l_ij^2/(e_i - e_j),

    or their limits for the oblate and Lamé families:
        oblate : (-G/a, (G + l34^2 - 2h)/(a - 1), l34^2, l34^2)
        Lamé   : (-F_L, l23^2/(f1-f2) + l24^2/(f1-f3),
                        l23^2/(f2-f1) + l34^2/(f2-f3),
                        l24^2/(f3-f1) + l34^2/(f3-f2))
    2h being the Casimir C1 of L.

    Raises
    ------
    DomainError
        Families whose limit is not defined.
    """

    L = np.asarray(L, dtype=float)
    l12, l13, l14, l23, l24, l34 = L

    if spec.family==Family.ELLIPSOIDAL:
        e = spec.e
        F = np.zeros(4)
        for k, (i, j) in enumerate(PAIRS):
            F[i] += L[k]**2/(e[i] - e[j])
            F[j] += L[k]**2/(e[j] - e[i])
        return F

    elif spec.family==Family.OBLATE:
        a = spec.a
        G = a*l12**2 + l13**2 + l14**2
        return np.array([-G/a, (G + l34**2 - float(L@L))/(a - 1.), l34**2, l34**2])

    elif spec.family==Family.LAME:
        f1, f2, f3 = spec.f
        return np.array([-(l12**2 + l13**2 + l14**2),
                         l23**2/(f1 - f2) + l24**2/(f1 - f3),
                         l23**2/(f2 - f1) + l34**2/(f2 - f3),
                         l24**2/(f3 - f1) + l34**2/(f3 - f2)])

    raise DomainError('No Uhlenbeck integrals for the {} family'.format(spec.family.value))



def uhlenbeckIdentityResidual(L: Sequence[float],
                              spec: SystemSpec,
                              z: Union[float, Sequence[float]]) -> float:
    """
    Return the largest residual over z of the partial fraction identity

        sum F_i/(z - e_i) = (C1 z^2 - eta1 z + eta2)/prod (z - e_k).
    """

    L = np.asarray(L, dtype=float)
    z = np.atleast_1d(np.asarray(z, dtype=float))
    e = np.asarray(spec.e, dtype=float)
    F = uhlenbeck(L, spec)
    eta1, eta2 = buildIntegrals(spec)

    left = np.sum(F[None, :]/(z[:, None] - e[None, :]), axis=1)
    right = (float(L@L)*z**2 - eta1(L)*z + eta2(L))/np.prod(z[:, None] - e[None, :], axis=1)
    return float(np.max(np.abs(left - right)))



###########################################################################
#
#
#                           S2
#
#
###########################################################################



class S2Bifurcation(NamedTuple):
    segment: Tuple[float, float]
    criticalValues: Tuple[float, ...]
    types: Tuple[RankOneType, ...]



def s2Bifurcation(e: Optional[Sequence[float]]=None,
                  kind: Union[S2Kind, str]=S2Kind.ELLIPTIC,
                  twoH: float=1.) -> S2Bifurcation:
    """
    Return the image segment of eta1 on S2, its critical values and their
    types.

    Raises
    ------
    DomainError
        e not strictly increasing.
    """

    critical = s2CriticalPoints(e, kind, twoH)
    values = tuple(v for v, _ in critical)
    types = tuple(RankOneType(s2Classify(e, points[0], kind)) for _, points in critical)
    return S2Bifurcation((min(values), max(values)), values, types)
