# This Python file uses the following encoding: utf-8
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple
import logging
import numpy as np
import pandas as pd
from scipy.optimize import brentq

from .config import loadConfigCurrent
config = loadConfigCurrent()
from .errors import DomainError, NotInImageError
from .functions import wedge
from .systemSpec import Family, IntegralValues, SystemSpec

logger = logging.getLogger(__name__)

# A chart entry: x_k^2 = const * prod over factors (s[index] - root)
Factor = Tuple[int, float]
ChartEntry = Tuple[float, Tuple[Factor, ...]]



class TurningRoots(NamedTuple):
    """
    Roots of the turning-point polynomial of a family.

    For the quadratic families (ellipsoidal, prolate, oblate, cylindrical)
    r1 <= r2. For the Lamé and spherical families the two roots belong to two
    different coordinates and are given in coordinate order.
    """

    r1: float
    r2: float



class MotionInterval(NamedTuple):
    """
    Interval [lo, hi] covered by one separated coordinate on a torus, and the
    closed form of its action when one is known.
    """

    coordinate: int
    lo: float
    hi: float
    closedForm: Optional[float] = None



class MomentumFactors(NamedTuple):
    """
    Factored separated momentum

        p^2 = scale prod_j (s - roots_j) / prod_k (s - poles_k)^order_k

    free of the cancellations of the Stäckel row next to a double pole.
    """

    scale: float
    roots: Tuple[float, ...]
    poles: Tuple[Tuple[float, int], ...]



@dataclass(frozen=True)
class CurvilinearPoint:
    """
    Separated coordinates (s1, s2, s3) of a point of S3 for a family.
    """

    s: Tuple[float, float, float]
    spec: SystemSpec

    def __post_init__(self) -> None:

        s = tuple(float(si) for si in self.s)
        if len(s)!=3:
            raise DomainError('Three separated coordinates expected, got {}'.format(len(s)))
        object.__setattr__(self, 's', s)

        for i, ((lo, hi), si) in enumerate(zip(coordinateIntervals(self.spec), s)):
            tol = 1e-12*max(1., abs(lo), abs(hi))
            if not lo - tol<=si<=hi + tol:
                raise DomainError('Coordinate s{} = {} outside its interval [{}, {}]'.format(i+1, si, lo, hi))



###########################################################################
#
#
#                           Charts
#
#
###########################################################################



def coordinateIntervals(spec: SystemSpec) -> List[Tuple[float, float]]:
    """
    Return the interval of each separated coordinate.
    """

    if spec.family==Family.ELLIPSOIDAL:
        e = spec.e
        return [(e[0], e[1]), (e[1], e[2]), (e[2], e[3])]
    elif spec.family==Family.PROLATE:
        return [(0., 1.), (0., 1.), (1., spec.b)]
    elif spec.family==Family.OBLATE:
        return [(0., 1.), (1., spec.a), (0., 1.)]
    elif spec.family==Family.LAME:
        f = spec.f
        return [(0., 1.), (f[0], f[1]), (f[1], f[2])]
    else:
        return [(0., 1.), (0., 1.), (0., 1.)]



def chartTable(spec: SystemSpec) -> List[ChartEntry]:
    """
    Return the chart of a family as four entries (const, factors) with

        x_k^2 = const * prod_{(i, root) in factors} (s_i - root).
    """

    if spec.family==Family.ELLIPSOIDAL:
        e = spec.e
        table = []
        for k in range(4):
            const = 1./np.prod([e[m] - e[k] for m in range(4) if m!=k])
            table.append((const, tuple((i, e[k]) for i in range(3))))
        return table

    elif spec.family==Family.PROLATE:
        b = spec.b
        return [(1./b,             ((0, 0.), (2, 0.))),
                (-1./(b - 1.),     ((0, 1.), (1, 0.), (2, 1.))),
                (1./(b - 1.),      ((0, 1.), (1, 1.), (2, 1.))),
                (1./((b - 1.)*b),  ((0, b), (2, b)))]

    elif spec.family==Family.OBLATE:
        a = spec.a
        return [(1./a,             ((0, 0.), (1, 0.))),
                (-1./(a - 1.),     ((0, 1.), (1, 1.))),
                (1./(a*(a - 1.)),  ((0, a), (1, a), (2, 0.))),
                (-1./(a*(a - 1.)), ((0, a), (1, a), (2, 1.)))]

    elif spec.family==Family.LAME:
        f1, f2, f3 = spec.f
        return [(1.,                          ((0, 0.),)),
                (-1./((f2 - f1)*(f3 - f1)),   ((0, 1.), (1, f1), (2, f1))),
                (1./((f1 - f2)*(f2 - f3)),    ((0, 1.), (1, f2), (2, f2))),
                (1./((f2 - f3)*(f3 - f1)),    ((0, 1.), (1, f3), (2, f3)))]

    elif spec.family==Family.SPHERICAL23:
        return [(1.,  ((0, 0.),)),
                (-1., ((0, 1.), (1, 0.))),
                (1.,  ((0, 1.), (1, 1.), (2, 0.))),
                (-1., ((0, 1.), (1, 1.), (2, 1.)))]

    elif spec.family==Family.CYLINDRICAL:
        return [(1.,  ((0, 0.), (1, 0.))),
                (-1., ((0, 1.), (1, 0.))),
                (-1., ((1, 1.), (2, 0.))),
                (1.,  ((1, 1.), (2, 1.)))]

    raise DomainError('No chart for family {}'.format(spec.family))



def cartesianSquares(s: Sequence[float],
                     spec: SystemSpec) -> np.ndarray:
    """
    Return x_k^2 for the separated coordinates s, without interval checks.
    """

    return np.array([const*np.prod([s[i] - root for i, root in factors])
                     for const, factors in chartTable(spec)])



def toCartesian(p: CurvilinearPoint) -> np.ndarray:
    """
    Return the magnitudes |x_k| of the point of S3 with coordinates p.s,
    sum x_k^2 = 1.
    """

    x2 = cartesianSquares(p.s, p.spec)
    # Rounding at the interval ends
    return np.sqrt(np.clip(x2, 0., None))



def _secularRoots(weights: Sequence[float],
                  poles: Sequence[float]) -> List[float]:
    """
    Return the n-1 roots of sum_k w_k prod_{j!=k} (s - p_j) for sorted poles
    and nonnegative weights. A vanishing weight contributes its pole as an
    exact root.
    """

    weights = np.clip(np.asarray(weights, dtype=float), 0., None)
    poles = np.asarray(poles, dtype=float)
    active = weights>0.

    roots = [float(p) for p in poles[~active]]
    w = weights[active]
    q = poles[active]

    def secular(s):
        return sum(w[k]*np.prod([s - q[j] for j in range(len(q)) if j!=k]) for k in range(len(q)))

    for j in range(len(q) - 1):
        roots.append(brentq(secular, q[j], q[j+1], xtol=1e-15, rtol=4.*np.finfo(float).eps))

    return sorted(roots)



def fromCartesian(x: Sequence[float],
                  spec: SystemSpec) -> CurvilinearPoint:
    """
    Return the separated coordinates of a point x of S3.

    The ellipsoidal coordinates are the roots of the cubic
    sum_i x_i^2 prod_{k!=i} (s - e_k) = 0. The other families reduce to the
    same secular equation on a lower dimensional sphere plus ratios.
    """

    x2 = np.asarray(x, dtype=float)**2
    tol = config['tolSphere']
    if abs(np.sum(x2) - 1.)>tol:
        raise DomainError('Point off the unit sphere, |x.x - 1| = {:.3e} > {:.1e}'.format(abs(np.sum(x2) - 1.), tol))

    def ratio(u, v):
        # u/(u + v), the coordinate being free when both vanish
        return u/(u + v) if u + v>0. else 0.

    if spec.family==Family.ELLIPSOIDAL:
        s = _secularRoots(x2, spec.e)

    elif spec.family==Family.PROLATE:
        s1, s3 = _secularRoots((x2[0], x2[1] + x2[2], x2[3]), (0., 1., spec.b))
        s = (s1, ratio(x2[1], x2[2]), s3)

    elif spec.family==Family.OBLATE:
        s1, s2 = _secularRoots((x2[0], x2[1], x2[2] + x2[3]), (0., 1., spec.a))
        s = (s1, s2, ratio(x2[2], x2[3]))

    elif spec.family==Family.LAME:
        s2, s3 = _secularRoots(x2[1:], spec.f)
        s = (x2[0], s2, s3)

    elif spec.family==Family.SPHERICAL23:
        rest = 1. - x2[0]
        s = (x2[0], min(x2[1]/rest, 1.) if rest>0. else 0., ratio(x2[2], x2[3]))

    elif spec.family==Family.CYLINDRICAL:
        s2 = x2[0] + x2[1]
        s = (ratio(x2[0], x2[1]), s2, ratio(x2[2], x2[3]))

    else:
        raise DomainError('No chart for family {}'.format(spec.family))

    # Clip rounding out of the intervals
    s = [float(np.clip(si, lo, hi)) for si, (lo, hi) in zip(s, coordinateIntervals(spec))]

    return CurvilinearPoint(tuple(s), spec)



def chartDerivative(s: Sequence[float],
                    x: Sequence[float],
                    spec: SystemSpec) -> np.ndarray:
    """
    Return the 3x4 matrix dx_k/ds_i of the chart at s, for the signed point x
    with these coordinates,

        dx_k/ds_i = x_k/2 * sum_{(i, root) in factors of x_k} 1/(s_i - root).
    """

    D = np.zeros((3, 4))
    for k, (_, factors) in enumerate(chartTable(spec)):
        for i, root in factors:
            D[i, k] += 0.5*x[k]/(s[i] - root)
    return D



def metricDiagonal(p: CurvilinearPoint) -> np.ndarray:
    """
    Return the diagonal metric g_ii = sum_k (dx_k/ds_i)^2 of the chart.
    """

    x = toCartesian(p)
    D = chartDerivative(p.s, x, p.spec)
    return np.sum(D**2, axis=1)



###########################################################################
#
#
#                           Stäckel matrices
#
#
###########################################################################



def stackelRow(i: int,
               s: float,
               spec: SystemSpec) -> np.ndarray:
    """
    Return the row i of the Stäckel matrix, a function of s = s_i only.
    The separated momenta are p_i^2 = row_i(s_i) . k, k the separation
    constants of separationConstants.
    """

    if spec.family==Family.ELLIPSOIDAL:
        A = np.prod([s - ek for ek in spec.e])
        return np.array([-s**2, -s, -1.])/(4.*A)

    elif spec.family==Family.PROLATE:
        b = spec.b
        if i==1:
            return np.array([0., 0., 1./(4.*s*(1. - s))])
        return np.array([-1./(4.*(s - b)*(s - 1.)),
                         1./(4.*s*(s - b)*(s - 1.)),
                         (b - 1.)/(4.*(s - b)*(s - 1.)**2)])

    elif spec.family==Family.OBLATE:
        a = spec.a
        if i==2:
            return np.array([0., 0., 1./(4.*s*(1. - s))])
        return np.array([-1./(4.*(s - 1.)*(s - a)),
                         1./(4.*s*(s - 1.)*(s - a)),
                         -(a - 1.)/(4.*(s - 1.)*(s - a)**2)])

    elif spec.family==Family.LAME:
        f1, f2, f3 = spec.f
        if i==0:
            return np.array([-1./((s - 1.)*s), -1./((s - 1.)**2*s), 0.])/4.
        return np.array([0.,
                         1./((f3 - s)*(s - f2)),
                         1./((f3 - s)*(s - f1)*(s - f2))])/4.

    elif spec.family==Family.SPHERICAL23:
        if i==0:
            return np.array([-1./(4.*(s - 1.)**2), 1./(4.*s*(s - 1.)**2), 0.])
        elif i==1:
            return np.array([-1./(4.*s*(s - 1.)), 1./(4.*s*(s - 1.)), -1./(4.*s*(s - 1.)**2)])
        return np.array([0., 0., 1./(4.*s*(1. - s))])

    elif spec.family==Family.CYLINDRICAL:
        if i==0:
            return np.array([0., 1./(4.*s*(1. - s)), 0.])
        elif i==1:
            return np.array([-1./(4.*s*(s - 1.)), 1./(4.*(s - 1.)*s**2), -1./(4.*(s - 1.)**2*s)])
        return np.array([0., 0., 1./(4.*s*(1. - s))])

    raise DomainError('No Stäckel matrix for family {}'.format(spec.family))



def separationConstants(values: IntegralValues,
                        spec: SystemSpec) -> np.ndarray:
    """
    Return the vector k = Phi^-1 (p1^2, p2^2, p3^2) in terms of the values of
    the integrals of the family:
        ellipsoidal : (2h, -eta1, eta2)
        prolate     : (2h, G_pro, l23^2)
        oblate      : (2h, G_obl, l34^2)
        lame        : (2h, 2h - F_L, f1 (2h - F_L) - G_L)
        spherical23 : (2h, G_23, l34^2)
        cylindrical : (2h, l12^2, l34^2)
    """

    twoH = values.twoH
    if spec.family==Family.ELLIPSOIDAL:
        return np.array([twoH, -values.eta1, values.eta2])
    elif spec.family in (Family.PROLATE, Family.OBLATE, Family.SPHERICAL23):
        return np.array([twoH, values.y, values.x**2])
    elif spec.family==Family.LAME:
        f1 = spec.f[0]
        return np.array([twoH, twoH - values.x, f1*(twoH - values.x) - values.y])
    elif spec.family==Family.CYLINDRICAL:
        return np.array([twoH, values.x**2, values.y**2])

    raise DomainError('No separation constants for family {}'.format(spec.family))



def stackelMatrix(spec: SystemSpec,
                  p: CurvilinearPoint) -> Tuple[np.ndarray, float]:
    """
    Return the Stäckel matrix Phi at p and the residual of the relation
    1/g_ii = (Phi^-1)_{1i} against the metric of the chart.

    Raises
    ------
    DomainError
        When Phi is singular, coincident coordinates for instance.
    """

    Phi = np.array([stackelRow(i, si, spec) for i, si in enumerate(p.s)])
    if not np.all(np.isfinite(Phi)):
        raise DomainError('Stäckel matrix undefined at s = {}, a coordinate sits on a pole'.format(p.s))

    cond = np.linalg.cond(Phi)
    if not np.isfinite(cond) or cond>1e14:
        raise DomainError('Singular Stäckel matrix at s = {} (condition number {:.3e})'.format(p.s, cond))

    inverse = np.linalg.inv(Phi)
    g = metricDiagonal(p)
    residual = float(np.max(np.abs(inverse[0]*g - 1.)))

    return Phi, residual



###########################################################################
#
#
#                           Separated momenta and turning points
#
#
###########################################################################



def separatedMomentumSq(s: float,
                        branch: int,
                        values: IntegralValues,
                        spec: SystemSpec) -> float:
    """
    Return p^2 of the coordinate ``branch`` (0, 1 or 2) at s. A negative
    value marks a classically forbidden s. At a pole of the row a signed
    infinity is returned, its sign being the one of p^2 next to the pole
    inside the coordinate interval.
    """

    k = separationConstants(values, spec)
    with np.errstate(divide='ignore', invalid='ignore'):
        value = float(stackelRow(branch, s, spec)@k)

    if np.isfinite(value):
        return value

    lo, hi = coordinateIntervals(spec)[branch]
    delta = 1e-9*max(1., hi - lo)
    shifted = s + delta if s<hi else s - delta
    with np.errstate(divide='ignore', invalid='ignore'):
        near = float(stackelRow(branch, shifted, spec)@k)
    return float(np.copysign(np.inf, near))



def _quadraticRoots(a: float,
                    b: float,
                    c: float,
                    values: IntegralValues) -> TurningRoots:
    """
    Return the sorted roots of a z^2 - b z + c, a > 0. The discriminant is
    clamped to zero below the configured tolerance.
    """

    disc = b**2 - 4.*a*c
    tol = config['tolDiscriminant']*max(1., b**2, abs(4.*a*c))
    if disc<0.:
        if disc<-tol:
            raise NotInImageError('Negative discriminant {:.3e} of the turning-point polynomial'.format(disc), values)
        logger.debug('Discriminant {:.3e} clamped to zero'.format(disc))
        disc = 0.

    sq = np.sqrt(disc)
    # Stable pair of roots
    if b>=0.:
        big = (b + sq)/(2.*a)
        small = c/(a*big) if big!=0. else 0.
    else:
        small = (b - sq)/(2.*a)
        big = c/(a*small) if small!=0. else 0.
    return TurningRoots(float(min(small, big)), float(max(small, big)))



def turningRoots(values: IntegralValues,
                 spec: SystemSpec) -> TurningRoots:
    """
    Return the turning points of the separated motion.

    Ellipsoidal: roots of R(z) = 2h z^2 - eta1 z + eta2.

    Raises
    ------
    NotInImageError
        Negative discriminant beyond the tolerance.
    """

    twoH = values.twoH

    if spec.family==Family.ELLIPSOIDAL:
        return _quadraticRoots(twoH, values.eta1, values.eta2, values)

    elif spec.family==Family.PROLATE:
        l, g = values.x, values.y
        return _quadraticRoots(twoH, g + twoH + (spec.b - 1.)*l**2, g, values)

    elif spec.family==Family.OBLATE:
        l, g = values.x, values.y
        a = spec.a
        return _quadraticRoots(twoH, a*twoH + g - (a - 1.)*l**2, a*g, values)

    elif spec.family==Family.CYLINDRICAL:
        l12, l34 = values.x, values.y
        return _quadraticRoots(twoH, twoH + l12**2 - l34**2, l12**2, values)

    elif spec.family==Family.LAME:
        F, G = values.x, values.y
        rest = twoH - F
        # On F = 2h every l_ij with i, j > 1 vanishes, and so does G
        rho = G/rest if abs(rest)>config['tolZeroInterval'] else spec.f[0]
        return TurningRoots(F/twoH, rho)

    elif spec.family==Family.SPHERICAL23:
        l, g = values.x, values.y
        rest = twoH - g
        r2 = 1. - l**2/rest if abs(rest)>config['tolZeroInterval'] else 0.
        return TurningRoots(g/twoH, r2)

    raise DomainError('No turning points for family {}'.format(spec.family))



def motionIntervals(values: IntegralValues,
                    spec: SystemSpec) -> List[MotionInterval]:
    """
    Return the interval covered by each separated coordinate on the tori of
    the values, as the integration limits of the actions.
    """

    r1, r2 = turningRoots(values, spec)
    twoH = values.twoH

    if spec.family==Family.ELLIPSOIDAL:
        e = spec.e
        return [MotionInterval(0, e[0], min(r1, e[1])),
                MotionInterval(1, max(r1, e[1]), min(r2, e[2])),
                MotionInterval(2, max(r2, e[2]), e[3])]

    elif spec.family==Family.PROLATE:
        return [MotionInterval(0, 0., r1),
                MotionInterval(1, 0., 1., abs(values.x)),
                MotionInterval(2, r2, spec.b)]

    elif spec.family==Family.OBLATE:
        return [MotionInterval(0, 0., min(r1, 1.)),
                MotionInterval(1, max(r1, 1.), r2),
                MotionInterval(2, 0., 1., abs(values.x))]

    elif spec.family==Family.LAME:
        f1, f2, f3 = spec.f
        F = values.x
        J1 = np.sqrt(twoH) - np.sqrt(twoH - F) if 0.<=F<=twoH else None
        return [MotionInterval(0, 0., r1, J1),
                MotionInterval(1, f1, min(r2, f2)),
                MotionInterval(2, max(r2, f2), f3)]

    elif spec.family==Family.SPHERICAL23:
        l, g = values.x, values.y
        J1 = np.sqrt(twoH) - np.sqrt(twoH - g) if 0.<=g<=twoH else None
        J2 = np.sqrt(twoH - g) - abs(l) if 0.<=g<=twoH and abs(l)<=np.sqrt(twoH - g) else None
        return [MotionInterval(0, 0., r1, J1),
                MotionInterval(1, 0., r2, J2),
                MotionInterval(2, 0., 1., abs(l))]

    elif spec.family==Family.CYLINDRICAL:
        J2 = np.sqrt(twoH) - abs(values.x) - abs(values.y)
        return [MotionInterval(0, 0., 1., abs(values.x)),
                MotionInterval(1, r1, r2, J2 if J2>=0. else None),
                MotionInterval(2, 0., 1., abs(values.y))]

    raise DomainError('No motion intervals for family {}'.format(spec.family))





def momentumFactors(branch: int,
                    values: IntegralValues,
                    spec: SystemSpec) -> Optional[MomentumFactors]:
    """
    Return the factored p^2 of a coordinate whose numerator is the
    turning-point polynomial -2h (s - r1)(s - r2), None for the other ones.

    Ellipsoidal : p^2 = -2h (s - r1)(s - r2)/(4 prod (s - e_i))
    Prolate     : p^2 = -2h (s - r1)(s - r2)/(4 s (s - b)(s - 1)^2), s1 and s3
    Oblate      : p^2 = -2h (s - r1)(s - r2)/(4 s (s - 1)(s - a)^2), s1 and s2
    """

    if spec.family==Family.ELLIPSOIDAL:
        poles = tuple((float(ek), 1) for ek in spec.e)
    elif spec.family==Family.PROLATE and branch in (0, 2):
        poles = ((0., 1), (spec.b, 1), (1., 2))
    elif spec.family==Family.OBLATE and branch in (0, 1):
        poles = ((0., 1), (1., 1), (spec.a, 2))
    else:
        return None

    return MomentumFactors(-0.25*values.twoH, tuple(turningRoots(values, spec)), poles)



def factoredMomentumSq(factors: MomentumFactors,
                       lo: float,
                       hi: float,
                       dlo: np.ndarray,
                       dhi: np.ndarray) -> np.ndarray:
    """
    Return p^2 at the points s = lo + dlo = hi - dhi of [lo, hi].

    Every difference s - c is taken from the end nearest to c, so a root or
    a pole sitting on an end gives the offset itself.
    """

    dlo = np.asarray(dlo, dtype=float)
    dhi = np.asarray(dhi, dtype=float)

    def difference(c):
        if abs(c - lo)<=abs(c - hi):
            return (lo - c) + dlo
        return (hi - c) - dhi

    value = factors.scale*np.ones_like(dlo)
    for r in factors.roots:
        value = value*difference(r)
    for c, order in factors.poles:
        value = value/difference(c)**order
    return value




###########################################################################
#
#
#                           Back to angular momenta
#
#
###########################################################################



def conjugateMomenta(x: Sequence[float],
                     y: Sequence[float],
                     spec: SystemSpec) -> Tuple[CurvilinearPoint, np.ndarray]:
    """
    Return the separated coordinates of x and the momenta
    p_i = sum_k y_k dx_k/ds_i conjugate to them.
    """

    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    p = fromCartesian(x, spec)
    D = chartDerivative(p.s, x, spec)
    return p, D@y



def angularMomentaFromSp(s: Sequence[float],
                         p: Sequence[float],
                         spec: SystemSpec,
                         signs: Sequence[int]=(1, 1, 1, 1)) -> np.ndarray:
    """
    Return the bivector L = x^y of the point with separated coordinates s
    and conjugate momenta p, the sign bits selecting the octant of x.

    The velocity is y = sum_i (p_i/g_ii) dx/ds_i.
    """

    point = CurvilinearPoint(tuple(s), spec)
    x = np.asarray(signs, dtype=float)*toCartesian(point)
    D = chartDerivative(point.s, x, spec)
    g = np.sum(D**2, axis=1)
    y = (np.asarray(p, dtype=float)/g)@D
    return wedge(x, y)



def rootDiagram(values: IntegralValues,
                spec: SystemSpec,
                n: int=200) -> pd.DataFrame:
    """
    Return p^2(s) sampled inside the interval of each coordinate, the data of
    a root diagram.

    Returns
    -------
    df : pd.DataFrame
        Columns coordinate, s, p2.
    """

    rows = []
    for i, (lo, hi) in enumerate(coordinateIntervals(spec)):
        # Open interval, the end points being poles
        for s in np.linspace(lo, hi, n + 2)[1:-1]:
            rows.append((i + 1, s, separatedMomentumSq(s, i, values, spec)))

    return pd.DataFrame(rows, columns=['coordinate', 's', 'p2'])
