# This Python file uses the following encoding: utf-8
from dataclasses import dataclass
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple
import logging
import numpy as np

from .config import loadConfigCurrent
config = loadConfigCurrent()
from .errors import DomainError
from .functions import getRng, powerLawFit, relabelBivector, sampleLeaf
from .so4Core import buildIntegrals
from .systemSpec import Family, IntegralValues, SystemSpec

logger = logging.getLogger(__name__)



class AffineRecord(NamedTuple):
    """
    Affine map e -> alpha*e + beta acting on the ellipsoidal parameters.
    """

    alpha: float
    beta: float



class BlowupChart(NamedTuple):
    """
    Chart (q, r) = (1/b, (a-1)/(b-1)) blowing up the point a = b = 1.
    """

    q: float
    r: float



###########################################################################
#
#
#                           Equivalence classes
#
#
###########################################################################



def normalize(e: Sequence[float],
              casimirLevel: Optional[float]=None) -> Tuple[SystemSpec, AffineRecord]:
    """
    Normalize ordered distinct parameters (e1, e2, e3, e4) to (0, 1, a, b).

    Returns
    -------
    spec : SystemSpec
        Ellipsoidal system with parameters (0, 1, a, b), 1 < a < b.
    record : AffineRecord
        alpha = e2 - e1, beta = -e1, the normalized parameters being
        (e + beta)/alpha.
    """

    e = [float(ei) for ei in e]
    if len(e)!=4:
        raise DomainError('Four parameters expected, got {}'.format(len(e)))
    for i in range(3):
        if not e[i]<e[i+1]:
            raise DomainError('Parameters must satisfy e{0} < e{1}, got e{0}={2}, e{1}={3}'.format(i+1, i+2, e[i], e[i+1]))

    alpha = e[1] - e[0]
    beta = -e[0]
    a = (e[2] - e[0])/alpha
    b = (e[3] - e[0])/alpha

    return SystemSpec.ellipsoidal((0., 1., a, b), casimirLevel), AffineRecord(alpha, beta)



def reflect(e: Sequence[float]) -> Tuple[Tuple[float, ...], AffineRecord]:
    """
    Return the flipped parameters (-e4, -e3, -e2, -e1), an equivalent system,
    together with its record alpha = -1, beta = 0.
    """

    return tuple(-float(ei) for ei in reversed(e)), AffineRecord(-1., 0.)



def transformIntegralValues(eta: IntegralValues,
                            alpha: float,
                            beta: float,
                            h: Optional[float]=None) -> IntegralValues:
    """
    Return the values of the integrals of the system alpha*e + beta at the
    point where the system e takes the values eta,

        (eta1, eta2) -> (alpha eta1 + 4 beta h, alpha^2 eta2 + alpha beta eta1 + 2 beta^2 h).
    """

    if alpha==0:
        raise DomainError('Affine transformation needs alpha != 0')
    if h is None:
        h = eta.twoH/2.

    return IntegralValues(alpha*eta.eta1 + 4.*beta*h,
                          alpha**2*eta.eta2 + alpha*beta*eta.eta1 + 2.*beta**2*h,
                          eta.twoH)



def involution(a: float,
               b: float) -> Tuple[float, float]:
    """
    Return ((b-1)/(b-a), b/(b-a)), the normalized parameters of the flipped
    system. Its fixed points are the line 1/b + a/b = 1.
    """

    if a==b:
        raise DomainError('Involution undefined for a = b = {}'.format(a))
    return (b - 1.)/(b - a), b/(b - a)



def blowup(a: float,
           b: float,
           direction: Optional[float]=None) -> BlowupChart:
    """
    Return the chart (q, r) = (1/b, (a-1)/(b-1)) of the normalized parameters
    (0, 1, a, b).

    Parameters
    ----------
    a, b : float
        Normalized parameters, 1 <= a <= b.
    direction : float, optional
        Limit value of (a-1)/(b-1), required at the Lamé point a = b = 1.
    """

    if not 1.<=a<=b:
        raise DomainError('Blow-up chart needs 1 <= a <= b, got a={}, b={}'.format(a, b))

    if b==1.:
        if direction is None:
            raise DomainError('Blow-up of the Lamé point a = b = 1 needs a limit direction')
        if not 0.<=direction<=1.:
            raise DomainError('Limit direction must lie in [0, 1], got {}'.format(direction))
        return BlowupChart(1., float(direction))

    return BlowupChart(1./b, (a - 1.)/(b - 1.))



def faceOfBlowup(chart: BlowupChart,
                 tol: float=1e-12) -> str:
    """
    Return the name of the family of a point of the blow-up chart.

    The representative region is q >= (1-r)/(2-r); its boundary is made of
    the prolate edge r = 0, the oblate edge r = 1, the Lamé edge q = 1 and
    the line of fixed points of the involution.
    """

    q, r = chart
    if q<-tol or q>1.+tol or r<-tol or r>1.+tol:
        raise DomainError('Point (q, r)=({}, {}) outside the blow-up square'.format(q, r))

    fixed = (1. - r)/(2. - r)
    if q<fixed - tol:
        raise DomainError('Point (q, r)=({}, {}) outside the representative region q >= (1-r)/(2-r)'.format(q, r))

    onLame = abs(q - 1.)<=tol
    onProlate = abs(r)<=tol
    onOblate = abs(r - 1.)<=tol
    onFixed = abs(q - fixed)<=tol

    if onLame and (onProlate or onOblate):
        return 'spherical23'
    if onOblate and abs(q)<=tol:
        return 'cylindrical'
    if onProlate and onFixed:
        return 'symmetric prolate'
    if onLame:
        return 'lame'
    if onProlate:
        return 'prolate'
    if onOblate:
        return 'oblate'
    if onFixed:
        return 'self-dual ellipsoidal'
    return 'ellipsoidal'



def representativeChart(a: float,
                        b: float) -> Tuple[BlowupChart, bool]:
    """
    Return the chart of (a, b) or of its involution, whichever lies in the
    representative region q >= (1-r)/(2-r), and whether the involution was
    applied.
    """

    chart = blowup(a, b)
    q, r = chart
    if q>=(1. - r)/(2. - r):
        return chart, False
    return blowup(*involution(a, b)), True



def parameterActionMap(a: float,
                       b: float) -> Tuple[float, float]:
    """
    Return (J1, J3) = (2/pi)(asin(sqrt(1/b)), acos(sqrt(a/b))), the action
    coordinates of the hyperbolic-hyperbolic point of the system (0, 1, a, b).
    """

    return (2./np.pi*np.arcsin(np.sqrt(1./b)),
            2./np.pi*np.arccos(np.sqrt(a/b)))



###########################################################################
#
#
#                           Degenerations
#
#
###########################################################################



@dataclass(frozen=True)
class DegenerationPath:
    """
    An epsilon-perturbed source system together with the combination of its
    integrals that converges to the integrals of the target system.

    Linear target integrals are compared through their squares. The target
    integrals are taken at the relabelled angular momenta l_{order[i] order[j]}
    when the limit only matches the target up to a permutation of the
    coordinates.
    """

    source: SystemSpec
    target: SystemSpec
    epsilon: float
    relation: str
    combination: Callable[[float, float, float], Tuple[float, float]]
    order: Tuple[int, int, int, int] = (0, 1, 2, 3)

    def limitValues(self, L: np.ndarray) -> np.ndarray:
        """
        Return the combination of the source integrals at the points L,
        array of shape (n, 2).
        """

        L = np.atleast_2d(L)
        f, g = buildIntegrals(self.source)
        C1 = np.sum(L**2, axis=1)
        u, v = self.combination(f(L), g(L), C1)
        return np.stack((u, v), axis=1)

    def targetValues(self, L: np.ndarray) -> np.ndarray:
        """
        Return the integrals of the target at the points L, squared when
        linear, array of shape (n, 2).
        """

        L = np.atleast_2d(L)
        L = relabelBivector(L, self.order)
        values = []
        for obs in buildIntegrals(self.target):
            value = obs(L)
            values.append(value**2 if obs.isLinear else value)
        return np.stack(values, axis=1)

    def defect(self, L: np.ndarray) -> float:
        """
        Return max |target - limit| over the points L.
        """

        return float(np.max(np.abs(self.targetValues(L) - self.limitValues(L))))



def degenerationPath(source: SystemSpec,
                     target: Family,
                     epsilon: float) -> DegenerationPath:
    """
    Return the epsilon-perturbation of the source leading to the target family.

    Edges:
        ellipsoidal (0,1,a,b) -> prolate b      : e = (0, 1, 1+eps, b)
        ellipsoidal (0,1,a,b) -> oblate a       : e = (0, 1, a, a+eps)
        ellipsoidal (0,1,a,b) -> lame (1,a,b)   : e = (0, 1+eps, 1+eps a, 1+eps b)
        ellipsoidal           -> cylindrical    : e = (0, eps, 1, 1+eps)
        lame (f1,f2,f3)       -> spherical23    : f = (f1, f2, f2+eps)
        oblate a              -> spherical23    : a = 1+eps
        prolate b             -> spherical23    : b = 1+eps, target at (x1, x4, x2, x3)
    The ellipsoidal source is normalized first.
    """

    target = Family(target)
    if not epsilon>0:
        raise DomainError('Degeneration parameter must satisfy epsilon > 0, got {}'.format(epsilon))
    level = source.casimirLevel

    if source.family==Family.ELLIPSOIDAL:
        normalized, _ = normalize(source.e, level)
        _, _, a, b = normalized.e

        if target==Family.PROLATE:
            return DegenerationPath(source=SystemSpec.ellipsoidal((0., 1., 1. + epsilon, b), level),
                                    target=SystemSpec.prolate(b, level),
                                    epsilon=epsilon,
                                    relation='G_pro = eta2, l23^2 = (eta1 - eta2 - 2H)/(b-1)',
                                    combination=lambda eta1, eta2, C1: ((eta1 - eta2 - C1)/(b - 1.), eta2))

        elif target==Family.OBLATE:
            return DegenerationPath(source=SystemSpec.ellipsoidal((0., 1., a, a + epsilon), level),
                                    target=SystemSpec.oblate(a, level),
                                    epsilon=epsilon,
                                    relation='G_obl = eta2/a, l34^2 = (eta2/a - eta1 + a 2H)/(a-1)',
                                    combination=lambda eta1, eta2, C1: ((eta2/a - eta1 + a*C1)/(a - 1.), eta2/a))

        elif target==Family.LAME:
            return DegenerationPath(source=SystemSpec.ellipsoidal((0., 1. + epsilon, 1. + epsilon*a, 1. + epsilon*b), level),
                                    target=SystemSpec.lame((1., a, b), level),
                                    epsilon=epsilon,
                                    relation='F_L = eta2, G_L = (eta1 - 2H - eta2)/eps',
                                    combination=lambda eta1, eta2, C1: (eta2, (eta1 - C1 - eta2)/epsilon))

        elif target==Family.CYLINDRICAL:
            if not epsilon<1.:
                raise DomainError('Cylindrical degeneration needs epsilon < 1, got {}'.format(epsilon))
            return DegenerationPath(source=SystemSpec.ellipsoidal((0., epsilon, 1., 1. + epsilon), level),
                                    target=SystemSpec.cylindrical(level),
                                    epsilon=epsilon,
                                    relation='l12^2 = eta2, l34^2 = 2H + eta2 - eta1',
                                    combination=lambda eta1, eta2, C1: (eta2, C1 + eta2 - eta1))

    elif source.family==Family.LAME and target==Family.SPHERICAL23:
        f1, f2, _ = source.f
        return DegenerationPath(source=SystemSpec.lame((f1, f2, f2 + epsilon), level),
                                target=SystemSpec.spherical23(level),
                                epsilon=epsilon,
                                relation='G_23 = F_L, l34^2 = (f2(2H - F_L) - G_L)/(f2-f1)',
                                combination=lambda F, G, C1: ((f2*(C1 - F) - G)/(f2 - f1), F))

    elif source.family==Family.OBLATE and target==Family.SPHERICAL23:
        return DegenerationPath(source=SystemSpec.oblate(1. + epsilon, level),
                                target=SystemSpec.spherical23(level),
                                epsilon=epsilon,
                                relation='G_23 = G_obl, l34 = l34',
                                combination=lambda l34, G, C1: (l34**2, G))

    elif source.family==Family.PROLATE and target==Family.SPHERICAL23:
        # l23 becomes the l34 of the target and G_pro its G_23
        return DegenerationPath(source=SystemSpec.prolate(1. + epsilon, level),
                                target=SystemSpec.spherical23(level),
                                epsilon=epsilon,
                                relation='G_23 = G_pro, l34 = l23 after relabelling',
                                combination=lambda l23, G, C1: (l23**2, G),
                                order=(0, 3, 1, 2))

    raise DomainError('No degeneration from {} to {}'.format(source.family.value, target.value))



def degenerationOrder(source: SystemSpec,
                      target: Family,
                      ladder: Optional[Sequence[float]]=None,
                      n: int=1000,
                      seed: Optional[int]=None) -> Tuple[float, List[float]]:
    """
    Return the fitted order p of the defect C*eps**p of a degeneration edge
    over the epsilon ladder, and the defects themselves.
    """

    if ladder is None:
        ladder = config['epsilonLadder']

    L = sampleLeaf(n, getRng(seed), source.casimirLevel)
    defects = [degenerationPath(source, target, eps).defect(L) for eps in ladder]
    _, order = powerLawFit(ladder, defects)

    logger.debug('Degeneration {} -> {}: defects {}, order {:.3f}'.format(source.family.value, Family(target).value, defects, order))

    return order, defects
