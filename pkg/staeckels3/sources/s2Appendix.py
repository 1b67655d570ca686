# This Python file uses the following encoding: utf-8
from enum import Enum
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union
import logging
import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import null_space

from .config import loadConfigCurrent
config = loadConfigCurrent()
from .errors import DomainError, StepSizeUnderflowError
from .so4Core import lpStructure

logger = logging.getLogger(__name__)

# Position of (l12, l13, l23) among the six angular momenta of so*(4)
S2INDICES = (0, 1, 3)



class S2Kind(str, Enum):
    ELLIPTIC  = 'elliptic'
    SPHERICAL = 'spherical'



class S2Bivector(NamedTuple):
    """
    Angular momenta (l12, l13, l23) of the geodesic flow on S2.
    """

    l12: float
    l13: float
    l23: float

    @property
    def casimir(self) -> float:
        return self.l12**2 + self.l13**2 + self.l23**2



def _checkOrdered(e: Sequence[float]) -> Tuple[float, float, float]:

    if len(e)!=3:
        raise DomainError('Three semi axes parameters expected, got {}'.format(len(e)))
    e1, e2, e3 = (float(ei) for ei in e)
    if not e1<e2<e3:
        raise DomainError('S2 parameters must satisfy e1 < e2 < e3, got {}'.format((e1, e2, e3)))
    return e1, e2, e3



def s2Weights(e: Optional[Sequence[float]]=None,
              kind: Union[S2Kind, str]=S2Kind.ELLIPTIC) -> np.ndarray:
    """
    Return the weights w of eta1 = w1 l12^2 + w2 l13^2 + w3 l23^2.
    """

    kind = S2Kind(kind)
    if kind==S2Kind.SPHERICAL:
        return np.array([0., 0., 1.])
    e1, e2, e3 = _checkOrdered(e)
    return np.array([e3, e2, e1])



def s2Integral(e: Optional[Sequence[float]],
               L: Sequence[float],
               kind: Union[S2Kind, str]=S2Kind.ELLIPTIC) -> float:
    """
    Return eta1 = e3 l12^2 + e2 l13^2 + e1 l23^2, or l23^2 in spherical
    coordinates.
    """

    L = np.asarray(L, dtype=float)
    return float(np.sum(s2Weights(e, kind)*L**2))



###########################################################################
#
#
#                           so(3) bracket
#
#
###########################################################################



def so3Structure(L: Sequence[float]) -> np.ndarray:
    """
    Return the 3x3 structure matrix of so*(3) at L = (l12, l13, l23), the
    restriction of the so*(4) matrix to the indices of S2INDICES.
    """

    embedded = np.zeros(6)
    embedded[list(S2INDICES)] = np.asarray(L, dtype=float)
    return lpStructure(embedded)[np.ix_(S2INDICES, S2INDICES)]



def s2Bracket(gradF: Sequence[float],
              gradG: Sequence[float],
              L: Sequence[float]) -> float:

    return float(np.asarray(gradF, dtype=float)@so3Structure(L)@np.asarray(gradG, dtype=float))



def eulerTopField(M: Sequence[float],
                  w: Sequence[float]) -> np.ndarray:
    """
    Vector field of the Euler top generated by H = sum w_k m_k^2 with the
    hat-map bracket,

        m1' = 2(w2 - w3) m2 m3,  m2' = 2(w3 - w1) m1 m3,  m3' = 2(w1 - w2) m1 m2.

    The weights are the inverse moments of inertia.
    """

    m1, m2, m3 = np.asarray(M, dtype=float)
    w1, w2, w3 = np.asarray(w, dtype=float)
    return 2.*np.array([(w2 - w3)*m2*m3,
                        (w3 - w1)*m1*m3,
                        (w1 - w2)*m1*m2])



###########################################################################
#
#
#                           Charts
#
#
###########################################################################



def s2Chart(kind: Union[S2Kind, str],
            s: Sequence[float],
            e: Optional[Sequence[float]]=None) -> np.ndarray:
    """
    Return (|x1|, |x2|, |x3|) of the point of S2 with separated coordinates s.

    Elliptic, e1 <= s1 <= e2 <= s2 <= e3:
        x_j^2 = (s1 - e_j)(s2 - e_j)/prod_{k != j}(e_k - e_j)
    Spherical, 0 <= s1, s2 <= 1:
        x1^2 = s1, x2^2 = (1 - s1) s2, x3^2 = (1 - s1)(1 - s2)

    Raises
    ------
    DomainError
        s outside of its intervals.
    """

    kind = S2Kind(kind)
    s1, s2 = (float(si) for si in s)

    if kind==S2Kind.SPHERICAL:
        bounds = ((0., 1.), (0., 1.))
    else:
        e1, e2, e3 = _checkOrdered(e)
        bounds = ((e1, e2), (e2, e3))

    for i, (si, (lo, hi)) in enumerate(zip((s1, s2), bounds)):
        tol = 1e-12*max(1., abs(lo), abs(hi))
        if not lo - tol<=si<=hi + tol:
            raise DomainError('Coordinate s{} = {} outside its interval [{}, {}]'.format(i+1, si, lo, hi))

    if kind==S2Kind.SPHERICAL:
        squares = np.array([s1, (1. - s1)*s2, (1. - s1)*(1. - s2)])
    else:
        e = np.array([e1, e2, e3])
        squares = np.array([(s1 - e[j])*(s2 - e[j])/np.prod([e[k] - e[j] for k in range(3) if k!=j]) for j in range(3)])

    return np.sqrt(np.clip(squares, 0., None))



###########################################################################
#
#
#                           Critical points
#
#
###########################################################################



def s2CriticalPoints(e: Optional[Sequence[float]],
                     kind: Union[S2Kind, str]=S2Kind.ELLIPTIC,
                     twoH: float=1.) -> List[Tuple[float, np.ndarray]]:
    """
    Return (critical value, critical points) of eta1 on the sphere of radius
    sqrt(2h). In spherical coordinates the equator l23 = 0 is sampled.
    """

    kind = S2Kind(kind)
    r = np.sqrt(twoH)
    w = s2Weights(e, kind)

    if kind==S2Kind.SPHERICAL:
        phi = np.linspace(0., 2.*np.pi, 12, endpoint=False)
        equator = r*np.stack((np.cos(phi), np.sin(phi), np.zeros_like(phi)), axis=1)
        return [(0., equator),
                (twoH, np.array([[0., 0., r], [0., 0., -r]]))]

    values = []
    # Increasing value: l23 axis (e1), l13 axis (e2), l12 axis (e3)
    for k in (2, 1, 0):
        axis = np.zeros(3)
        axis[k] = r
        values.append((float(twoH*w[k]), np.stack((axis, -axis))))
    return values



def s2Classify(e: Optional[Sequence[float]],
               L: Sequence[float],
               kind: Union[S2Kind, str]=S2Kind.ELLIPTIC) -> str:
    """
    Return 'Regular', 'Elliptic', 'Hyperbolic' or 'Degenerate' for the point L
    of the eta1 flow on its symplectic sphere.

    The linearisation B(L) H + A_grad is restricted to the tangent plane of
    the sphere, where its eigenvalues are +-sqrt(z) with z = tr(J^2)/2.
    """

    L = np.asarray(L, dtype=float)
    w = s2Weights(e, kind)
    grad = 2.*w*L
    B = so3Structure(L)
    tol = config['tolZeroEigenvalue']
    scale = max(1., np.max(np.abs(w)))*max(1., float(np.sum(L**2)))

    if np.linalg.norm(B@grad)>tol*scale:
        return 'Regular'

    A = np.stack([so3Structure(ek)@grad for ek in np.eye(3)], axis=1)
    J = B@np.diag(2.*w) + A
    T = null_space(L[None, :])
    Jr = T.T@J@T
    z = 0.5*np.trace(Jr@Jr)
    size = max(np.sum(Jr**2), np.finfo(float).tiny)

    if z<-tol*size:
        return 'Elliptic'
    elif z>tol*size:
        return 'Hyperbolic'
    return 'Degenerate'



###########################################################################
#
#
#                           Reduced flow
#
#
###########################################################################



def s2ReducedFlow(L0: Sequence[float],
                  e: Optional[Sequence[float]],
                  T: float,
                  kind: Union[S2Kind, str]=S2Kind.ELLIPTIC,
                  n: int=200) -> Tuple[np.ndarray, np.ndarray]:
    """
    Integrate the Euler top generated by eta1 on so*(3) up to time T.

    Returns
    -------
    t : np.ndarray
        Sample times, shape (n,).
    L : np.ndarray
        States, shape (n, 3).
    """

    w = s2Weights(e, kind)

    def rhs(t, y):
        return eulerTopField(y, w)

    sol = solve_ivp(rhs, (0., float(T)), np.asarray(L0, dtype=float),
                    method=config['odeMethod'],
                    rtol=config['odeRtol'],
                    atol=config['odeAtol'],
                    t_eval=np.linspace(0., float(T), n))
    if not sol.success:
        raise StepSizeUnderflowError('Euler top integration failed: {}'.format(sol.message))

    logger.debug('Euler top integrated up to T={} in {} evaluations'.format(T, sol.nfev))

    return sol.t, sol.y.T
