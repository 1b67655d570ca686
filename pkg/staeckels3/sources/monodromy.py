# This Python file uses the following encoding: utf-8
from typing import NamedTuple, Optional, Sequence, Tuple
import logging
import numpy as np

from .config import loadConfigCurrent
config = loadConfigCurrent()
from .actions import actionTriple
from .criticalStructure import OUTSIDE, bifurcationSet, chamber
from .errors import DomainError
from .quadrature import IntegrationQuadrature
from .systemSpec import Family, SystemSpec
from .workers.sweepGrid import sweepGrid

logger = logging.getLogger(__name__)



class MonodromyResult(NamedTuple):
    """
    Holonomy of the period lattice along a loop of regular values.

    matrix expresses the actions continued around the loop in terms of the
    actions (J1, J2, J3) at the starting point, raw is the same matrix
    before rounding and residual the largest rounding distance met along
    the loop.
    """

    matrix: np.ndarray
    raw: np.ndarray
    residual: float
    loop: np.ndarray



def circleLoop(center: Sequence[float],
               radius: float,
               n: Optional[int]=None,
               clockwise: bool=True) -> np.ndarray:
    """
    Return n points (n, 2) on a circle in the plane of values.

    The points sit at half steps of the angle, starting next to the
    rightmost point of the circle, so that with n a multiple of 4 none of
    them lies on the vertical line through the center.
    """

    n = int(config['monodromyPoints']) if n is None else int(n)
    if n<8:
        raise DomainError('A loop needs at least 8 points, got {}'.format(n))

    sign = -1. if clockwise else 1.
    theta = sign*2.*np.pi*(np.arange(n) + 0.5)/n
    return np.asarray(center, dtype=float) + radius*np.stack((np.cos(theta), np.sin(theta)), axis=1)



def _checkLoop(loop: np.ndarray,
               spec: SystemSpec) -> None:

    diagram = bifurcationSet(spec, segments=False)
    margin = config['monodromyMargin']
    for x, y in loop:
        if chamber((x, y), spec)==OUTSIDE:
            raise DomainError('Loop point ({:.6g}, {:.6g}) is outside the image of the momentum map'.format(x, y))
        d, curve, t = diagram.distance((x, y))
        if d<=margin:
            raise DomainError('Loop point ({:.6g}, {:.6g}) is {:.3e} away from the curve {} of the bifurcation set, below the margin {:.1e}'.format(x, y, d, curve.name, margin))



def actionJet(value: Sequence[float],
              spec: SystemSpec,
              step: Optional[float]=None,
              quadrature: Optional[IntegrationQuadrature]=None) -> np.ndarray:
    """
    Return the 3 x 3 jet of the actions (J1, l23, J3) of the prolate system
    at value = (l23, G_pro): one row per action, holding its value and its
    two partial derivatives by central differences.

    The signed l23 replaces J2 = |l23| so that every row is smooth in l23
    except for the kink of either J1 or J3 at l23 = 0.
    """

    h = float(config['monodromyStep']) if step is None else float(step)
    if quadrature is None:
        quadrature = IntegrationQuadrature()
    x, y = (float(v) for v in value)

    def A(u, v):
        J = actionTriple((u, v), spec, quadrature)
        return np.array([J.J1, u, J.J3])

    jet = np.empty((3, 3))
    jet[:, 0] = A(x, y)
    jet[:, 1] = (A(x + h, y) - A(x - h, y))/(2.*h)
    jet[:, 2] = (A(x, y + h) - A(x, y - h))/(2.*h)
    return jet



def transport(loop: np.ndarray,
              jets: Sequence[np.ndarray]) -> Tuple[np.ndarray, np.ndarray, float]:
    """
    Continue a basis of the period lattice along the loop.

    At every point the continued actions are integer combinations B of the
    local actions whose jets are given. From one point to the next, the
    value of a continued action is predicted with the trapezoidal rule of
    its gradient and B is solved from the jets then rounded. A first pass
    uses the gradient of the previous point, a second one the average of
    the two gradients.

    Returns
    -------
    matrix : np.ndarray
        Integer matrix after a full turn.
    raw : np.ndarray
        The matrix before the last rounding.
    residual : float
        Largest rounding distance of the second passes.
    """

    n = len(loop)
    B = np.eye(3)
    raw = np.eye(3)
    residual = 0.

    for k in range(n):
        nxt = (k + 1)%n
        dv = loop[nxt] - loop[k]
        current = B@jets[k]
        inverse = np.linalg.inv(jets[nxt])

        # Predictor
        predicted = np.column_stack((current[:, 0] + current[:, 1:]@dv, current[:, 1:]))
        guess = np.rint(predicted@inverse)

        # Corrector
        gradient = (guess@jets[nxt])[:, 1:]
        predicted = np.column_stack((current[:, 0] + 0.5*(current[:, 1:] + gradient)@dv, gradient))
        raw = predicted@inverse
        B = np.rint(raw)

        if not np.array_equal(B, guess):
            logger.debug('Lattice basis corrected between points {} and {}'.format(k, nxt))
        residual = max(residual, float(np.max(np.abs(raw - B))))

    return B.astype(int), raw, residual



def monodromy(spec: SystemSpec,
              center: Optional[Sequence[float]]=None,
              radius: float=0.3,
              n: Optional[int]=None,
              clockwise: bool=True,
              loop: Optional[np.ndarray]=None,
              step: Optional[float]=None,
              threads: Optional[int]=None) -> MonodromyResult:
    """
    Return the monodromy of the prolate system along a loop of regular
    values.

    The default loop is a clockwise circle of the given radius around the
    focus-focus value (0, 2h), along which the lattice changes by

        [[1, 2, 0],
         [0, 1, 0],
         [0, -2, 1]]

    in the basis (J1, J2, J3) of the starting point, which has l23 > 0.
    A loop that does not encircle (0, 2h) gives the identity.

    Parameters
    ----------
    spec : SystemSpec
        A prolate system.
    center, radius, n, clockwise
        Circle of values, see circleLoop. Ignored when loop is given.
    loop : np.ndarray, optional
        Points (n, 2) of a closed loop, the last one joining the first.
    step : float, optional
        Step of the central differences.
    threads : int, optional
        Size of the worker pool computing the jets.

    Raises
    ------
    DomainError
        Not a prolate system, or a loop point outside the image or closer
        than config['monodromyMargin'] to the bifurcation set.
    """

    if spec.family!=Family.PROLATE:
        raise DomainError('Monodromy is computed for the prolate family, got {}'.format(spec.family.value))

    if loop is None:
        center = (0., spec.twoH) if center is None else center
        loop = circleLoop(center, radius, n, clockwise)
    loop = np.asarray(loop, dtype=float)

    if loop[0, 0]<=0.:
        logger.warning('Loop starts at l23 = {:.3g} <= 0, the matrix is then expressed with J2 = -l23'.format(loop[0, 0]))

    _checkLoop(loop, spec)

    jets = sweepGrid(lambda value: actionJet(value, spec, step), [tuple(v) for v in loop], threads)
    matrix, raw, residual = transport(loop, jets)

    if residual>1e-2:
        logger.warning('Monodromy rounding residual {:.3e} exceeds 1e-2, consider more loop points'.format(residual))
    logger.info('Monodromy along {} points: {} (residual {:.3e})'.format(len(loop), matrix.tolist(), residual))

    return MonodromyResult(matrix, raw, residual, loop)
