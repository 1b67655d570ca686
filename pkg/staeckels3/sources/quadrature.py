# This Python file uses the following encoding: utf-8
from typing import Callable, Optional
import logging
import numpy as np

from .config import loadConfigCurrent
config = loadConfigCurrent()

logger = logging.getLogger(__name__)



class IntegrationQuadrature:
    """
    Adaptive Gauss-Legendre quadrature.

    Parameters
    ----------
    n : int
        Quadrature order (number of nodes per panel), from the configuration
        by default.
    tol : float
        Absolute tolerance of an integral, from the configuration by default.
    maxDepth : int
        Maximum number of bisections of a panel.
    """

    def __init__(self, n: Optional[int]=None,
                       tol: Optional[float]=None,
                       maxDepth: Optional[int]=None) -> None:

        self.n        = int(config['quadratureOrder']) if n is None else int(n)
        self.tol      = float(config['quadratureTolerance']) if tol is None else float(tol)
        self.maxDepth = int(config['quadratureMaxDepth']) if maxDepth is None else int(maxDepth)
        self.xg, self.wg = np.polynomial.legendre.leggauss(self.n)

        # Set when a panel hits the depth limit during the last integration
        self.depthReached = False



    def fixed(self, fun: Callable[[np.ndarray], np.ndarray],
                    lo: float,
                    hi: float) -> float:
        """
        Integrate fun over [lo, hi] with a single panel. fun is evaluated on
        the array of nodes.
        """

        mid = 0.5*(hi + lo)
        half = 0.5*(hi - lo)
        return float(half*np.sum(self.wg*fun(mid + half*self.xg)))



    def integrate(self, fun: Callable[[np.ndarray], np.ndarray],
                        lo: float,
                        hi: float) -> float:
        """
        Integrate fun over [lo, hi] by recursive bisection until the two
        halves agree with the whole panel.

        The tolerance is halved with each bisection but never goes below
        config['quadratureRelativeFloor'] times the estimate of the whole
        integral, where the rounding of the panels dominates.
        """

        self.depthReached = False

        sign = 1.
        if hi<lo:
            lo, hi = hi, lo
            sign = -1.

        if hi - lo<config['tolZeroInterval']:
            logger.debug('Zero length interval [{}, {}]'.format(lo, hi))
            return 0.

        whole = self.fixed(fun, lo, hi)
        floor = float(config['quadratureRelativeFloor'])*abs(whole)
        return sign*self._refine(fun, lo, hi, whole, max(self.tol, floor), floor, 0)



    def _refine(self, fun: Callable[[np.ndarray], np.ndarray],
                      lo: float,
                      hi: float,
                      whole: float,
                      tol: float,
                      floor: float,
                      depth: int) -> float:

        mid = 0.5*(lo + hi)
        left = self.fixed(fun, lo, mid)
        right = self.fixed(fun, mid, hi)

        if abs(left + right - whole)<=tol:
            return left + right

        if depth>=self.maxDepth:
            if not self.depthReached:
                logger.warning('Quadrature depth limit {} reached on [{:.6g}, {:.6g}], error estimate {:.3e}'.format(self.maxDepth, lo, hi, abs(left + right - whole)))
            self.depthReached = True
            return left + right

        tol = max(0.5*tol, floor)
        return self._refine(fun, lo, mid, left, tol, floor, depth+1)\
              +self._refine(fun, mid, hi, right, tol, floor, depth+1)



    def integrateSqrtEnds(self, fun: Callable[..., np.ndarray],
                                lo: float,
                                hi: float,
                                offsets: bool=False) -> float:
        """
        Integrate fun over [lo, hi] when fun behaves like |s - end|^(+-1/2)
        at both ends.

        The substitution s = lo + w (1 - cos(phi)), w the half width and
        phi in [0, pi], turns both square root behaviours into smooth
        integrands.

        Parameters
        ----------
        fun : callable
            fun(s), or fun(s, dlo, dhi) when offsets is True, dlo = s - lo
            and dhi = hi - s being computed without the rounding of s.
        """

        if abs(hi - lo)<config['tolZeroInterval']:
            logger.debug('Zero length interval [{}, {}]'.format(lo, hi))
            return 0.

        w = 0.5*(hi - lo)

        def substituted(phi):
            dlo = 2.*w*np.sin(0.5*phi)**2
            dhi = 2.*w*np.cos(0.5*phi)**2
            s = np.where(phi<0.5*np.pi, lo + dlo, hi - dhi)
            values = fun(s, dlo, dhi) if offsets else fun(s)
            return values*w*np.sin(phi)

        return self.integrate(substituted, 0., np.pi)
