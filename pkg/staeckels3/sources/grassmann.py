# This Python file uses the following encoding: utf-8
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence, Tuple
import logging
import numpy as np
from scipy.linalg import subspace_angles

from .config import loadConfigCurrent
config = loadConfigCurrent()
from .errors import DomainError
from .functions import getRng, sampleCotangent, wedge
from .so4Core import XYPair, casimirs, hodgeDual

logger = logging.getLogger(__name__)



@dataclass(frozen=True, eq=False)
class OrientedPlane:
    """
    An oriented 2-plane of R4 through an orthonormal basis (x, y). Its
    intersection with S3 is a great circle.
    """

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self) -> None:

        x = np.asarray(self.x, dtype=float).reshape(4)
        y = np.asarray(self.y, dtype=float).reshape(4)
        object.__setattr__(self, 'x', x)
        object.__setattr__(self, 'y', y)

        tol = 1e-12
        if abs(x@x - 1.)>tol or abs(y@y - 1.)>tol or abs(x@y)>tol:
            raise DomainError('Plane basis is not orthonormal: |x|^2={:.3e}, |y|^2={:.3e}, x.y={:.3e}'.format(x@x, y@y, x@y))



    @classmethod
    def fromVectors(cls, u: Sequence[float],
                         v: Sequence[float]) -> 'OrientedPlane':
        """
        Return the plane spanned by u then v, orthonormalised by Gram-Schmidt.

        Raises
        ------
        DomainError
            u and v are (numerically) parallel.
        """

        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        nu = np.linalg.norm(u)
        if nu==0.:
            raise DomainError('Degenerate plane basis, first vector is zero')
        x = u/nu
        w = v - (x@v)*x
        nw = np.linalg.norm(w)
        if nw<=1e-12*max(1., np.linalg.norm(v)):
            raise DomainError('Degenerate plane basis, the vectors are parallel')
        return cls(x, w/nw)



    @property
    def basis(self) -> np.ndarray:
        return np.stack((self.x, self.y))



def plucker(p: OrientedPlane) -> np.ndarray:
    """
    Return the decomposable unit bivector L = x^y of the plane, C1(L) = 1 and
    C2(L) = 0.
    """

    return wedge(p.x, p.y)



def hodgeStar(L: Sequence[float]) -> np.ndarray:
    """
    Return *L in the basis V_ij: *V12 = V34, *V13 = -V24, *V14 = V23 and
    symmetrically.
    """

    return hodgeDual(L)



def hodgeSplit(L: Sequence[float]) -> XYPair:
    """
    Return the self dual and anti self dual parts (L +- *L)/2 as 3-vectors
    in the bases (V12 + V34, V13 - V24, V14 + V23) and
    (V12 - V34, V13 + V24, V14 - V23).

    They coincide with split of so4Core, so that 4|X|^2 = C1 + 2 C2 and
    4|Y|^2 = C1 - 2 C2.
    """

    L = np.asarray(L, dtype=float)
    plus = 0.5*(L + hodgeStar(L))
    minus = 0.5*(L - hodgeStar(L))
    # (l12, l13, l14) carry the coefficient of each basis vector
    return XYPair(plus[:3].copy(), minus[:3].copy())



def pluckerMatrix(L: Sequence[float]) -> np.ndarray:
    """
    Return the matrix M_L of v -> v^L from R4 to the 3-vectors, in the bases
    (b1, b2, b3, b4) and (b123, b124, b134, b234).
    """

    l12, l13, l14, l23, l24, l34 = np.asarray(L, dtype=float)
    return np.array([[l23, -l13, l12, 0.],
                     [l24, -l14, 0., l12],
                     [l34, 0., -l14, l13],
                     [0., l34, -l24, l23]])



def minors3(L: Sequence[float]) -> np.ndarray:
    """
    Return the sixteen 3x3 minors of M_L, all vanishing when C2(L) = 0.
    """

    M = pluckerMatrix(L)
    return np.array([np.linalg.det(M[np.ix_(rows, cols)])
                     for rows in combinations(range(4), 3)
                     for cols in combinations(range(4), 3)])



def planeFromBivector(L: Sequence[float],
                      tol: float=1e-10) -> OrientedPlane:
    """
    Return the oriented plane whose Plücker image is L/|L|.

    The kernel of M_L is read from its singular value decomposition, with a
    rank cut at 1e-9 times the largest singular value, and the orientation
    is chosen so that the largest component of L keeps its sign.

    Raises
    ------
    DomainError
        C1(L) = 0, or L is not decomposable (|C2| > tol C1), in which case
        M_L does not have rank two.
    """

    L = np.asarray(L, dtype=float)
    C1, C2 = casimirs(L)
    if not C1>0.:
        raise DomainError('A plane needs a non zero bivector')
    if abs(C2)>tol*C1:
        raise DomainError('Bivector is not decomposable, C2 = {:.3e}: M_L does not have rank 2'.format(C2))

    _, s, Vt = np.linalg.svd(pluckerMatrix(L))
    rank = int(np.sum(s>1e-9*s[0]))
    if rank!=2:
        raise DomainError('M_L has rank {} instead of 2'.format(rank))

    x, y = Vt[2], Vt[3]
    k = int(np.argmax(np.abs(L)))
    if wedge(x, y)[k]*L[k]<0.:
        y = -y

    return OrientedPlane.fromVectors(x, y)



def subspaceAngle(p: OrientedPlane,
                  q: OrientedPlane) -> float:
    """
    Return the largest principal angle between two planes.
    """

    return float(np.max(subspace_angles(p.basis.T, q.basis.T)))



def randomPlanes(n: int,
                 seed: Optional[int]=None) -> Tuple[OrientedPlane, ...]:

    x, y = sampleCotangent(n, getRng(seed))
    return tuple(OrientedPlane(xi, yi/np.linalg.norm(yi)) for xi, yi in zip(x, y))
