# This Python file uses the following encoding: utf-8
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Optional, Sequence, Tuple, Union
import logging
import numpy as np

from .config import loadConfigCurrent
config = loadConfigCurrent()
from .errors import DomainError
from .functions import PAIRS, COMPLEMENTS, antisymmetricFromBivector
from .systemSpec import Family, IntegralValues, SystemSpec

logger = logging.getLogger(__name__)

ArrayLike = Union[Sequence[float], np.ndarray]



###########################################################################
#
#
#                           Points
#
#
###########################################################################



class Bivector(NamedTuple):
    """
    A point of so*(4), the angular momenta l_ij = x_i y_j - x_j y_i.
    Every function of the package accepts it as well as a plain array of
    shape (6,).
    """

    l12: float
    l13: float
    l14: float
    l23: float
    l24: float
    l34: float

    @classmethod
    def fromArray(cls, L: ArrayLike) -> 'Bivector':
        return cls(*(float(l) for l in np.asarray(L, dtype=float)))



class XYPair(NamedTuple):
    """
    The two so(3) components of a bivector, see split.
    """

    X: np.ndarray
    Y: np.ndarray



class DiagonalSpectrum(NamedTuple):
    """
    Diagonal c1..c4 of the matrix C of a compatible bracket.
    """

    c1: float
    c2: float
    c3: float
    c4: float

    @property
    def isOrdered(self) -> bool:
        return self.c1<self.c2<self.c3<self.c4



@dataclass(frozen=True, eq=False)
class CotangentPoint:
    """
    A point (x, y) of T*S3 seen in R8, with x.x = 1 and x.y = 0.
    """

    x: np.ndarray
    y: np.ndarray
    tol: Optional[float] = None

    def __post_init__(self) -> None:

        x = np.asarray(self.x, dtype=float).reshape(4)
        y = np.asarray(self.y, dtype=float).reshape(4)
        object.__setattr__(self, 'x', x)
        object.__setattr__(self, 'y', y)

        tol = config['tolConstraint'] if self.tol is None else self.tol
        if abs(x@x-1.)>tol:
            raise DomainError('Cotangent point off the unit sphere, |x.x - 1| = {:.3e} > {:.1e}'.format(abs(x@x-1.), tol))
        if abs(x@y)>tol:
            raise DomainError('Cotangent point not tangent, |x.y| = {:.3e} > {:.1e}'.format(abs(x@y), tol))

    @property
    def state(self) -> np.ndarray:
        return np.concatenate((self.x, self.y))

    def angularMomenta(self) -> np.ndarray:
        """
        Return the bivector L = x^y.
        """

        return np.array([self.x[i]*self.y[j]-self.x[j]*self.y[i] for i, j in PAIRS])



###########################################################################
#
#
#                           Quadratic observables
#
#
###########################################################################



def toFraction(value: Union[int, float, Fraction]) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    return Fraction(float(value))



@dataclass(frozen=True, eq=False)
class QuadraticObservable:
    """
    Function L -> L^T Q L + linear.L + constant on so*(4).

    When built from rational coefficients the exact coefficient matrix is kept
    as an object array of Fraction in ``exact``, it is None otherwise.
    """

    Q: np.ndarray
    linear: np.ndarray = None
    constant: float = 0.
    name: str = ''
    exact: Optional[np.ndarray] = None

    def __post_init__(self) -> None:

        Q = np.asarray(self.Q, dtype=float).reshape(6, 6)
        if not np.allclose(Q, Q.T, rtol=0., atol=1e-14*max(1., np.max(np.abs(Q)))):
            raise DomainError('Quadratic observable {} has a non symmetric matrix'.format(self.name))
        object.__setattr__(self, 'Q', 0.5*(Q+Q.T))
        linear = np.zeros(6) if self.linear is None else np.asarray(self.linear, dtype=float).reshape(6)
        object.__setattr__(self, 'linear', linear)



    @classmethod
    def fromDiagonal(cls, weights: Sequence[Union[float, Fraction]],
                          name: str='') -> 'QuadraticObservable':
        """
        Return sum_k weights[k]*L_k**2, the exact matrix is kept.
        """

        exact = np.full((6, 6), Fraction(0), dtype=object)
        for k, w in enumerate(weights):
            exact[k, k] = toFraction(w)
        return cls(Q=np.diag([float(w) for w in weights]), name=name, exact=exact)



    @classmethod
    def fromLinear(cls, linear: Sequence[float],
                        name: str='') -> 'QuadraticObservable':

        exact = np.full((6, 6), Fraction(0), dtype=object)
        return cls(Q=np.zeros((6, 6)), linear=np.asarray(linear, dtype=float), name=name, exact=exact)



    @classmethod
    def component(cls, index: int,
                       name: str='') -> 'QuadraticObservable':
        """
        Return the linear observable L -> L[index].
        """

        linear = np.zeros(6)
        linear[index] = 1.
        return cls.fromLinear(linear, name)



    @property
    def isLinear(self) -> bool:
        return not np.any(self.Q)



    def __call__(self, L: ArrayLike) -> Union[float, np.ndarray]:

        L = np.asarray(L, dtype=float)
        value = np.einsum('...i,ij,...j->...', L, self.Q, L) + L@self.linear + self.constant
        if np.ndim(value)==0:
            return float(value)
        return value



    def gradient(self, L: ArrayLike) -> np.ndarray:
        """
        Return 2QL + linear.
        """

        L = np.asarray(L, dtype=float)
        return 2.*L@self.Q + self.linear



    def hessian(self) -> np.ndarray:
        return 2.*self.Q



    def _combine(self, other: 'QuadraticObservable',
                       sign: float,
                       name: str) -> 'QuadraticObservable':

        exact = None
        if self.exact is not None and other.exact is not None:
            exact = self.exact + other.exact if sign>0 else self.exact - other.exact
        return QuadraticObservable(Q=self.Q + sign*other.Q,
                                   linear=self.linear + sign*other.linear,
                                   constant=self.constant + sign*other.constant,
                                   name=name,
                                   exact=exact)

    def __add__(self, other: 'QuadraticObservable') -> 'QuadraticObservable':
        return self._combine(other, 1., '({}+{})'.format(self.name, other.name))

    def __sub__(self, other: 'QuadraticObservable') -> 'QuadraticObservable':
        return self._combine(other, -1., '({}-{})'.format(self.name, other.name))

    def __mul__(self, scalar: Union[float, Fraction]) -> 'QuadraticObservable':

        exact = None
        if self.exact is not None and isinstance(scalar, (int, Fraction)):
            exact = self.exact*toFraction(scalar)
        return QuadraticObservable(Q=float(scalar)*self.Q,
                                   linear=float(scalar)*self.linear,
                                   constant=float(scalar)*self.constant,
                                   name='{}*{}'.format(scalar, self.name),
                                   exact=exact)

    __rmul__ = __mul__

    def __neg__(self) -> 'QuadraticObservable':
        return self*(-1)



def casimirObservables() -> Tuple[QuadraticObservable, QuadraticObservable]:
    """
    Return the two Casimirs C1 = sum l_ij**2 and
    C2 = l12 l34 - l13 l24 + l14 l23 as observables.
    """

    C1 = QuadraticObservable.fromDiagonal([1]*6, name='C1')

    exact = np.full((6, 6), Fraction(0), dtype=object)
    for (i, j), w in (((0, 5), Fraction(1, 2)), ((1, 4), Fraction(-1, 2)), ((2, 3), Fraction(1, 2))):
        exact[i, j] = w
        exact[j, i] = w
    C2 = QuadraticObservable(Q=exact.astype(float), name='C2', exact=exact)

    return C1, C2



def hodgeDual(L: ArrayLike) -> np.ndarray:
    """
    Return the gradient of C2 at L, (l34, -l24, l23, l14, -l13, l12).
    """

    L = np.asarray(L, dtype=float)
    return np.stack((L[..., 5], -L[..., 4], L[..., 3], L[..., 2], -L[..., 1], L[..., 0]), axis=-1)



###########################################################################
#
#
#                           Structure matrices
#
#
###########################################################################



def diracStructure(p: Union[CotangentPoint, Tuple[ArrayLike, ArrayLike]]) -> np.ndarray:
    """
    Return the 8x8 structure matrix of the Dirac bracket of T*S3 in R8,

        B = [[0, P], [-P, -(x y^T - y x^T)/|x|^2]],  P = I - x x^T/|x|^2.

    The constraints x.x and x.y are Casimirs of this bracket.
    """

    if isinstance(p, CotangentPoint):
        x, y = p.x, p.y
    else:
        x = np.asarray(p[0], dtype=float)
        y = np.asarray(p[1], dtype=float)

    xx = x@x
    if xx==0.:
        raise DomainError('Dirac structure undefined at x = 0')

    P = np.eye(4) - np.outer(x, x)/xx
    S = (np.outer(x, y) - np.outer(y, x))/xx

    B = np.zeros((8, 8))
    B[:4, 4:] = P
    B[4:, :4] = -P
    B[4:, 4:] = -S
    return B



def lpStructure(L: ArrayLike) -> np.ndarray:
    """
    Return the 6x6 Lie-Poisson structure matrix B_L of so*(4) in the basis
    (l12, l13, l14, l23, l24, l34).
    """

    l12, l13, l14, l23, l24, l34 = np.asarray(L, dtype=float)

    B = np.zeros((6, 6))
    B[0, 1] = l23
    B[0, 2] = l24
    B[0, 3] = -l13
    B[0, 4] = -l14
    B[1, 2] = l34
    B[1, 3] = l12
    B[1, 5] = -l14
    B[2, 4] = l12
    B[2, 5] = l13
    B[3, 4] = l34
    B[3, 5] = -l24
    B[4, 5] = l23

    return B - B.T



def compatibleStructure(L: ArrayLike,
                        C: Union[DiagonalSpectrum, Sequence[float]]) -> np.ndarray:
    """
    Return the structure matrix B_C of the bracket {.,.}_C of so*(4) for a
    diagonal C.

    B_C is linear in C and B_C(identity) = -B_L, so that the pencil
    lambda*{.,.} - {.,.}_C equals {.,.}_{lambda I - C} up to that sign.
    """

    c1, c2, c3, c4 = (float(c) for c in C)
    l12, l13, l14, l23, l24, l34 = np.asarray(L, dtype=float)

    M = np.zeros((6, 6))
    M[0, 1] = -c1*l23
    M[0, 2] = -c1*l24
    M[0, 3] = c2*l13
    M[0, 4] = c2*l14
    M[1, 2] = -c1*l34
    M[1, 3] = -c3*l12
    M[1, 5] = c3*l14
    M[2, 4] = -c4*l12
    M[2, 5] = -c4*l13
    M[3, 4] = -c2*l34
    M[3, 5] = c3*l24
    M[4, 5] = -c4*l23

    return M - M.T



def structureDerivative(structure: Callable[[np.ndarray], np.ndarray],
                        v: ArrayLike) -> np.ndarray:
    """
    Return the matrix A_v of the linear map L -> B(L) v for a structure
    matrix linear in L.
    """

    v = np.asarray(v, dtype=float)
    return np.stack([structure(e)@v for e in np.eye(6)], axis=1)



def lpBracket(f: QuadraticObservable,
              g: QuadraticObservable,
              L: ArrayLike,
              structure: Callable[[np.ndarray], np.ndarray]=lpStructure) -> float:
    """
    Return {f, g}(L) = grad(f)^T B_L grad(g).
    """

    return float(f.gradient(L)@structure(L)@g.gradient(L))



def jacobiResidual(structure: Callable[[np.ndarray], np.ndarray],
                   f: ArrayLike,
                   g: ArrayLike,
                   k: ArrayLike,
                   L: ArrayLike) -> float:
    """
    Return the Jacobi sum {f,{g,k}} + {g,{k,f}} + {k,{f,g}} at L for three
    linear observables given by their coefficient vectors and a structure
    matrix linear in L.
    """

    f, g, k = (np.asarray(u, dtype=float) for u in (f, g, k))
    B = structure(L)

    def gradBracket(u, v):
        # {u,v}(L) = u^T B(L) v is linear in L
        return np.array([u@structure(e)@v for e in np.eye(6)])

    return float(f@B@gradBracket(g, k) + g@B@gradBracket(k, f) + k@B@gradBracket(f, g))



###########################################################################
#
#
#                           Casimirs and the (X, Y) split
#
#
###########################################################################



def casimirs(L: ArrayLike) -> Tuple[float, float]:
    """
    Return (C1, C2) = (sum l_ij**2, l12 l34 - l13 l24 + l14 l23).
    """

    l12, l13, l14, l23, l24, l34 = np.asarray(L, dtype=float)
    return (float(l12**2 + l13**2 + l14**2 + l23**2 + l24**2 + l34**2),
            float(l12*l34 - l13*l24 + l14*l23))



def split(L: ArrayLike) -> XYPair:
    """
    Return the so(3) x so(3) components (X, Y) of L, with
    4|X|**2 = C1 + 2 C2 and 4|Y|**2 = C1 - 2 C2.
    """

    l12, l13, l14, l23, l24, l34 = np.asarray(L, dtype=float)
    X = 0.5*np.array([l12 + l34, l13 - l24, l14 + l23])
    Y = 0.5*np.array([l12 - l34, l13 + l24, l14 - l23])
    return XYPair(X, Y)



def join(p: XYPair) -> np.ndarray:
    """
    Inverse of split.
    """

    X = np.asarray(p.X, dtype=float)
    Y = np.asarray(p.Y, dtype=float)
    return np.array([X[0] + Y[0],
                     X[1] + Y[1],
                     X[2] + Y[2],
                     X[2] - Y[2],
                     Y[1] - X[1],
                     X[0] - Y[0]])



###########################################################################
#
#
#                           Trace formula
#
#
###########################################################################



def traceCoefficients(L: ArrayLike,
                      C: Union[DiagonalSpectrum, Sequence[float]]) -> Tuple[float, float, float]:
    """
    Return (I0, I1, I2), the numerator coefficients of the trace formula

        Tr((X (lambda I - C)^-1)^2) = 2(I0 lambda^2 + I1 lambda + I2)/prod(lambda - c_i).
    """

    c = np.asarray(C, dtype=float)
    L2 = np.asarray(L, dtype=float)**2
    I0 = -np.sum(L2)
    I1 = sum((c[m] + c[n])*L2[k] for k, (m, n) in enumerate(COMPLEMENTS))
    I2 = -sum(c[m]*c[n]*L2[k] for k, (m, n) in enumerate(COMPLEMENTS))
    return float(I0), float(I1), float(I2)



def traceRational(lam: float,
                  L: ArrayLike,
                  C: Union[DiagonalSpectrum, Sequence[float]]) -> float:
    """
    Return psi(lambda) = Tr((X (lambda I - C)^-1)^2), X the antisymmetric
    matrix of L.

    For the ellipsoidal family (C = E) and lambda = s_i, psi equals 8 p_i**2
    with p_i the separated momentum of separatedMomentumSq.
    """

    c = np.asarray(C, dtype=float)
    for i, ci in enumerate(c):
        if lam==ci:
            raise DomainError('Trace formula evaluated at its pole c{} = {}'.format(i+1, ci))

    X = antisymmetricFromBivector(L)
    M = X@np.diag(1./(lam - c))
    return float(np.trace(M@M))



###########################################################################
#
#
#                           Integrals of the six families
#
#
###########################################################################



def ellipsoidalIntegrals(e: Sequence[float]) -> Tuple[QuadraticObservable, QuadraticObservable]:
    """
    Return the separation constants (eta1, eta2) of the ellipsoidal system,

        eta1 = sum (e_m + e_n) l_ij**2,  eta2 = sum e_m e_n l_ij**2,

    {m, n} being the complement of {i, j}.
    """

    e = [toFraction(ei) for ei in e]
    eta1 = QuadraticObservable.fromDiagonal([e[m] + e[n] for m, n in COMPLEMENTS], name='eta1')
    eta2 = QuadraticObservable.fromDiagonal([e[m]*e[n] for m, n in COMPLEMENTS], name='eta2')
    return eta1, eta2



def buildIntegrals(spec: SystemSpec) -> Tuple[QuadraticObservable, QuadraticObservable]:
    """
    Return the pair of commuting reduced integrals of a family.

    Families with a global S1 action return the linear momentum (l23, l34 or
    l12), not its square:
        ellipsoidal : (eta1, eta2)
        prolate     : (l23, G_pro = b l12^2 + b l13^2 + l14^2)
        oblate      : (l34, G_obl = a l12^2 + l13^2 + l14^2)
        lame        : (F_L = l12^2 + l13^2 + l14^2, G_L = f3 l23^2 + f2 l24^2 + f1 l34^2)
        spherical23 : (l34, G_23 = l12^2 + l13^2 + l14^2)
        cylindrical : (l12, l34)
    """

    if spec.family==Family.ELLIPSOIDAL:
        return ellipsoidalIntegrals(spec.e)

    elif spec.family==Family.PROLATE:
        b = toFraction(spec.b)
        return (QuadraticObservable.component(3, 'l23'),
                QuadraticObservable.fromDiagonal([b, b, 1, 0, 0, 0], name='G_pro'))

    elif spec.family==Family.OBLATE:
        a = toFraction(spec.a)
        return (QuadraticObservable.component(5, 'l34'),
                QuadraticObservable.fromDiagonal([a, 1, 1, 0, 0, 0], name='G_obl'))

    elif spec.family==Family.LAME:
        f1, f2, f3 = (toFraction(f) for f in spec.f)
        return (QuadraticObservable.fromDiagonal([1, 1, 1, 0, 0, 0], name='F_L'),
                QuadraticObservable.fromDiagonal([0, 0, 0, f3, f2, f1], name='G_L'))

    elif spec.family==Family.SPHERICAL23:
        return (QuadraticObservable.component(5, 'l34'),
                QuadraticObservable.fromDiagonal([1, 1, 1, 0, 0, 0], name='G_23'))

    elif spec.family==Family.CYLINDRICAL:
        return (QuadraticObservable.component(0, 'l12'),
                QuadraticObservable.component(5, 'l34'))

    raise DomainError('No integrals for family {}'.format(spec.family))



def toricObservables() -> Tuple[QuadraticObservable, QuadraticObservable]:
    """
    Return X1 = (l12 + l34)/2 and Y1 = (l12 - l34)/2, whose flows are
    2pi-periodic.
    """

    return (QuadraticObservable.fromLinear([0.5, 0., 0., 0., 0., 0.5], 'X1'),
            QuadraticObservable.fromLinear([0.5, 0., 0., 0., 0., -0.5], 'Y1'))



def momentumMap(L: ArrayLike,
                spec: SystemSpec) -> IntegralValues:
    """
    Return the values of the two integrals of the family at L, the Casimir
    level being taken from L itself.
    """

    f, g = buildIntegrals(spec)
    return IntegralValues(f(L), g(L), casimirs(L)[0])
