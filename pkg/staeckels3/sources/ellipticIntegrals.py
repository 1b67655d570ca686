# This Python file uses the following encoding: utf-8
from enum import Enum
from typing import NamedTuple, Optional, Sequence, Union
import numpy as np
from scipy import special

from .errors import DomainError



class EllipticKind(str, Enum):
    K  = 'K'
    PI = 'Pi'



class EllipticValue(NamedTuple):
    """
    Complete elliptic integrals of the first and third kind at modulus k and
    characteristic alpha.
    """

    K: float
    Pi: float
    k: float
    alpha: float



def completeElliptic(kind: Union[EllipticKind, str],
                     modulus: float,
                     characteristic: Optional[float]=None) -> float:
    """
    Return a complete elliptic integral from Carlson's symmetric forms,

        K(k)        = RF(0, 1-k^2, 1)
        Pi(alpha,k) = K(k) + alpha/3 RJ(0, 1-k^2, 1, 1-alpha)

    with Pi(alpha, k) = int_0^{pi/2} dt/((1 - alpha sin^2 t) sqrt(1 - k^2 sin^2 t)).

    Parameters
    ----------
    kind : EllipticKind or str
        'K' or 'Pi'.
    modulus : float
        The modulus k, 0 <= k < 1.
    characteristic : float, optional
        The characteristic alpha < 1, required for Pi.

    Raises
    ------
    DomainError
        k outside [0, 1) or characteristic >= 1.
    """

    kind = EllipticKind(kind)
    k = float(modulus)
    if not 0.<=k<1.:
        raise DomainError('Elliptic modulus must satisfy 0 <= k < 1, got k={}'.format(k))

    m = 1. - k**2
    K = float(special.elliprf(0., m, 1.))
    if kind==EllipticKind.K:
        return K

    if characteristic is None:
        raise DomainError('The third kind needs a characteristic')
    alpha = float(characteristic)
    if not alpha<1.:
        raise DomainError('Elliptic characteristic must satisfy alpha < 1, got alpha={}'.format(alpha))
    if alpha==0.:
        return K

    return K + alpha/3.*float(special.elliprj(0., m, 1., 1. - alpha))



def ellipticValue(modulus: float,
                  characteristic: float) -> EllipticValue:

    return EllipticValue(completeElliptic(EllipticKind.K, modulus),
                         completeElliptic(EllipticKind.PI, modulus, characteristic),
                         float(modulus),
                         float(characteristic))



def ellipsoidalModulus(e: Sequence[float]) -> float:
    """
    Return k with k^2 = (e4 - e3)(e2 - e1)/((e4 - e2)(e3 - e1)).
    """

    e1, e2, e3, e4 = e
    return float(np.sqrt((e4 - e3)*(e2 - e1)/((e4 - e2)*(e3 - e1))))



def tangentialAction(u: float,
                     v: float,
                     alpha: float,
                     e: Sequence[float],
                     twoH: float=1.) -> float:
    """
    Return the action of the hyperelliptic integral at a tangency of the
    parabola, where it becomes elliptic,

        2 sqrt(2h) ((u - v) K(k) + (e4 - e1) Pi(alpha, k))/(pi sqrt((e1 - e3)(e2 - e4))).
    """

    e1, e2, e3, e4 = e
    value = ellipticValue(ellipsoidalModulus(e), alpha)
    return float(2.*np.sqrt(twoH)*((u - v)*value.K + (e4 - e1)*value.Pi)/(np.pi*np.sqrt((e1 - e3)*(e2 - e4))))
