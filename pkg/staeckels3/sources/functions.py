# This Python file uses the following encoding: utf-8
import warnings
warnings.filterwarnings(
    action='ignore',
    module=r'lmfit',
)
from typing import Tuple, Optional, Sequence, Union
import lmfit
import numpy as np

from .config import loadConfigCurrent
config = loadConfigCurrent()


# Index pairs (i, j), i<j, of the six angular momenta l_ij in storage order
# (l12, l13, l14, l23, l24, l34), zero based.
PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

# Complementary pair (m, n) of every pair (i, j) in storage order
COMPLEMENTS = ((2, 3), (1, 3), (1, 2), (0, 3), (0, 2), (0, 1))



def getRng(seed: Optional[int]=None) -> np.random.Generator:
    """
    Return a numpy random generator, seeded from the configuration by default.
    """

    if seed is None:
        seed = config['seed']
    return np.random.default_rng(seed)



def wedge(x: np.ndarray,
          y: np.ndarray) -> np.ndarray:
    """
    Return the angular momenta l_ij = x_i y_j - x_j y_i of two 4-vectors.
    Broadcast over leading axes.
    """

    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.stack([x[..., i]*y[..., j]-x[..., j]*y[..., i] for i, j in PAIRS], axis=-1)



def antisymmetricFromBivector(L: np.ndarray) -> np.ndarray:
    """
    Return the 4x4 antisymmetric matrix X with X_ij = l_ij.
    """

    L = np.asarray(L, dtype=float)
    X = np.zeros(L.shape[:-1]+(4, 4))
    for k, (i, j) in enumerate(PAIRS):
        X[..., i, j] = L[..., k]
        X[..., j, i] = -L[..., k]
    return X



def relabelBivector(L: np.ndarray,
                    order: Sequence[int]) -> np.ndarray:
    """
    Return the angular momenta after relabelling the coordinates,
    l'_ij = l_{order[i] order[j]}.
    """

    X = antisymmetricFromBivector(L)
    order = list(order)
    X = X[..., order, :][..., :, order]
    return np.stack([X[..., i, j] for i, j in PAIRS], axis=-1)



def sampleSphere(n: int,
                 dim: int,
                 rng: np.random.Generator) -> np.ndarray:
    """
    Return n points uniformly distributed on the unit sphere of R^dim.
    """

    v = rng.standard_normal((n, dim))
    return v/np.linalg.norm(v, axis=1)[:, None]



def sampleCotangent(n: int,
                    rng: np.random.Generator,
                    twoH: float=1.) -> Tuple[np.ndarray, np.ndarray]:
    """
    Return n cotangent points (x, y) of T*S3: x uniform on S3 and y uniform
    on the tangent sphere of radius sqrt(2h) at x.
    """

    x = sampleSphere(n, 4, rng)
    y = rng.standard_normal((n, 4))
    y -= np.sum(x*y, axis=1)[:, None]*x
    y *= np.sqrt(twoH)/np.linalg.norm(y, axis=1)[:, None]
    return x, y



def sampleLeaf(n: int,
               rng: np.random.Generator,
               twoH: float=1.) -> np.ndarray:
    """
    Return n points L = x^y of the reduced space, on the leaf C1 = 2h, C2 = 0.

    Parameters
    ----------
    n : int
        Number of points.
    rng : np.random.Generator
        Random generator, see getRng.
    twoH : float
        Casimir level.

    Returns
    -------
    L : np.ndarray
        Array of shape (n, 6).
    """

    x, y = sampleCotangent(n, rng, twoH)
    return wedge(x, y)



def scaleOf(value: Union[float, np.ndarray]) -> float:
    """
    Scale used by relative tolerances: max(1, |value|).
    """

    return max(1., float(np.max(np.abs(value))))



def powerLawResidual(p: lmfit.parameter.Parameters,
                     x: np.ndarray,
                     y: np.ndarray) -> np.ndarray:
    """
    Return the error between log(y) and the model log(C) + order*log(x).
    """

    return np.log(y) - (p['logC'].value + p['order'].value*np.log(x))



def powerLawFit(x: Sequence[float],
                y: Sequence[float]) -> Tuple[float, float]:
    """
    Fit y = C*x**order through the lmfit minimize function.

    Returns
    -------
    C : float
        Prefactor.
    order : float
        Exponent of the power law.
    """

    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    # Exact zeros carry no slope information
    y = np.maximum(y, np.finfo(float).tiny)

    p = lmfit.Parameters()
    p.add('logC', value=0.)
    p.add('order', value=1.)
    result = lmfit.minimize(powerLawResidual, p, args=(x, y))

    return float(np.exp(result.params['logC'].value)), float(result.params['order'].value)
