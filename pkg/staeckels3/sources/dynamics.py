# This Python file uses the following encoding: utf-8
from dataclasses import dataclass
from typing import Callable, Dict, NamedTuple, Optional, Sequence, Tuple
import logging
import numpy as np
import pandas as pd
from scipy.integrate import solve_ivp

from .config import loadConfigCurrent
config = loadConfigCurrent()
from .errors import DomainError, StepSizeUnderflowError
from .functions import PAIRS, antisymmetricFromBivector, getRng, sampleLeaf
from .s2Appendix import eulerTopField
from .so4Core import (CotangentPoint, QuadraticObservable, buildIntegrals,
                      casimirObservables, lpStructure, toricObservables)
from .systemSpec import Family, SystemSpec

logger = logging.getLogger(__name__)

LNAMES = tuple('l{}{}'.format(i+1, j+1) for i, j in PAIRS)

# Position of (l23, l24, l34) among the six angular momenta
EULERINDICES = (3, 4, 5)



@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Sampled solution of a flow.

    Parameters
    ----------
    times : np.ndarray
        Strictly increasing sample times, shape (n,).
    states : np.ndarray
        States at these times, shape (n, 8) for a cotangent point (x, y) and
        (n, 6) for a bivector.
    drift : pd.DataFrame
        Difference of every monitored quantity with its initial value, one
        row per sample time.
    """

    times: np.ndarray
    states: np.ndarray
    drift: pd.DataFrame

    def __post_init__(self) -> None:
        if np.any(np.diff(self.times)<=0.):
            raise DomainError('Trajectory times must be strictly increasing')
        if not np.all(np.isfinite(self.states)):
            raise DomainError('Trajectory states must be finite')

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def maxDrift(self) -> pd.Series:
        """
        Return the largest absolute drift of every monitored quantity.
        """

        return self.drift.abs().max()

    def toDataFrame(self, columns: Optional[Sequence[str]]=None) -> pd.DataFrame:

        if columns is None:
            columns = LNAMES if self.states.shape[1]==6 else ['x1', 'x2', 'x3', 'x4', 'y1', 'y2', 'y3', 'y4']
        df = pd.DataFrame(self.states, columns=list(columns))
        df.insert(0, 't', self.times)
        return df



def _integrate(rhs: Callable[[float, np.ndarray], np.ndarray],
               y0: np.ndarray,
               T: float,
               tol: float,
               n: int,
               project: Optional[Callable[[np.ndarray], np.ndarray]]=None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Integrate y' = rhs(t, y) up to T and return the n states at
    linspace(0, T, n). The embedded Runge-Kutta method of the configuration
    runs from one sample to the next, project being applied after each
    sample.
    """

    if not T>0.:
        raise DomainError('Integration time must be > 0, got {}'.format(T))

    times = np.linspace(0., float(T), int(n))
    states = np.empty((len(times), len(y0)))
    states[0] = y0
    y = np.asarray(y0, dtype=float)

    for k, (t0, t1) in enumerate(zip(times[:-1], times[1:])):
        sol = solve_ivp(rhs, (t0, t1), y,
                        method=config['odeMethod'],
                        rtol=tol,
                        atol=tol*1e-2)
        if not sol.success:
            raise StepSizeUnderflowError('Integration stopped at t={:.6g} with tolerance {:.1e}: {}'.format(sol.t[-1], tol, sol.message))
        y = sol.y[:, -1]
        if project is not None:
            y = project(y)
        states[k+1] = y

    return times, states



def _driftFrame(observables: Dict[str, Callable[[np.ndarray], float]],
                states: np.ndarray) -> pd.DataFrame:

    data = {}
    for name, fun in observables.items():
        values = np.array([fun(state) for state in states])
        data[name] = values - values[0]
    return pd.DataFrame(data)



def _integralObservables(spec: Optional[SystemSpec]) -> Dict[str, QuadraticObservable]:

    if spec is None:
        return {}
    return {f.name : f for f in buildIntegrals(spec)}



###########################################################################
#
#
#                           Geodesic flow on T*S3
#
#
###########################################################################



def geodesicField(t: float,
                  state: np.ndarray) -> np.ndarray:
    """
    Dirac bracket flow of H = y.y/2 on the constraint set x.x = 1, x.y = 0,
    x' = y, y' = -(y.y) x/(x.x).
    """

    x, y = state[:4], state[4:]
    return np.concatenate((y, -(y@y)/(x@x)*x))



def _projectCotangent(state: np.ndarray) -> np.ndarray:

    x = state[:4]/np.linalg.norm(state[:4])
    y = state[4:] - (x@state[4:])*x
    return np.concatenate((x, y))



def integrateGeodesic(p0: CotangentPoint,
                      T: float,
                      tol: Optional[float]=None,
                      n: int=201,
                      spec: Optional[SystemSpec]=None) -> Trajectory:
    """
    Integrate the geodesic flow of S3 from p0 up to time T.

    After each sample x is normalised and y made orthogonal to x. The drift
    of H, of the two constraints, of the six angular momenta, of the second
    Casimir and, when spec is given, of the two integrals of the family is
    recorded.

    Raises
    ------
    StepSizeUnderflowError
        The integrator cannot reach tol.
    """

    tol = float(config['odeRtol']) if tol is None else float(tol)
    times, states = _integrate(geodesicField, p0.state, T, tol, n, _projectCotangent)

    def momenta(state):
        x, y = state[:4], state[4:]
        return np.array([x[i]*y[j] - x[j]*y[i] for i, j in PAIRS])

    C1, C2 = casimirObservables()
    observables = {'H'            : lambda s: 0.5*s[4:]@s[4:],
                   'constraintX'  : lambda s: s[:4]@s[:4] - 1.,
                   'constraintXY' : lambda s: s[:4]@s[4:],
                   'C2'           : lambda s: C2(momenta(s))}
    for k, name in enumerate(LNAMES):
        observables[name] = (lambda k: lambda s: momenta(s)[k])(k)
    for name, f in _integralObservables(spec).items():
        observables[name] = (lambda f: lambda s: f(momenta(s)))(f)

    drift = _driftFrame(observables, states)
    # The constraints are absolute, not relative to the start
    drift['constraintX'] = [s[:4]@s[:4] - 1. for s in states]
    drift['constraintXY'] = [s[:4]@s[4:] for s in states]

    logger.debug('Geodesic integrated up to T={}, largest drift {:.3e}'.format(T, float(drift.abs().max().max())))

    return Trajectory(times, states, drift)



###########################################################################
#
#
#                           Reduced flow on so*(4)
#
#
###########################################################################



def reducedField(f: QuadraticObservable) -> Callable[[float, np.ndarray], np.ndarray]:
    """
    Return the vector field L' = B_L grad f(L) of the Lie-Poisson bracket.
    """

    def rhs(t, L):
        return lpStructure(L)@f.gradient(L)

    return rhs



def integrateReduced(L0: Sequence[float],
                     f: QuadraticObservable,
                     T: float,
                     tol: Optional[float]=None,
                     n: int=201,
                     spec: Optional[SystemSpec]=None) -> Trajectory:
    """
    Integrate the flow of f on so*(4) from L0 up to time T.

    The reduced systems have no Hamiltonian of their own, the generator f
    is chosen by the caller. L is not projected, the drift of both
    Casimirs, of f and of the integrals of spec measures the error of the
    method.

    Raises
    ------
    StepSizeUnderflowError
        The integrator cannot reach tol.
    """

    tol = float(config['odeRtol']) if tol is None else float(tol)
    L0 = np.asarray(L0, dtype=float)
    times, states = _integrate(reducedField(f), L0, T, tol, n)

    C1, C2 = casimirObservables()
    observables = {'C1' : C1, 'C2' : C2, f.name or 'generator' : f}
    observables.update(_integralObservables(spec))
    drift = _driftFrame(observables, states)

    logger.debug('Reduced flow of {} integrated up to T={}'.format(f.name, T))

    return Trajectory(times, states, drift)



def laxResidual(L: Sequence[float],
                f: QuadraticObservable) -> float:
    """
    Return the distance between X' and the commutator [X, A], X the
    antisymmetric matrix of L and A the one of grad f(L).
    """

    L = np.asarray(L, dtype=float)
    X = antisymmetricFromBivector(L)
    A = antisymmetricFromBivector(f.gradient(L))
    Xdot = antisymmetricFromBivector(reducedField(f)(0., L))
    return float(np.max(np.abs(Xdot - (X@A - A@X))))



###########################################################################
#
#
#                           Euler top inside the Lamé system
#
#
###########################################################################



class EulerReport(NamedTuple):
    """
    Outcome of eulerSubstructureCheck.

    coupling is the largest change of the (l23, l24, l34) field when the
    other momenta change, fieldResidual the distance to the Euler top field
    at L0 and trajectoryResidual the distance to a standalone Euler top
    integration. rotationResidual and closure concern the flow of the
    action J1 = sqrt(2h) - sqrt(2h - F_L), nan on the singular locus
    l23 = l24 = l34 = 0 where it is not defined.
    """

    coupling: float
    fieldResidual: float
    trajectoryResidual: float
    singular: bool
    rotationResidual: float
    closure: float



def lameActionField(L: Sequence[float]) -> np.ndarray:
    """
    Return the vector field of J1 = sqrt(2h) - sqrt(2h - F_L), 2h = C1(L).

    Raises
    ------
    DomainError
        On the sphere l12^2 + l13^2 + l14^2 = 2h, where the field is not
        defined.
    """

    L = np.asarray(L, dtype=float)
    rest = float(np.sum(L[list(EULERINDICES)]**2))
    if rest<=config['tolZeroInterval']:
        raise DomainError('The flow of J1 is not defined on l23 = l24 = l34 = 0')

    gradF = np.zeros(6)
    gradF[:3] = 2.*L[:3]
    return lpStructure(L)@gradF/(2.*np.sqrt(rest))



def normalisedRotation(L: Sequence[float]) -> np.ndarray:
    """
    Return the field rotating (l12, l13, l14) about the unit axis along
    (l34, -l24, l23) at unit angular speed, the other momenta fixed.
    """

    L = np.asarray(L, dtype=float)
    axis = np.array([L[5], -L[4], L[3]])
    axis = axis/np.linalg.norm(axis)
    field = np.zeros(6)
    field[:3] = np.cross(L[:3], axis)
    return field



def eulerSubstructureCheck(spec: SystemSpec,
                           L0: Sequence[float],
                           T: float=10.,
                           tol: Optional[float]=None,
                           n: int=101,
                           seed: Optional[int]=None) -> EulerReport:
    """
    Check that (l23, l24, l34) evolve under the flow of G_L as the Euler top
    with moments of inertia 1/f_i, and that the flow of the action J1 is the
    normalised rotation about (l34, -l24, l23).

    An L0 on the singular locus is reported, not rejected.
    """

    if spec.family!=Family.LAME:
        raise DomainError('The Euler top sits inside the Lamé family, got {}'.format(spec.family.value))

    tol = float(config['odeRtol']) if tol is None else float(tol)
    L0 = np.asarray(L0, dtype=float)
    G = buildIntegrals(spec)[1]
    rhs = reducedField(G)
    idx = list(EULERINDICES)
    weights = np.array(spec.f)[::-1]

    rng = getRng(seed)
    coupling = 0.
    for _ in range(4):
        L = L0.copy()
        L[:3] += rng.standard_normal(3)
        coupling = max(coupling, float(np.max(np.abs(rhs(0., L)[idx] - rhs(0., L0)[idx]))))

    fieldResidual = float(np.max(np.abs(rhs(0., L0)[idx] - eulerTopField(L0[idx], weights))))

    trajectory = integrateReduced(L0, G, T, tol, n)
    times, euler = _integrate(lambda t, M: eulerTopField(M, weights), L0[idx], T, tol, n)
    trajectoryResidual = float(np.max(np.abs(trajectory.states[:, idx] - euler)))

    singular = float(np.sum(L0[idx]**2))<=config['tolZeroInterval']
    if singular:
        logger.info('L0 lies on the singular locus of the J1 flow')
        rotationResidual, closure = float('nan'), float('nan')
    else:
        rotationResidual = float(np.max(np.abs(lameActionField(L0) - normalisedRotation(L0))))
        times, states = _integrate(lambda t, L: lameActionField(L), L0, 2.*np.pi, tol, 5)
        closure = float(np.max(np.abs(states[-1] - L0)))

    return EulerReport(coupling, fieldResidual, trajectoryResidual, singular, rotationResidual, closure)



###########################################################################
#
#
#                           Toric structure
#
#
###########################################################################



def toricFlow(L0: Sequence[float],
              which: str='X1',
              T: float=2.*np.pi,
              tol: Optional[float]=None,
              n: int=65) -> Trajectory:
    """
    Integrate the flow of X1 = (l12 + l34)/2 or Y1 = (l12 - l34)/2, both
    2pi-periodic.
    """

    X1, Y1 = toricObservables()
    f = {'X1' : X1, 'Y1' : Y1}.get(which)
    if f is None:
        raise DomainError('Toric flow of X1 or Y1 expected, got {}'.format(which))
    return integrateReduced(L0, f, T, tol, n)



def toricImage(n: int=1000,
               twoH: Optional[float]=None,
               seed: Optional[int]=None) -> pd.DataFrame:
    """
    Return the values of (X1, Y1) and of (l12, l34) at n random points of
    the leaf. The first image is the square |X1|, |Y1| <= sqrt(2h)/2, the
    second the diamond |l12| + |l34| <= sqrt(2h).
    """

    twoH = float(config['casimirLevel']) if twoH is None else float(twoH)
    L = sampleLeaf(n, getRng(seed), twoH)
    X1, Y1 = toricObservables()
    return pd.DataFrame({'X1'  : X1(L),
                         'Y1'  : Y1(L),
                         'l12' : L[:, 0],
                         'l34' : L[:, 5]})
