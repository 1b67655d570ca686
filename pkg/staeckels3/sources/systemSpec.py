# This Python file uses the following encoding: utf-8
from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple, Optional, Sequence
import logging

from .config import loadConfigCurrent
config = loadConfigCurrent()
from .errors import DomainError

logger = logging.getLogger(__name__)



class Family(str, Enum):
    """
    The six separable coordinate systems on S3.
    """

    ELLIPSOIDAL = 'ellipsoidal'
    PROLATE     = 'prolate'
    OBLATE      = 'oblate'
    LAME        = 'lame'
    SPHERICAL23 = 'spherical23'
    CYLINDRICAL = 'cylindrical'

    @classmethod
    def fromString(cls, name: str) -> 'Family':
        """
        Return the family from a user string, accepting a few aliases.
        """

        aliases = {'ellipsoidal' : cls.ELLIPSOIDAL,
                   'prolate'     : cls.PROLATE,
                   'oblate'      : cls.OBLATE,
                   'lame'        : cls.LAME,
                   'lamé'        : cls.LAME,
                   'spherical'   : cls.SPHERICAL23,
                   'spherical23' : cls.SPHERICAL23,
                   'cylindrical' : cls.CYLINDRICAL}
        try:
            return aliases[name.strip().lower()]
        except KeyError:
            raise DomainError('Unknown coordinate family "{}", expected one of {}'.format(name, ', '.join(sorted(aliases))))



# Name of the parameters of each family, in storage order
PARAMETERNAMES = {Family.ELLIPSOIDAL : ('e1', 'e2', 'e3', 'e4'),
                  Family.PROLATE     : ('b',),
                  Family.OBLATE      : ('a',),
                  Family.LAME        : ('f1', 'f2', 'f3'),
                  Family.SPHERICAL23 : (),
                  Family.CYLINDRICAL : ()}

# Name of the two reduced integrals of each family, as stored in IntegralValues
INTEGRALNAMES = {Family.ELLIPSOIDAL : ('eta1', 'eta2'),
                 Family.PROLATE     : ('l23', 'G_pro'),
                 Family.OBLATE      : ('l34', 'G_obl'),
                 Family.LAME        : ('F_L', 'G_L'),
                 Family.SPHERICAL23 : ('l34', 'G_23'),
                 Family.CYLINDRICAL : ('l12', 'l34')}



@dataclass(frozen=True)
class SystemSpec:
    """
    One separable system: its family, its parameters and the Casimir level 2h
    of the reduced phase space.

    Use the classmethods to build one, they check the ordering of the
    parameters.
    """

    family: Family
    params: Tuple[float, ...] = ()
    casimirLevel: float = 1.

    def __post_init__(self) -> None:

        object.__setattr__(self, 'params', tuple(float(p) for p in self.params))
        names = PARAMETERNAMES[self.family]
        if len(self.params)!=len(names):
            raise DomainError('{} expects {} parameter(s) ({}), got {}'.format(self.family.value, len(names), ', '.join(names) or 'none', len(self.params)))

        if not self.casimirLevel>0:
            raise DomainError('Casimir level must satisfy 2h > 0, got {}'.format(self.casimirLevel))

        p = self.params
        if self.family==Family.ELLIPSOIDAL:
            for i in range(3):
                if not p[i]<p[i+1]:
                    raise DomainError('Ellipsoidal parameters must satisfy e{0} < e{1}, got e{0}={2}, e{1}={3}'.format(i+1, i+2, p[i], p[i+1]))
        elif self.family==Family.PROLATE:
            if not p[0]>1:
                raise DomainError('Prolate parameter must satisfy b > 1, got b={}'.format(p[0]))
        elif self.family==Family.OBLATE:
            if not p[0]>1:
                raise DomainError('Oblate parameter must satisfy a > 1, got a={}'.format(p[0]))
        elif self.family==Family.LAME:
            for i in range(2):
                if not p[i]<p[i+1]:
                    raise DomainError('Lamé parameters must satisfy f{0} < f{1}, got f{0}={2}, f{1}={3}'.format(i+1, i+2, p[i], p[i+1]))



    @classmethod
    def ellipsoidal(cls, e: Sequence[float],
                         casimirLevel: Optional[float]=None) -> 'SystemSpec':
        return cls(Family.ELLIPSOIDAL, tuple(e), _level(casimirLevel))

    @classmethod
    def prolate(cls, b: float,
                     casimirLevel: Optional[float]=None) -> 'SystemSpec':
        return cls(Family.PROLATE, (b,), _level(casimirLevel))

    @classmethod
    def oblate(cls, a: float,
                    casimirLevel: Optional[float]=None) -> 'SystemSpec':
        return cls(Family.OBLATE, (a,), _level(casimirLevel))

    @classmethod
    def lame(cls, f: Sequence[float],
                  casimirLevel: Optional[float]=None) -> 'SystemSpec':
        return cls(Family.LAME, tuple(f), _level(casimirLevel))

    @classmethod
    def spherical23(cls, casimirLevel: Optional[float]=None) -> 'SystemSpec':
        return cls(Family.SPHERICAL23, (), _level(casimirLevel))

    @classmethod
    def cylindrical(cls, casimirLevel: Optional[float]=None) -> 'SystemSpec':
        return cls(Family.CYLINDRICAL, (), _level(casimirLevel))



    @property
    def twoH(self) -> float:
        return self.casimirLevel

    @property
    def e(self) -> Tuple[float, ...]:
        self._expect(Family.ELLIPSOIDAL)
        return self.params

    @property
    def b(self) -> float:
        self._expect(Family.PROLATE)
        return self.params[0]

    @property
    def a(self) -> float:
        self._expect(Family.OBLATE)
        return self.params[0]

    @property
    def f(self) -> Tuple[float, ...]:
        self._expect(Family.LAME)
        return self.params

    @property
    def integralNames(self) -> Tuple[str, str]:
        return INTEGRALNAMES[self.family]

    def withCasimirLevel(self, casimirLevel: float) -> 'SystemSpec':
        return SystemSpec(self.family, self.params, casimirLevel)

    def _expect(self, family: Family) -> None:
        if self.family!=family:
            raise DomainError('Parameter only defined for the {} family, this system is {}'.format(family.value, self.family.value))

    def describe(self) -> str:
        """
        Return a one line human description, used in CSV headers.
        """

        names = PARAMETERNAMES[self.family]
        parameters = ', '.join('{}={:g}'.format(n, p) for n, p in zip(names, self.params))
        return '{}({}) 2h={:g}'.format(self.family.value, parameters, self.casimirLevel)



def _level(casimirLevel: Optional[float]) -> float:
    if casimirLevel is None:
        return float(config['casimirLevel'])
    return float(casimirLevel)



@dataclass(frozen=True)
class IntegralValues:
    """
    A point in the image of the momentum map: the values (x, y) of the two
    reduced integrals of a family (see INTEGRALNAMES) at Casimir level 2h.
    """

    x: float
    y: float
    twoH: float = field(default_factory=lambda: float(config['casimirLevel']))

    @property
    def eta1(self) -> float:
        return self.x

    @property
    def eta2(self) -> float:
        return self.y

    def asTuple(self) -> Tuple[float, float]:
        return (self.x, self.y)
