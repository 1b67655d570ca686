# This Python file uses the following encoding: utf-8
from typing import Any, Optional



class StaeckelError(Exception):
    """
    Base class of every error raised by staeckels3.
    """



class DomainError(StaeckelError, ValueError):
    """
    Raised when an operation is called outside of its domain: parameter
    ordering violated, interval violation, zero vector, singular matrix...
    """



class NotInImageError(DomainError):
    """
    Raised when integral values lie outside the image of the momentum map.

    Parameters
    ----------
    message : str
        Human readable message.
    value : Any, optional
        The offending integral values.
    """

    def __init__(self, message: str,
                       value: Optional[Any]=None) -> None:

        super(NotInImageError, self).__init__(message)
        self.value = value



class StepSizeUnderflowError(StaeckelError, RuntimeError):
    """
    Raised when the ODE integrator cannot reach the requested tolerance.
    """



class ConfigError(StaeckelError):
    """
    Raised for an invalid run configuration.
    """
