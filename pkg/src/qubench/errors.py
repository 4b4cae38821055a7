"""Exception hierarchy shared by every qubench module."""


class QubenchError(Exception):
    """Base class for all qubench errors."""


class ParameterError(QubenchError, ValueError):
    """An argument is outside the range an operation accepts."""


class DomainError(QubenchError, ValueError):
    """A closed-form expression is evaluated where it is undefined."""


class ResourceError(QubenchError, MemoryError):
    """The request would exceed the desk-scale simulation limits."""


class CalibrationError(QubenchError, ValueError):
    """A calibration or coupling-map file failed validation.

    ``key`` names the offending field (``"qubits"``, ``"frequencies_ghz[5]"``, ...).
    """

    def __init__(self, key: str, message: str):
        super().__init__(message)
        self.key = key
