"""Errors of hqst."""
from typing import Dict


class HqstError(Exception):
    """Base error of hqst package."""


class MessageError(HqstError):
    """
    Base for errors carrying a plain message.

    :param error: An error message.
    """

    def __init__(self, error: str):
        self.error = error

    def __str__(self) -> str:
        return self.error

    def __repr__(self) -> str:
        return '{}({!r})'.format(self.__class__.__name__, self.error)


class ValidationError(HqstError):
    """
    Error for validation failures.

    :param errors: A dictionary of field names (keys) and error messages (values).
    """

    def __init__(self, errors: Dict[str, str]):
        self.errors = errors

    def __str__(self) -> str:
        return 'Validation failed: {!r}'.format(self.errors)

    def __repr__(self) -> str:
        return '{}({!r})'.format(self.__class__.__name__, self.errors)


class ParseError(MessageError):
    """Error for scenario and dataset parsing failures."""


class AlignmentError(MessageError):
    """Error for signals sampled on different time grids."""


class ProducibilityError(MessageError):
    """Error for amplitudes that no real non-negative laser pulse can produce."""


class SingularityError(MessageError):
    """Error for a division by a vanishing pulse."""


class DegenerateEmissionError(MessageError):
    """Error for an emission efficiency too small to renormalize."""


class DivergenceError(MessageError):
    """Error for an expected trial count that diverges."""


class BoundaryError(MessageError):
    """Error for a curve which peaks at the boundary of its axis."""


class UndefinedError(MessageError):
    """Error for a quantity without a defined value, e.g. the separability of a zero matrix."""


class IntegrationError(HqstError):
    """
    Error for ODE solver failures.

    :param error: An error message.
    :param time: The time reached by the solver before it failed.
    """

    def __init__(self, error: str, time: float):
        self.error = error
        self.time = time

    def __str__(self) -> str:
        return '{} (at t = {!r})'.format(self.error, self.time)

    def __repr__(self) -> str:
        return '{}({!r}, {!r})'.format(self.__class__.__name__, self.error, self.time)
