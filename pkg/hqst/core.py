"""
Time grids, sampled complex signals and quadrature.

All times are in units of 1/gamma2 and all rates in units of gamma2.
"""
import logging
import math
from numbers import Integral, Number
from typing import Any, Callable, Dict, Optional, Tuple, Union

import numpy as np
from scipy.integrate import cumulative_simpson, cumulative_trapezoid, simpson, trapezoid
from scipy.interpolate import CubicSpline, make_interp_spline

from hqst.constants import DECAY_BLOCK_SPAN, TAIL_TOLERANCE
from hqst.datamodels import DataModel
from hqst.errors import AlignmentError, ValidationError

LOGGER = logging.getLogger('hqst.core')

ArrayLike = Union[np.ndarray, list, tuple]


class TimeGrid(DataModel):
    """
    Uniform time grid ``t(i) = t0 + i * dt`` for ``i`` in ``[0, n)``.

    :raise ValidationError: If ``dt <= 0`` or ``n < 2``.
    """

    FIELDS = ['t0', 'dt', 'n']
    t0: float
    dt: float
    n: int

    def __init__(self, **data: Any) -> None:
        super().__init__(**data)
        self.validate()

    def validate(self) -> None:
        """Validate this grid."""
        self.validate_numbers('t0')
        self.validate_numbers('dt', minimum=0.0, strict=True)
        self.validate_fields(Integral, 'n')
        if self.n < 2:
            raise ValidationError({'n': 'Must be at least 2, not {!r}.'.format(self.n)})

    @classmethod
    def covering(cls, start: float, stop: float, dt: float) -> 'TimeGrid':
        """Return the smallest grid with step ``dt`` starting at ``start`` and reaching ``stop``."""
        n = int(math.ceil((stop - start) / dt - 1e-9)) + 1
        return cls(t0=float(start), dt=float(dt), n=max(n, 2))

    @property
    def t_end(self) -> float:
        """Time of the last sample."""
        return self.t0 + (self.n - 1) * self.dt

    @property
    def times(self) -> np.ndarray:
        """Sample times."""
        return self.t0 + np.arange(self.n) * self.dt


class ComplexSignal:
    """
    Complex envelope sampled on a time grid.

    Signals are immutable; the cubic interpolant is built lazily and cached.

    :param grid: The time grid.
    :param values: One sample per grid point.
    :param extrapolated: Whether the samples were evaluated past a nonzero tail of another signal.
    :raise ValidationError: If the samples do not match the grid or are not finite.
    """

    def __init__(self, grid: TimeGrid, values: ArrayLike, extrapolated: bool = False) -> None:
        array = np.array(values, dtype=complex)
        if array.shape != (grid.n,):
            raise ValidationError({'values': 'Must have shape ({},), not {}.'.format(grid.n, array.shape)})
        if not np.all(np.isfinite(array)):
            raise ValidationError({'values': 'Must be finite.'})
        array.flags.writeable = False
        self.grid = grid
        self.values = array
        self.extrapolated = extrapolated
        self._spline: Optional[CubicSpline] = None

    @classmethod
    def from_function(cls, grid: TimeGrid, func: Callable[[np.ndarray], ArrayLike]) -> 'ComplexSignal':
        """Sample a vectorized function of time on a grid."""
        return cls(grid, func(grid.times))

    @classmethod
    def zeros(cls, grid: TimeGrid) -> 'ComplexSignal':
        """Return a zero signal."""
        return cls(grid, np.zeros(grid.n))

    @property
    def times(self) -> np.ndarray:
        """Sample times."""
        return self.grid.times

    @property
    def real(self) -> np.ndarray:
        """Real parts of the samples."""
        return self.values.real

    @property
    def magnitude(self) -> np.ndarray:
        """Absolute values of the samples."""
        return np.abs(self.values)

    @property
    def peak(self) -> float:
        """The largest absolute value."""
        return float(np.max(np.abs(self.values)))

    @property
    def spline(self) -> CubicSpline:
        """Cubic interpolant of the real and imaginary parts."""
        if self._spline is None:
            self._spline = CubicSpline(self.times, np.column_stack([self.values.real, self.values.imag]))
        return self._spline

    def with_values(self, values: ArrayLike) -> 'ComplexSignal':
        """Return a signal with the same grid and new samples."""
        return ComplexSignal(self.grid, values, self.extrapolated)

    def conj(self) -> 'ComplexSignal':
        """Return the complex conjugate."""
        return self.with_values(np.conj(self.values))

    def _operand(self, other: Any) -> Any:
        if isinstance(other, ComplexSignal):
            check_aligned(self, other)
            return other.values
        if isinstance(other, Number):
            return other
        return NotImplemented

    def __add__(self, other: Any) -> 'ComplexSignal':
        operand = self._operand(other)
        if operand is NotImplemented:
            return NotImplemented
        return self.with_values(self.values + operand)

    def __sub__(self, other: Any) -> 'ComplexSignal':
        operand = self._operand(other)
        if operand is NotImplemented:
            return NotImplemented
        return self.with_values(self.values - operand)

    def __mul__(self, other: Any) -> 'ComplexSignal':
        operand = self._operand(other)
        if operand is NotImplemented:
            return NotImplemented
        return self.with_values(self.values * operand)

    __rmul__ = __mul__

    def __neg__(self) -> 'ComplexSignal':
        return self.with_values(-self.values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ComplexSignal):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.values, other.values)

    __hash__ = None  # type: ignore

    def __repr__(self) -> str:
        return '{}(grid={!r}, peak={!r}, extrapolated={!r})'.format(
            self.__class__.__name__, self.grid, self.peak, self.extrapolated)

    def __getstate__(self) -> Dict[str, Any]:
        state = self.__dict__.copy()
        state['_spline'] = None
        return state


def check_aligned(a: ComplexSignal, b: ComplexSignal) -> None:
    """
    Check that two signals share the same grid.

    :raise AlignmentError: If the grids differ.
    """
    if a.grid != b.grid:
        raise AlignmentError('Signals are sampled on different grids: {!r} and {!r}.'.format(a.grid, b.grid))


def sample(signal: ComplexSignal, times: ArrayLike) -> Tuple[np.ndarray, bool]:
    """
    Evaluate the cubic interpolant of a signal at arbitrary times.

    The signal is padded with zeros outside its window.

    :return: The values and whether the padding cut off a nonzero tail.
    """
    times = np.asarray(times, dtype=float)
    grid = signal.grid
    slack = 1e-9 * grid.dt
    before = times < grid.t0 - slack
    after = times > grid.t_end + slack
    inside = ~(before | after)
    values = np.zeros(times.shape, dtype=complex)
    if np.any(inside):
        parts = signal.spline(np.clip(times[inside], grid.t0, grid.t_end))
        values[inside] = parts[..., 0] + 1j * parts[..., 1]

    threshold = TAIL_TOLERANCE * signal.peak
    extrapolated = bool(
        (np.any(before) and abs(signal.values[0]) > threshold)
        or (np.any(after) and abs(signal.values[-1]) > threshold)
    )
    return values, extrapolated


def resample(a: ComplexSignal, target: TimeGrid) -> ComplexSignal:
    """
    Resample a signal onto another grid by cubic interpolation.

    Values at shared sample points are reproduced exactly and the signal is zero-padded outside its window.
    The result is flagged ``extrapolated`` when the padding cuts off a nonzero tail.
    """
    if a.grid == target:
        return a
    values, extrapolated = sample(a, target.times)
    if extrapolated:
        LOGGER.warning('Resampling onto %r cuts off a nonzero tail of a signal on %r.', target, a.grid)
    return ComplexSignal(target, values, extrapolated or a.extrapolated)


def derivative(signal: ComplexSignal) -> ComplexSignal:
    """Return the derivative of a quintic interpolant of the signal at its sample points."""
    degree = min(5, signal.grid.n - 1)
    if degree % 2 == 0:
        degree -= 1
    stacked = np.column_stack([signal.values.real, signal.values.imag])
    parts = make_interp_spline(signal.times, stacked, k=degree, axis=0).derivative()(signal.times)
    return signal.with_values(parts[:, 0] + 1j * parts[:, 1])


def integrate(values: ArrayLike, dt: float) -> Union[float, complex]:
    """Integrate uniformly spaced samples by the composite Simpson rule (trapezoid for two samples)."""
    values = np.asarray(values)
    rule = simpson if values.shape[-1] > 2 else trapezoid
    if np.iscomplexobj(values):
        return complex(rule(values.real, dx=dt), rule(values.imag, dx=dt))
    return float(rule(values, dx=dt))


def _cumulative(values: np.ndarray, dt: float) -> np.ndarray:
    if np.iscomplexobj(values):
        return _cumulative(values.real, dt) + 1j * _cumulative(values.imag, dt)
    if len(values) < 3:
        return cumulative_trapezoid(values, dx=dt, initial=0)
    return cumulative_simpson(values, dx=dt, initial=0)


def cumulative_integral(signal: ComplexSignal) -> np.ndarray:
    """Return the running integral of a signal from the start of its grid."""
    return _cumulative(signal.values, signal.grid.dt)


def decaying_integral(values: ArrayLike, grid: TimeGrid, rate: float) -> np.ndarray:
    """
    Return the running integral ``J(t) = int_{t0}^{t} exp(rate (t' - t)) f(t') dt'``.

    The integral is accumulated over blocks whose exponent span stays below ``DECAY_BLOCK_SPAN``,
    so no exponential over- or underflows for long windows.

    :param values: Samples of ``f`` on the grid.
    :param grid: The time grid.
    :param rate: The decay rate, non-negative.
    """
    values = np.asarray(values)
    if rate < 0:
        raise ValueError('The decay rate must be non-negative, not {!r}.'.format(rate))
    if rate == 0:
        return _cumulative(values, grid.dt)

    times = grid.times
    result = np.zeros(values.shape, dtype=values.dtype if np.iscomplexobj(values) else float)
    block = max(2, int(DECAY_BLOCK_SPAN / (rate * grid.dt)))
    start = 0
    while start < grid.n - 1:
        stop = min(start + block, grid.n - 1)
        span = times[start:stop + 1]
        weighted = values[start:stop + 1] * np.exp(rate * (span - span[-1]))
        partial = _cumulative(weighted, grid.dt)
        result[start:stop + 1] = (result[start] * np.exp(-rate * (span - span[0]))
                                  + partial * np.exp(rate * (span[-1] - span)))
        start = stop
    return result


def inner_product(a: ComplexSignal, b: ComplexSignal) -> complex:
    """
    Return ``<a|b> = int conj(a(t)) b(t) dt``.

    :raise AlignmentError: If the signals are sampled on different grids.
    """
    check_aligned(a, b)
    return complex(integrate(np.conj(a.values) * b.values, a.grid.dt))


def norm_squared(a: ComplexSignal) -> float:
    """Return ``<a|a>``, clamped at zero."""
    return max(0.0, integrate(np.abs(a.values) ** 2, a.grid.dt))
