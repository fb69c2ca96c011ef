"""
Success probabilities, error sweeps, separability indices and fidelities.

Node 2 absorbs the incoming wave packet ``Psi`` with the probability ``|<Phi|Psi>|^2``, where ``Phi``
is the packet its pulse is designed for. Sweeps evaluate this overlap over the error variables of the
channel unitary; the separability index measures how independently two errors act.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from hqst.constants import MAX_SWEEP_SAMPLES, REGION_POINTS, ErrorVariable
from hqst.core import ComplexSignal, TimeGrid, inner_product, integrate
from hqst.datamodels import DataModel
from hqst.dynamics import SolverOptions, simulate_transfer
from hqst.errors import BoundaryError, UndefinedError, ValidationError
from hqst.transform import IdealParams, region, unitary_from_errors
from hqst.wavepacket import Emission, LinkParams, default_step, ideal_phi, support, synthesize_psi

LOGGER = logging.getLogger('hqst.analysis')

ErrorPoint = Mapping[ErrorVariable, float]
Values = Union[float, np.ndarray]

PAIRS: List[Tuple[ErrorVariable, ErrorVariable]] = [
    (ErrorVariable.T, ErrorVariable.XI),
    (ErrorVariable.OMEGA0, ErrorVariable.XI),
    (ErrorVariable.OMEGA0, ErrorVariable.T),
]
"""Pairs of error variables of the separability table."""


class SweepAxis(DataModel):
    """Uniform samples of one error variable."""

    FIELDS = ['variable', 'values']
    variable: ErrorVariable
    values: Tuple[float, ...]

    def __init__(self, **data: Any) -> None:
        super().__init__(**data)
        self.variable = ErrorVariable(self.variable)
        self.values = tuple(float(value) for value in self.values)
        self.validate()

    def validate(self) -> None:
        """Validate the axis."""
        self.validate_fields(ErrorVariable, 'variable')
        if len(self.values) < 2:
            raise ValidationError({'values': 'Must have at least two samples.'})

    @classmethod
    def linspace(cls, variable: ErrorVariable, start: float, stop: float, num: int) -> 'SweepAxis':
        """Return ``num`` uniform samples between ``start`` and ``stop``."""
        return cls(variable=variable, values=tuple(np.linspace(start, stop, num)))

    def __len__(self) -> int:
        return len(self.values)


class SweepGrid:
    """
    Success probabilities over one or two error variables.

    :param axis1: The first axis, indexing the rows.
    :param axis2: The second axis, indexing the columns, if any.
    :param values: The probabilities, a vector or a matrix.
    :param discrepancy: The largest difference between the overlap and the ODE on a cross-checked subsample.
    """

    def __init__(self, axis1: SweepAxis, axis2: Optional[SweepAxis], values: np.ndarray,
                 discrepancy: Optional[float] = None) -> None:
        shape = (len(axis1),) if axis2 is None else (len(axis1), len(axis2))
        values = np.asarray(values, dtype=float)
        if values.shape != shape:
            raise ValidationError({'values': 'Must have shape {}, not {}.'.format(shape, values.shape)})
        self.axis1 = axis1
        self.axis2 = axis2
        self.values = values
        self.discrepancy = discrepancy

    def __repr__(self) -> str:
        return '{}(axis1={!r}, axis2={!r}, discrepancy={!r})'.format(
            self.__class__.__name__, self.axis1.variable, self.axis2 and self.axis2.variable, self.discrepancy)


class FidelityInputs(DataModel):
    """Excited-state population of the transferred qubit, transfer amplitude and phase error."""

    FIELDS = ['x', 'a', 'dtheta']
    x: float
    a: float
    dtheta: float = 0.0

    def __init__(self, **data: Any) -> None:
        super().__init__(**data)
        self.validate()

    def validate(self) -> None:
        """Validate the inputs."""
        self.validate_numbers('x', 'a', minimum=0.0)
        self.validate_numbers('dtheta')
        for name in ('x', 'a'):
            if getattr(self, name) > 1:
                raise ValidationError({name: 'Must be at most 1, not {!r}.'.format(getattr(self, name))})


class Baseline(DataModel):
    """Separability of uniformly random matrices."""

    FIELDS = ['mean', 'std', 'zero_mean']
    mean: float
    std: float
    zero_mean: float

    def validate(self) -> None:
        """Validate the baseline."""
        self.validate_numbers('mean', 'std', 'zero_mean', minimum=0.0)


def p_success_overlap(phi: ComplexSignal, psi: ComplexSignal) -> float:
    """Return the success probability ``|<Phi|Psi>|^2``, clamped to ``[0, 1]``."""
    return min(1.0, max(0.0, abs(inner_product(phi, psi)) ** 2))


def point_probability(beta1: ComplexSignal, link: LinkParams, ideal: IdealParams, t_l: float, errors: ErrorPoint,
                      dt: Optional[float] = None) -> float:
    """
    Return the success probability of the unitary deviating from the ideal one by ``errors``.

    Only the support of ``Phi`` contributes to the overlap, so the grid covers just that and ends where it does.
    """
    nominal = ideal.unitary(t_l)
    u = unitary_from_errors(ideal, t_l, gamma2=link.gamma2,
                            x=errors.get(ErrorVariable.OMEGA0, 0.0),
                            y=errors.get(ErrorVariable.XI, 0.0),
                            z=errors.get(ErrorVariable.T, 0.0))
    first, last = support(beta1)
    start, stop = nominal.T - last / nominal.xi, nominal.T - first / nominal.xi
    if dt is None:
        dt = default_step(beta1, link, [u, nominal])
    dt = max(dt, (stop - start) / (MAX_SWEEP_SAMPLES - 1))
    n = max(2, int(math.ceil((stop - start) / dt - 1e-9)) + 1)
    grid = TimeGrid(t0=stop - (n - 1) * dt, dt=dt, n=n)
    return p_success_overlap(ideal_phi(beta1, link, nominal, grid), synthesize_psi(beta1, link, u, grid))


def _points(axis1: SweepAxis, axis2: Optional[SweepAxis], row: int,
            fixed: Mapping[ErrorVariable, float]) -> List[Dict[ErrorVariable, float]]:
    points = []
    for value in (axis2.values if axis2 is not None else [None]):
        point = dict(fixed)
        point[axis1.variable] = axis1.values[row]
        if axis2 is not None:
            point[axis2.variable] = value
        points.append(point)
    return points


def _evaluate_row(beta1: ComplexSignal, link: LinkParams, ideal: IdealParams, t_l: float,
                  points: Sequence[ErrorPoint], dt: Optional[float]) -> List[float]:
    return [point_probability(beta1, link, ideal, t_l, point, dt) for point in points]


def sweep(beta1: ComplexSignal, link: LinkParams, ideal: IdealParams, axes: Sequence[SweepAxis], t_l: float,
          fixed: Optional[Mapping[ErrorVariable, float]] = None, jobs: int = 1, dt: Optional[float] = None,
          emission: Optional[Emission] = None, cross_check: int = 0,
          solver: Optional[SolverOptions] = None) -> SweepGrid:
    """
    Evaluate the success probability over one or two error variables.

    Rows are evaluated in parallel by ``jobs`` worker processes. With an ``emission`` and a positive
    ``cross_check``, a ``cross_check`` x ``cross_check`` subsample is integrated by the ODE as well and the
    largest difference is reported.

    :param beta1: Cavity amplitude of node 1.
    :param link: The link.
    :param ideal: Ideal parameters with the optimal timing.
    :param axes: One or two axes.
    :param t_l: Transformation duration.
    :param fixed: Error variables held fixed off the axes.
    :param jobs: Number of worker processes.
    :param dt: Step of the overlap grids, see :func:`hqst.wavepacket.default_step` for the default.
    """
    if not 1 <= len(axes) <= 2:
        raise ValidationError({'axes': 'Must have one or two axes, not {}.'.format(len(axes))})
    axis1 = axes[0]
    axis2 = axes[1] if len(axes) == 2 else None
    fixed = dict(fixed or {})
    rows: List[Optional[List[float]]] = [None] * len(axis1)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = {executor.submit(_evaluate_row, beta1, link, ideal, t_l, _points(axis1, axis2, row, fixed), dt):
                       row for row in range(len(axis1))}
            for future in as_completed(futures):
                rows[futures[future]] = future.result()
    else:
        for row in range(len(axis1)):
            rows[row] = _evaluate_row(beta1, link, ideal, t_l, _points(axis1, axis2, row, fixed), dt)
    values = np.array(rows, dtype=float)
    if axis2 is None:
        values = values[:, 0]
    LOGGER.info('Swept %d points, peak %r.', values.size, float(np.max(values)))

    discrepancy = None
    if emission is not None and cross_check > 0:
        discrepancy = _cross_check(emission, link, ideal, t_l, axis1, axis2, fixed, values, cross_check, solver)
    return SweepGrid(axis1, axis2, values, discrepancy)


def _cross_check(emission: Emission, link: LinkParams, ideal: IdealParams, t_l: float, axis1: SweepAxis,
                 axis2: Optional[SweepAxis], fixed: Mapping[ErrorVariable, float], values: np.ndarray, count: int,
                 solver: Optional[SolverOptions]) -> float:
    rows = np.unique(np.linspace(0, len(axis1) - 1, count).round().astype(int))
    columns = np.unique(np.linspace(0, len(axis2) - 1, count).round().astype(int)) if axis2 is not None else [0]
    nominal = ideal.unitary(t_l)
    discrepancy = 0.0
    for row in rows:
        points = _points(axis1, axis2, row, fixed)
        for column in columns:
            point = points[column]
            u = unitary_from_errors(ideal, t_l, gamma2=link.gamma2, x=point.get(ErrorVariable.OMEGA0, 0.0),
                                    y=point.get(ErrorVariable.XI, 0.0), z=point.get(ErrorVariable.T, 0.0))
            ode = simulate_transfer(emission, link, u, nominal, solver).transferred
            overlap = values[row] if axis2 is None else values[row, column]
            discrepancy = max(discrepancy, abs(ode - overlap))
    LOGGER.info('Cross-checked %d points by the ODE, largest discrepancy %r.', len(rows) * len(columns), discrepancy)
    return discrepancy


def fwhm(axis: Sequence[float], curve: Sequence[float]) -> float:
    """
    Return the full width at half maximum of a single-peaked curve, interpolating linearly between samples.

    :raise BoundaryError: If the curve peaks at, or does not fall to half its peak before, a boundary.
    """
    axis = np.asarray(axis, dtype=float)
    curve = np.asarray(curve, dtype=float)
    peak = int(np.argmax(curve))
    if peak in (0, len(curve) - 1):
        raise BoundaryError('The curve peaks at its boundary {!r}.'.format(axis[peak]))
    half = curve[peak] / 2

    def crossing(indices: np.ndarray) -> float:
        for inner, outer in zip(indices[:-1], indices[1:]):
            if curve[outer] < half:
                return float(np.interp(half, sorted([curve[outer], curve[inner]]),
                                       [axis[outer], axis[inner]] if curve[outer] < curve[inner]
                                       else [axis[inner], axis[outer]]))
        raise BoundaryError('The curve does not fall to half its peak before {!r}.'.format(axis[indices[-1]]))

    left = crossing(np.arange(peak, -1, -1))
    right = crossing(np.arange(peak, len(curve)))
    return right - left


def separability_index(matrix: Union[np.ndarray, Sequence[Sequence[float]]], zero_mean: bool = False) -> float:
    """
    Return the index of separability ``sigma_max^2 / sum sigma_i^2``, 1 for a rank-one matrix.

    :param matrix: The matrix.
    :param zero_mean: Whether the mean of the entries is subtracted first.
    :raise UndefinedError: If the (zero-mean) matrix vanishes.
    """
    matrix = np.asarray(matrix, dtype=float)
    if zero_mean:
        matrix = matrix - np.mean(matrix)
    total = float(np.sum(matrix ** 2))
    if total == 0:
        raise UndefinedError('The separability of a zero matrix is undefined.')
    largest = float(np.linalg.svd(matrix, compute_uv=False)[0])
    return largest ** 2 / total


def random_matrix_baseline(n: int, trials: int, seed: Optional[int] = None) -> Baseline:
    """Return the mean and spread of the separability of ``n`` x ``n`` matrices with uniform entries in [0, 1]."""
    if n < 16:
        raise ValidationError({'n': 'Must be at least 16, not {!r}.'.format(n)})
    rng = np.random.default_rng(seed)
    plain, centered = [], []
    for _ in range(trials):
        matrix = rng.uniform(0.0, 1.0, size=(n, n))
        plain.append(separability_index(matrix))
        centered.append(separability_index(matrix, zero_mean=True))
    return Baseline(mean=float(np.mean(plain)), std=float(np.std(plain)), zero_mean=float(np.mean(centered)))


def separability_table(beta1: ComplexSignal, link: LinkParams, ideal: IdealParams, t_l: float, scale: float = 2.0,
                       points: int = 121, jobs: int = 1, pairs: Sequence[Tuple[ErrorVariable, ErrorVariable]] = PAIRS,
                       dt: Optional[float] = None) -> Dict[Tuple[ErrorVariable, ErrorVariable], Tuple[float, float]]:
    """Return the plain and the zero-mean separability index of each pair of error variables over a region."""
    bounds = region(scale)
    table = {}
    for first, second in pairs:
        axes = [SweepAxis(variable=variable, values=tuple(bounds.axis(variable, points)))
                for variable in (first, second)]
        grid = sweep(beta1, link, ideal, axes, t_l, jobs=jobs, dt=dt)
        table[(first, second)] = (separability_index(grid.values), separability_index(grid.values, zero_mean=True))
        LOGGER.info('Separability of %s and %s: %r.', first.value, second.value, table[(first, second)])
    return table


def psucc_closed_form_r0(x: Values, y: Values, z: Values) -> Values:
    """Return the success probability of the exponential photon of the small-r limit under errors x, y and z."""
    x, y, z = np.asarray(x, dtype=float), np.asarray(y, dtype=float), np.asarray(z, dtype=float)
    stretch = 2.0 ** y
    shape = 4 * stretch / ((1 + stretch) ** 2 + (2 * x) ** 2)
    timing = np.exp(np.where(z <= 0, z, -stretch * np.maximum(z, 0.0)))
    result = shape * timing
    return float(result) if result.ndim == 0 else result


def region_scaling_curve(scales: Sequence[float], pair: Tuple[ErrorVariable, ErrorVariable],
                         zero_mean: bool = False) -> List[float]:
    """
    Return the separability of the small-r closed form over scaled regions.

    The sample spacing stays that of the unscaled region, so larger regions have more samples.
    """
    result = []
    for scale in scales:
        bounds = region(scale)
        points = int(round((REGION_POINTS - 1) * scale)) + 1
        first, second = np.meshgrid(bounds.axis(pair[0], points), bounds.axis(pair[1], points), indexing='ij')
        errors = {pair[0]: first, pair[1]: second}
        matrix = psucc_closed_form_r0(errors.get(ErrorVariable.OMEGA0, 0.0), errors.get(ErrorVariable.XI, 0.0),
                                      errors.get(ErrorVariable.T, 0.0))
        result.append(separability_index(np.broadcast_to(matrix, first.shape), zero_mean))
    return result


def psucc_frequency_error(beta1: ComplexSignal, gamma1: float, x: Values) -> Values:
    """
    Return the success probability under a pure frequency error ``x`` with an otherwise ideal, fully covering unitary.

    The overlap is the Fourier transform of the emitted intensity; the exponential photon gives the
    Lorentzian ``1 / (1 + x^2)``.
    """
    x_values = np.atleast_1d(np.asarray(x, dtype=float))
    intensity = gamma1 * np.abs(beta1.values) ** 2
    times = beta1.times
    result = np.array([abs(integrate(intensity * np.exp(1j * value * gamma1 * times), beta1.grid.dt)) ** 2
                       for value in x_values])
    return float(result[0]) if np.ndim(x) == 0 else result


def psucc_no_unitary_exponential(gamma1: float, gamma2: float, omega0_i: float, T_i: float) -> Tuple[float, float]:
    """
    Return the success probability of the exponential photon absorbed without any unitary, and its upper bound.

    :return: The probability and the bound ``4 gamma1 gamma2 exp(-gamma2 T_i) / (omega0_i^2 + g^2)``.
    """
    g = (gamma1 - gamma2) / 2
    denominator = omega0_i ** 2 + g ** 2
    bound = 4 * gamma1 * gamma2 * math.exp(-gamma2 * T_i) / denominator if denominator else math.inf
    if T_i <= 0:
        return 0.0, bound
    exponent = complex(-g, omega0_i)
    if exponent == 0:
        factor = T_i ** 2
    else:
        factor = abs((np.exp(exponent * T_i) - 1) / exponent) ** 2
    return gamma1 * gamma2 * math.exp(-gamma2 * T_i) * factor, bound


def exp_packet_self_overlap(gamma: float, T_d: Values) -> Values:
    """Return the success probability of an exponential photon absorbed by a node expecting it ``T_d`` earlier."""
    T_d = np.asarray(T_d, dtype=float)
    delay = np.maximum(T_d, 0.0)
    result = gamma ** 2 * delay ** 2 * np.exp(-gamma * delay)
    return float(result) if result.ndim == 0 else result


def fidelity(inp: FidelityInputs) -> float:
    """Return the fidelity of a qubit with excited-state population ``x`` transferred with amplitude ``a``."""
    x, a = inp.x, inp.a
    coherence = math.sqrt(max((1 - x) * (1 - a ** 2 * x), 0.0))
    return a ** 2 * x ** 2 + (1 - x) * (1 - a ** 2 * x) + 2 * math.cos(inp.dtheta) * coherence * a * x


def avg_fidelity(a: float, dtheta: float = 0.0) -> float:
    """Return the fidelity averaged over the Bloch sphere."""
    if a < 1e-3:
        term = 8 / 3 * a - 4 / 5 * a ** 3
    else:
        term = (a * math.sqrt(max(1 - a ** 2, 0.0)) * (2 * a ** 2 - 1) + math.asin(min(a, 1.0))) / a ** 2
    return 0.5 + a ** 2 / 4 + math.cos(dtheta) * term / (2 * math.pi)


def heralded_fidelity(C: complex) -> float:
    """Return the fidelity ``(1 + |C|^2) / 2`` of a heralded transfer with photon overlap ``C``."""
    if abs(C) > 1 + 1e-9:
        raise ValidationError({'C': 'Must have magnitude at most 1, not {!r}.'.format(abs(C))})
    return (1 + min(abs(C), 1.0) ** 2) / 2
