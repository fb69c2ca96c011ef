"""
Pulse design and wave-packet synthesis.

Node 1 is driven so that its atomic amplitude follows a target ``alpha1``; the cavity amplitude ``beta1``
leaks into the line as the photon ``sqrt(gamma1) * beta1``. The channel unitary turns it into the
wave packet ``Psi`` incident on node 2, which absorbs it perfectly only if ``Psi`` equals the ideal ``Phi``.

Amplitudes and pulses are real and non-negative unless stated otherwise.
"""
import logging
import math
from typing import Any, Iterable, Optional, Tuple, Union

import mpmath
import numpy as np
from scipy.special import erfc

from hqst.constants import (EMISSION_LEAD, EMISSION_TRAIL, EPS_DIV, EPS_TAIL, EXPONENT_CLIP, INITIAL_ALPHA1_TOLERANCE,
                            MAX_REFINEMENT, PRODUCIBILITY_TOLERANCE, SAMPLES_PER_CYCLE, SAMPLES_PER_RATE,
                            TAIL_TOLERANCE, Beta1Method)
from hqst.core import (ComplexSignal, TimeGrid, check_aligned, cumulative_integral, decaying_integral, derivative,
                       integrate, sample)
from hqst.datamodels import DataModel
from hqst.errors import ProducibilityError, SingularityError, ValidationError

LOGGER = logging.getLogger('hqst.wavepacket')

Times = Union[float, np.ndarray]


class LinkParams(DataModel):
    """
    The physical link between the nodes.

    Rates are in units of gamma2, so ``gamma2`` is 1 unless a scenario says otherwise.
    """

    FIELDS = ['gamma1', 'gamma2', 'zeta', 'k']
    gamma1: float
    gamma2: float = 1.0
    zeta: float = 0.0
    """Laser frequency mismatch between the nodes."""
    k: float
    """Rate of the logistic atomic amplitude."""

    def __init__(self, **data: Any) -> None:
        super().__init__(**data)
        self.validate()

    def validate(self) -> None:
        """Validate the link parameters."""
        self.validate_numbers('gamma1', 'gamma2', 'k', minimum=0.0, strict=True)
        self.validate_numbers('zeta')

    @property
    def r(self) -> float:
        """Ratio of the cavity decay rate and the drive rate."""
        return self.gamma1 / (2 * self.k)


class UnitaryParams(DataModel):
    """
    Parameters of the channel unitary: frequency shift, stretch, timing and transformation duration.

    The transformation captures the photon during ``(t_i, t_s)`` and re-emits it, time reversed,
    during ``(t_s, t_f)``.
    """

    FIELDS = ['omega0', 'xi', 'T', 't_l']
    omega0: float
    xi: float
    T: float
    t_l: float = 0.0

    def __init__(self, **data: Any) -> None:
        super().__init__(**data)
        self.validate()

    def validate(self) -> None:
        """Validate the unitary parameters."""
        self.validate_numbers('omega0', 'T')
        self.validate_numbers('xi', minimum=0.0, strict=True)
        self.validate_numbers('t_l', minimum=0.0)

    @property
    def t_s(self) -> float:
        """Switching time between capture and re-emission."""
        return self.T / (1 + 1 / self.xi)

    @property
    def t_i(self) -> float:
        """Start of the capture."""
        return self.t_s - self.t_l

    @property
    def t_f(self) -> float:
        """End of the re-emission."""
        return self.t_s + self.t_l / self.xi


class Producibility(DataModel):
    """Verdict whether an envelope can be produced by a real non-negative pulse."""

    FIELDS = ['producible', 'margin', 'max_weight']
    producible: bool
    margin: float
    """Minimum of the constraint expression over time."""
    max_weight: float
    """Largest weight w^2 with which the envelope can be produced probabilistically."""

    def validate(self) -> None:
        """Validate the verdict."""
        self.validate_fields(bool, 'producible')
        self.validate_numbers('margin')
        self.validate_numbers('max_weight', minimum=0.0)
        if self.max_weight > 1:
            raise ValidationError({'max_weight': 'Must be at most 1, not {!r}.'.format(self.max_weight)})


class Emission:
    """The designed emission of node 1: target atomic amplitude, the laser pulse and the cavity amplitude."""

    def __init__(self, alpha1: ComplexSignal, pulse: ComplexSignal, beta1: ComplexSignal) -> None:
        self.alpha1 = alpha1
        self.pulse = pulse
        self.beta1 = beta1

    def __repr__(self) -> str:
        return '{}(grid={!r})'.format(self.__class__.__name__, self.beta1.grid)


def emission_grid(link: LinkParams, dt: Optional[float] = None) -> TimeGrid:
    """Return the default grid of the node 1 emission: from -15/k until the cavity tail has decayed."""
    if dt is None:
        dt = min(1 / (SAMPLES_PER_RATE * link.k), 1 / (SAMPLES_PER_RATE * link.gamma1))
    start = -EMISSION_LEAD / link.k
    return TimeGrid.covering(start, max(EMISSION_LEAD / link.k, EMISSION_TRAIL / link.gamma1), dt)


def logistic_alpha1(link: LinkParams, grid: TimeGrid) -> ComplexSignal:
    """Return the logistic atomic amplitude ``(1 + tanh(-k t)) / 2``, decreasing from 1 to 0."""
    return ComplexSignal(grid, (1 + np.tanh(-link.k * grid.times)) / 2)


def _continue_ratio(numerator: np.ndarray, denominator: np.ndarray, times: np.ndarray, what: str) -> np.ndarray:
    """
    Divide where the denominator is nonzero and continue the ratio over 0/0 points.

    :raise SingularityError: If the denominator vanishes while the numerator does not.
    """
    valid = np.abs(denominator) > EPS_DIV
    singular = ~valid & (np.abs(numerator) >= EPS_DIV)
    if np.any(singular):
        raise SingularityError('Division by a vanishing {} at t = {!r}.'.format(what, times[singular][0]))
    result = np.zeros(numerator.shape, dtype=np.result_type(numerator, denominator))
    if not np.any(valid):
        return result
    result[valid] = numerator[valid] / denominator[valid]
    if not np.all(valid):
        fill = ~valid
        result[fill] = np.interp(times[fill], times[valid], result[valid].real)
        if np.iscomplexobj(result):
            result[fill] += 1j * np.interp(times[fill], times[valid], result[valid].imag)
    return result


def _alpha1_constraint(alpha1: ComplexSignal, gamma1: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Return the squared cavity amplitude implied by a real atomic amplitude.

    The loss-free excitation ``u = 1 - alpha1^2`` decays through the cavity at rate ``gamma1``, so
    ``beta1^2(t) = exp(-gamma1 (t - t_p)) u(t_p) + int exp(gamma1 (t' - t)) du/dt' dt'``.

    :return: ``beta1^2``, the constraint margin ``exp(gamma1 (t - t_p)) beta1^2`` and the derivative of alpha1.
    """
    alpha = alpha1.real
    rate = derivative(alpha1).real
    elapsed = alpha1.times - alpha1.grid.t0
    initial = 1 - alpha[0] ** 2
    beta_squared = (initial * np.exp(-gamma1 * elapsed)
                    + decaying_integral(-2 * alpha * rate, alpha1.grid, gamma1))
    margin = beta_squared * np.exp(np.minimum(gamma1 * elapsed, EXPONENT_CLIP))
    return beta_squared, margin, rate


def check_alpha1_producible(alpha1: ComplexSignal, gamma1: float,
                            tolerance: float = PRODUCIBILITY_TOLERANCE) -> Producibility:
    """
    Check whether a real atomic amplitude can be produced by some laser pulse.

    The cavity cannot hold more excitation than the atom has given away, less what already leaked out.
    Any monotonically decreasing amplitude is producible; oscillations are not unless ``gamma1`` is zero.

    Aiming at ``1 - w^2 (1 - alpha1^2)`` instead scales the implied ``beta1^2`` by ``w^2``, so no weight
    repairs a negative margin and ``max_weight`` is 0 whenever the amplitude is not producible.
    """
    _, margin, _ = _alpha1_constraint(alpha1, gamma1)
    lowest = float(np.min(margin))
    producible = lowest >= -tolerance
    return Producibility(producible=producible, margin=lowest, max_weight=1.0 if producible else 0.0)


def pulse_from_alpha1(alpha1: ComplexSignal, gamma1: float,
                      tolerance: float = PRODUCIBILITY_TOLERANCE) -> ComplexSignal:
    """
    Design the real non-negative pulse ``G1 = -d(alpha1)/dt / beta1`` which makes node 1 follow ``alpha1``.

    The preparation time is the grid start, where ``alpha1`` must be 1.

    :param alpha1: Real atomic amplitude.
    :param gamma1: Cavity decay rate of node 1.
    :param tolerance: Negative margin still accepted as round-off.
    :raise ValidationError: If ``alpha1`` is not prepared in the excited state.
    :raise ProducibilityError: If no real pulse produces ``alpha1``.
    """
    if abs(alpha1.values[0] - 1) > INITIAL_ALPHA1_TOLERANCE:
        raise ValidationError({'alpha1': 'Must start at 1 within {!r}, not {!r}.'.format(
            INITIAL_ALPHA1_TOLERANCE, alpha1.values[0])})
    beta_squared, margin, rate = _alpha1_constraint(alpha1, gamma1)
    violated = margin < -tolerance
    if np.any(violated):
        raise ProducibilityError('The atomic amplitude cannot be produced: the cavity would need a negative '
                                 'population from t = {!r}.'.format(alpha1.times[violated][0]))
    beta = np.sqrt(np.maximum(beta_squared, 0.0))
    pulse = _continue_ratio(-rate, beta, alpha1.times, 'cavity amplitude')
    LOGGER.debug('Designed a pulse on %r with peak %r.', alpha1.grid, float(np.max(pulse)))
    return alpha1.with_values(pulse)


def beta1_from_alpha1(alpha1: ComplexSignal, pulse: ComplexSignal) -> ComplexSignal:
    """
    Invert the atomic equation of motion: ``beta1 = -d(alpha1)/dt / G1``.

    Where both the pulse and the derivative vanish, the amplitude is continued from the neighbouring samples.

    :raise SingularityError: If the pulse vanishes while the atomic amplitude still changes.
    """
    check_aligned(alpha1, pulse)
    rate = derivative(alpha1).values
    return alpha1.with_values(_continue_ratio(-rate, pulse.values, alpha1.times, 'pulse'))


def design_emission(link: LinkParams, grid: Optional[TimeGrid] = None) -> Emission:
    """Design the pulse and the cavity amplitude of the logistic emission of node 1."""
    if grid is None:
        grid = emission_grid(link)
    alpha1 = logistic_alpha1(link, grid)
    pulse = pulse_from_alpha1(alpha1, link.gamma1)
    beta_squared, _, _ = _alpha1_constraint(alpha1, link.gamma1)
    beta1 = alpha1.with_values(np.sqrt(np.maximum(beta_squared, 0.0)))
    LOGGER.debug('Designed emission with r = %r on %r, emitted norm %r.',
                 link.r, grid, link.gamma1 * integrate(beta1.real ** 2, grid.dt))
    return Emission(alpha1, pulse, beta1)


def _lerch_beta1(r: float, kt: float) -> float:
    with mpmath.workdps(40):
        z = mpmath.exp(mpmath.mpf(kt))
        z2 = z * z
        lerch = mpmath.lerchphi(-z2, 1, 1 + r)
        radicand = 1 / (1 + z2) ** 2 + (1 - r) * (1 / (1 + z2) - r * lerch)
        return float(z * mpmath.sqrt(max(radicand, 0)))


def beta1_closed_form_logistic(link: LinkParams, t: Times, method: Beta1Method = Beta1Method.QUADRATURE) -> Times:
    """
    Evaluate the cavity amplitude of the logistic emission at given times.

    The cases ``r = 1/2`` and ``r = 1`` are elementary. Other ratios go either through the Lerch transcendent
    or through the quadrature construction of :func:`design_emission`, which also serves as the fallback
    when the Lerch series does not converge.
    """
    scalar = np.ndim(t) == 0
    times = np.atleast_1d(np.asarray(t, dtype=float))
    kt = link.k * times
    if link.r == 1:
        result = 1 / (2 * np.cosh(np.clip(kt, -EXPONENT_CLIP, EXPONENT_CLIP)))
    elif link.r == 0.5:
        kt = np.clip(kt, -EXPONENT_CLIP, EXPONENT_CLIP)
        radicand = 2 * np.arctan(np.exp(kt)) + np.tanh(kt) / np.cosh(kt)
        result = np.exp(-kt / 2) * np.sqrt(np.maximum(radicand, 0.0)) / 2
    else:
        result = None
        if method == Beta1Method.LERCH:
            try:
                result = np.array([_lerch_beta1(link.r, value) for value in kt])
            except (mpmath.libmp.NoConvergence, ZeroDivisionError) as error:
                LOGGER.warning('Lerch transcendent failed (%s), falling back to quadrature.', error)
        if result is None:
            dt = min(1 / (SAMPLES_PER_RATE * link.k), 1 / (SAMPLES_PER_RATE * link.gamma1))
            start = -EMISSION_LEAD / link.k
            grid = TimeGrid.covering(start, max(float(np.max(times)), start) + 1 / link.k, dt)
            beta1 = design_emission(link, grid).beta1
            result = sample(beta1, times)[0].real
    return float(result[0]) if scalar else result


def beta1_small_r(link: LinkParams, t: Times) -> Times:
    """Return the leading small-r asymptotic of the logistic cavity amplitude."""
    t = np.asarray(t, dtype=float)
    leading = 1 / (1 + np.exp(np.minimum(2 * link.k * t, EXPONENT_CLIP / 2))) ** 2
    decay = np.where(t < 0, 1.0, np.exp(-link.gamma1 * np.maximum(t, 0.0)))
    result = np.sqrt(np.maximum(decay - leading, 0.0))
    return float(result) if result.ndim == 0 else result


def pulse_small_r(link: LinkParams, t: Times) -> Times:
    """Return the leading small-r asymptotic of the logistic pulse."""
    kt = np.clip(link.k * np.asarray(t, dtype=float), -EXPONENT_CLIP / 2, EXPONENT_CLIP / 2)
    result = link.k / np.cosh(kt) / np.sqrt(2 + np.exp(2 * kt))
    return float(result) if result.ndim == 0 else result


def exponential_beta1(link: LinkParams, grid: TimeGrid) -> ComplexSignal:
    """Return the small-r limit of the cavity amplitude, a step followed by exponential decay."""
    times = grid.times
    return ComplexSignal(grid, np.where(times >= 0, np.exp(-link.gamma1 * np.maximum(times, 0.0) / 2), 0.0))


def gaussian_envelope(gamma1: float, sigma: float, grid: TimeGrid) -> ComplexSignal:
    """Return the Gaussian cavity envelope normalized to ``gamma1 * int B^2 = 1``."""
    scale = 1 / math.sqrt(gamma1 * sigma * math.sqrt(math.pi))
    return ComplexSignal(grid, scale * np.exp(-grid.times ** 2 / (2 * sigma ** 2)))


def sech_envelope(gamma1: float, sigma: float, grid: TimeGrid) -> ComplexSignal:
    """Return the hyperbolic secant cavity envelope normalized to ``gamma1 * int B^2 = 1``."""
    arguments = np.clip(grid.times / sigma, -EXPONENT_CLIP, EXPONENT_CLIP)
    return ComplexSignal(grid, 1 / np.cosh(arguments) / math.sqrt(2 * gamma1 * sigma))


def sech_target(k: float, gamma1: float, grid: TimeGrid) -> ComplexSignal:
    """Return the normalized hyperbolic secant cavity amplitude with the chirped phase ``arctan(k t) + pi/2``."""
    kt = np.clip(k * grid.times, -EXPONENT_CLIP, EXPONENT_CLIP)
    magnitude = math.sqrt(k / (2 * gamma1)) / np.cosh(kt)
    return ComplexSignal(grid, magnitude * np.exp(1j * (np.arctan(kt) + math.pi / 2)))


def _beta1_constraint(envelope: ComplexSignal, gamma1: float) -> np.ndarray:
    """Return ``I(t) = 2 int_{t_p}^{t} (dB/dt' + gamma1 B / 2) B dt'`` without differentiating ``B``."""
    squared = envelope.real ** 2
    return squared - squared[0] + gamma1 * cumulative_integral(envelope.with_values(squared)).real


def check_beta1_producible(envelope: ComplexSignal, gamma1: float,
                           tolerance: float = PRODUCIBILITY_TOLERANCE) -> Producibility:
    """
    Check whether a real cavity envelope can be produced from an atom prepared in the excited state.

    When it cannot, it is still produced with probability ``max_weight`` by aiming at the scaled envelope.
    """
    highest = float(np.max(_beta1_constraint(envelope, gamma1)))
    margin = 1 - highest
    producible = margin >= -tolerance
    max_weight = 1.0 if producible or highest <= 0 else min(1.0, 1 / highest)
    return Producibility(producible=producible, margin=margin, max_weight=max_weight)


def pulse_from_beta1(envelope: ComplexSignal, gamma1: float,
                     tolerance: float = PRODUCIBILITY_TOLERANCE) -> ComplexSignal:
    """
    Design the real pulse ``G1 = (dB/dt + gamma1 B / 2) / sqrt(1 - I(t))`` producing a real cavity envelope.

    :raise ProducibilityError: If the envelope is not producible.
    """
    radicand = 1 - _beta1_constraint(envelope, gamma1)
    violated = radicand < -tolerance
    if np.any(violated):
        raise ProducibilityError('The cavity envelope cannot be produced: the atom would need a negative '
                                 'population from t = {!r}.'.format(envelope.times[violated][0]))
    numerator = derivative(envelope).real + gamma1 * envelope.real / 2
    pulse = _continue_ratio(numerator, np.sqrt(np.maximum(radicand, 0.0)), envelope.times, 'atomic amplitude')
    return envelope.with_values(pulse)


def gaussian_max_weight(gamma1: float, sigma: float) -> float:
    """Return the largest weight w^2 with which a Gaussian cavity envelope of width ``sigma`` can be produced."""
    g = gamma1 * sigma / 2
    return 1 / (1 + math.exp(-g ** 2) / (math.sqrt(math.pi) * gamma1 * sigma) - erfc(g) / 2)


def sech_margin(gamma1: float, sigma: float) -> float:
    """Return the producibility margin of the hyperbolic secant envelope; negative for ``sigma < 2 / gamma1``."""
    product = gamma1 * sigma
    if product >= 2:
        return 0.0
    tanh = product / 2
    return 1 - (1 - tanh ** 2) / (2 * product) - (1 + tanh) / 2


def pulse_from_beta1_slowly_varying(psi_envelope: ComplexSignal,
                                    gamma1: float) -> Tuple[ComplexSignal, np.ndarray]:
    """
    Design a pulse for a slowly varying photon envelope ``Psi = sqrt(gamma1) * beta1``.

    The pulse magnitude is ``(sqrt(gamma1) / 2) |Psi| / sqrt(int_t^inf |Psi|^2)``; the laser phase cancels
    the envelope phase. The design is accurate when the envelope varies slowly compared to ``gamma1 / 2``.

    :return: The real pulse and the laser phase.
    """
    magnitude = psi_envelope.magnitude
    squared = psi_envelope.with_values(magnitude ** 2)
    running = cumulative_integral(squared).real
    tail = np.maximum(running[-1] - running, EPS_TAIL)
    pulse = math.sqrt(gamma1) / 2 * magnitude / np.sqrt(tail)
    phase = -np.unwrap(np.angle(psi_envelope.values))
    significant = magnitude > TAIL_TOLERANCE * psi_envelope.peak
    if np.any(significant):
        variation = derivative(psi_envelope.with_values(magnitude)).real / np.maximum(magnitude, EPS_DIV)
        chirp = np.gradient(-phase, psi_envelope.grid.dt)
        ratio = float(np.max((variation ** 2 + chirp ** 2)[significant]))
        LOGGER.debug('Slow variation ratio %r against gamma1^2/4 = %r.', ratio, gamma1 ** 2 / 4)
    return psi_envelope.with_values(pulse), phase


def support(signal: ComplexSignal, tolerance: float = TAIL_TOLERANCE) -> Tuple[float, float]:
    """Return the first and the last time where the signal exceeds ``tolerance`` relative to its peak."""
    significant = np.flatnonzero(signal.magnitude > tolerance * signal.peak)
    if not len(significant):
        return signal.grid.t0, signal.grid.t_end
    times = signal.times
    return float(times[significant[0]]), float(times[significant[-1]])


def default_step(beta1: ComplexSignal, link: LinkParams, parameters: Iterable[UnitaryParams]) -> float:
    """
    Return the default step of an evaluation grid.

    The step resolves the compressed cavity amplitude, the fastest carrier with 20 samples per cycle
    and the node 2 cavity decay.
    """
    parameters = list(parameters)
    compression = min(max([1.0] + [params.xi for params in parameters]), MAX_REFINEMENT)
    frequency = max([abs(link.zeta)] + [abs(params.omega0) for params in parameters])
    steps = [beta1.grid.dt / compression, 1 / (SAMPLES_PER_RATE * link.gamma2)]
    if frequency > 0:
        steps.append(2 * math.pi / (SAMPLES_PER_CYCLE * frequency))
    return min(steps)


def evaluation_grid(beta1: ComplexSignal, link: LinkParams, u: UnitaryParams, phi: Optional[UnitaryParams] = None,
                    dt: Optional[float] = None, tolerance: float = TAIL_TOLERANCE) -> TimeGrid:
    """
    Return a grid covering the supports of ``Psi`` and, optionally, of the ideal ``Phi``.

    :param beta1: Cavity amplitude of node 1.
    :param link: The link.
    :param u: Parameters of the unitary producing ``Psi``.
    :param phi: Ideal parameters of ``Phi``.
    :param dt: The step, see :func:`default_step` for the default.
    :param tolerance: Relative magnitude bounding the support of ``beta1``. Use zero for the whole window,
        e.g. so that node 2 reaches its steady state within the grid.
    """
    first, last = support(beta1, tolerance)
    intervals = [(first, last)]
    if u.t_l > 0:
        start, stop = max(u.T - last / u.xi, u.t_s), min(u.T - first / u.xi, u.t_f)
        if start < stop:
            intervals.append((start, stop))
    if phi is not None:
        intervals.append((phi.T - last / phi.xi, phi.T - first / phi.xi))
    if dt is None:
        dt = default_step(beta1, link, [u] if phi is None else [u, phi])
    return TimeGrid.covering(min(i[0] for i in intervals), max(i[1] for i in intervals), dt)


def ideal_phi(beta1: ComplexSignal, link: LinkParams, u: UnitaryParams,
              grid: Optional[TimeGrid] = None) -> ComplexSignal:
    """
    Return the ideal wave packet ``Phi(t) = sqrt(gamma2) exp(i omega0 (T - t)) beta1(xi (T - t))``.

    Node 2 driven by the time-reversed pulse absorbs exactly this packet. The transformation duration is
    irrelevant here.
    """
    if grid is None:
        grid = evaluation_grid(beta1, link, u.replace(t_l=0.0), phi=u)
    times = grid.times
    values, extrapolated = sample(beta1, u.xi * (u.T - times))
    if extrapolated:
        LOGGER.warning('Phi evaluates beta1 past its window on %r.', beta1.grid)
    values *= math.sqrt(link.gamma2) * np.exp(1j * u.omega0 * (u.T - times))
    return ComplexSignal(grid, values, extrapolated)


def synthesize_psi(beta1: ComplexSignal, link: LinkParams, u: UnitaryParams,
                   grid: Optional[TimeGrid] = None) -> ComplexSignal:
    """
    Return the wave packet ``Psi`` leaving the channel unitary.

    The photon ``sqrt(gamma1) beta1`` is blocked during the capture ``(t_i, t_s)``, re-emitted as
    ``sqrt(xi) exp(i omega0 (T - t)) beta1(xi (T - t))`` during ``[t_s, t_f)`` and passes untransformed
    otherwise. Without a transformation duration the photon passes untransformed.
    """
    if grid is None:
        grid = evaluation_grid(beta1, link, u)
    times = grid.times
    values = np.zeros(grid.n, dtype=complex)
    extrapolated = False
    if u.t_l > 0:
        blocked = (times > u.t_i) & (times < u.t_s)
        window = (times >= u.t_s) & (times < u.t_f)
    else:
        blocked = window = np.zeros(grid.n, dtype=bool)
    passing = ~(blocked | window)
    if np.any(window):
        arguments = u.xi * (u.T - times[window])
        transformed, extrapolated = sample(beta1, arguments)
        values[window] = math.sqrt(u.xi) * np.exp(1j * u.omega0 * (u.T - times[window])) * transformed
    if np.any(passing):
        values[passing] = sample(beta1, times[passing])[0]
    if extrapolated:
        LOGGER.warning('Psi evaluates beta1 past its window on %r.', beta1.grid)
    return ComplexSignal(grid, math.sqrt(link.gamma1) * values, extrapolated)
