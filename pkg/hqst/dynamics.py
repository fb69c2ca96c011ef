"""
Direct integration of the excitation amplitude equations of motion.

Every model is integrated by an embedded Runge-Kutta method on complex amplitudes. Drives are sampled
signals interpolated inside the solver; the photon driving node 2 is synthesized from the node 1 cavity
amplitude of a first pass.
"""
import logging
import math
from typing import Any, Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline

from hqst.constants import (DECAY_WINDOW, EMISSION_TOLERANCE, MAX_STEP_FACTOR, SAMPLES_PER_RATE, SLOWLY_VARYING_WINDOW,
                            SOLVER_ATOL, SOLVER_METHOD, SOLVER_RTOL, STEADY_STATE_FRACTION, STEADY_STATE_TOLERANCE,
                            DecayKind)
from hqst.core import ComplexSignal, TimeGrid, integrate, resample, sample
from hqst.datamodels import DataModel
from hqst.errors import DegenerateEmissionError, IntegrationError, ValidationError
from hqst.wavepacket import (Emission, LinkParams, UnitaryParams, design_emission, evaluation_grid,
                             pulse_from_beta1_slowly_varying, sech_target, synthesize_psi)

LOGGER = logging.getLogger('hqst.dynamics')

Amplitudes = Tuple[complex, complex, complex, complex]

EXCITED: Amplitudes = (1.0, 0.0, 0.0, 0.0)
"""Node 1 atom excited, everything else empty."""
GROUND: Amplitudes = (0.0, 0.0, 0.0, 0.0)


class SolverOptions(DataModel):
    """Options of the ODE solver."""

    FIELDS = ['method', 'rtol', 'atol', 'max_step_factor']
    method: str = SOLVER_METHOD
    rtol: float = SOLVER_RTOL
    atol: float = SOLVER_ATOL
    max_step_factor: float = MAX_STEP_FACTOR

    def validate(self) -> None:
        """Validate the options."""
        self.validate_fields(str, 'method')
        self.validate_numbers('rtol', 'atol', 'max_step_factor', minimum=0.0, strict=True)


class DecayModel(DataModel):
    """
    Spontaneous decay of the emitting atom.

    The large-detuning model adds the decay ``4 G1^2 / (gamma1 C1)`` of the atomic amplitude.
    The finite-detuning model keeps the complex detuning parameter ``Gamma_r`` as well.
    """

    FIELDS = ['kind', 'C1', 'Gamma_r']
    kind: DecayKind = DecayKind.NONE
    C1: Optional[float] = None
    """Emitter cooperativity."""
    Gamma_r: float = 0.0
    """Spontaneous decay rate over twice the detuning."""

    def __init__(self, **data: Any) -> None:
        super().__init__(**data)
        try:
            self.kind = DecayKind(self.kind)
        except ValueError:
            raise ValidationError({'kind': 'Must be one of {!r}, not {!r}.'.format(
                sorted(kind.value for kind in DecayKind), self.kind)}) from None
        if self.kind == DecayKind.LARGE_DETUNING:
            self.Gamma_r = 0.0
        self.validate()

    def validate(self) -> None:
        """Validate the decay model."""
        self.validate_fields(DecayKind, 'kind')
        self.validate_numbers('C1', minimum=0.0, strict=True, required=self.kind != DecayKind.NONE)
        self.validate_numbers('Gamma_r', minimum=0.0)

    @classmethod
    def finite_detuning(cls, C1: float, Gamma_r: Optional[float] = None) -> 'DecayModel':
        """Return the finite-detuning model, with the default detuning unless ``Gamma_r`` is given."""
        return cls(kind=DecayKind.FINITE_DETUNING, C1=C1, Gamma_r=default_gamma_r(C1) if Gamma_r is None else Gamma_r)


class EmissionMetrics(DataModel):
    """Efficiency of an emission and the overlap of the renormalized emitted shape with its target."""

    FIELDS = ['efficiency', 'overlap']
    efficiency: float
    overlap: float

    def validate(self) -> None:
        """Validate the metrics."""
        self.validate_numbers('efficiency', 'overlap', minimum=0.0)

    @property
    def effective_cooperativity(self) -> float:
        """Cooperativity of a decay-free emitter with the same efficiency."""
        return effective_cooperativity(self.efficiency)


class Trajectory:
    """
    Excitation amplitudes of both nodes on a time grid.

    :param grid: The time grid.
    :param amplitudes: Array of shape (4, n) with alpha1, beta1, alpha2 and beta2.
    """

    def __init__(self, grid: TimeGrid, amplitudes: np.ndarray) -> None:
        amplitudes = np.asarray(amplitudes, dtype=complex)
        if amplitudes.shape != (4, grid.n):
            raise ValidationError({'amplitudes': 'Must have shape (4, {}), not {}.'.format(grid.n, amplitudes.shape)})
        self.grid = grid
        self.alpha1, self.beta1, self.alpha2, self.beta2 = amplitudes

    @property
    def norm(self) -> np.ndarray:
        """Total excitation remaining in both nodes."""
        return sum(np.abs(values) ** 2 for values in (self.alpha1, self.beta1, self.alpha2, self.beta2))

    @property
    def transferred(self) -> float:
        """Population of the node 2 atom at the end of the grid."""
        return float(abs(self.alpha2[-1]) ** 2)

    @property
    def steady(self) -> bool:
        """Whether the node 2 population is settled over the end of the grid."""
        return steady_state(self)

    def signal(self, name: str) -> ComplexSignal:
        """Return one amplitude as a signal."""
        return ComplexSignal(self.grid, getattr(self, name))

    def __repr__(self) -> str:
        return '{}(grid={!r}, transferred={!r})'.format(self.__class__.__name__, self.grid, self.transferred)


class _Drives:
    """Cubic interpolation of several complex drives sampled on one grid."""

    def __init__(self, *signals: ComplexSignal) -> None:
        grid = signals[0].grid
        columns = []
        for signal in signals:
            values = resample(signal, grid).values
            columns.extend([values.real, values.imag])
        self._spline = CubicSpline(grid.times, np.column_stack(columns))

    def __call__(self, t: float) -> np.ndarray:
        parts = self._spline(t)
        return parts[0::2] + 1j * parts[1::2]


def _solve(rhs: Callable[[float, np.ndarray], np.ndarray], grid: TimeGrid, initial: Sequence[complex],
           solver: Optional[SolverOptions]) -> np.ndarray:
    """
    Integrate on the grid and return the amplitudes at its samples.

    :raise IntegrationError: If the solver fails, e.g. by a step size underflow.
    """
    solver = solver or SolverOptions()
    solution = solve_ivp(rhs, (grid.t0, grid.t_end), np.asarray(initial, dtype=complex), method=solver.method,
                         t_eval=grid.times, rtol=solver.rtol, atol=solver.atol,
                         max_step=solver.max_step_factor * grid.dt)
    if not solution.success:
        reached = float(solution.t[-1]) if len(solution.t) else grid.t0
        raise IntegrationError(solution.message, reached)
    LOGGER.debug('Solver %s on %r: %d evaluations.', solver.method, grid, solution.nfev)
    return solution.y


def _node1_state(alpha1: ComplexSignal, beta1: ComplexSignal, t: float,
                 initial: Sequence[complex]) -> Tuple[complex, complex]:
    """Return the node 1 state at time ``t`` of a first pass, the prepared state before it started."""
    if t <= alpha1.grid.t0:
        return initial[0], initial[1]
    t = min(t, alpha1.grid.t_end)
    return sample(alpha1, [t])[0][0], sample(beta1, [t])[0][0]


def stark_shift(drive: ComplexSignal, stark: float) -> np.ndarray:
    """Return the drive-induced shift ``stark * |G|^2`` of the atomic frequency."""
    return stark * np.abs(drive.values) ** 2


def g2_time_reversed(pulse1: ComplexSignal, xi_i: float, T_i: float, grid: TimeGrid) -> ComplexSignal:
    """Return the node 2 pulse ``G2(t) = xi_i * G1(xi_i (T_i - t))`` absorbing the ideal wave packet."""
    values, extrapolated = sample(pulse1, xi_i * (T_i - grid.times))
    if extrapolated:
        LOGGER.warning('The time-reversed pulse evaluates G1 past its window on %r.', pulse1.grid)
    return ComplexSignal(grid, xi_i * values, extrapolated)


def integrate_general(drive1: ComplexSignal, drive2: Optional[ComplexSignal], link: LinkParams,
                      u: Optional[UnitaryParams] = None, d1: float = 0.0, d2: float = 0.0,
                      stark: Tuple[float, float] = (0.0, 0.0), init: Amplitudes = EXCITED,
                      solver: Optional[SolverOptions] = None) -> Trajectory:
    """
    Integrate both nodes with complex drives ``G_j exp(i phi_j)``, cavity shifts and Stark shifts.

    The atomic amplitudes carry the laser phases. Without ``drive2`` only node 1 is integrated, on the grid
    of ``drive1``; otherwise the trajectory lives on the grid of ``drive2``.

    :raise IntegrationError: If the solver fails.
    """
    gamma1, gamma2 = link.gamma1, link.gamma2
    shift1 = drive1.with_values(stark_shift(drive1, stark[0]))
    drives = _Drives(drive1, shift1)

    def node1(t: float, y: np.ndarray) -> np.ndarray:
        drive, shift = drives(t)
        alpha, beta = y
        return np.array([-drive * beta - 1j * shift.real * alpha,
                         np.conj(drive) * alpha - (gamma1 / 2 + 1j * d1) * beta])

    first = _solve(node1, drive1.grid, init[:2], solver)
    if drive2 is None:
        rest = np.outer(init[2:], np.ones(drive1.grid.n))
        return Trajectory(drive1.grid, np.vstack([first, rest]))
    if u is None:
        raise ValidationError({'u': 'The unitary is required to drive node 2.'})

    alpha1 = ComplexSignal(drive1.grid, first[0])
    beta1 = ComplexSignal(drive1.grid, first[1])
    grid = drive2.grid
    psi = synthesize_psi(beta1, link, u, grid)
    incoming = psi.with_values(psi.values * np.exp(1j * link.zeta * grid.times))
    shift2 = drive2.with_values(stark_shift(drive2, stark[1]))
    drives = _Drives(resample(drive1, grid), resample(shift1, grid), drive2, shift2, incoming)
    root = math.sqrt(gamma2)

    def both(t: float, y: np.ndarray) -> np.ndarray:
        g1, s1, g2, s2, field = drives(t)
        alpha_1, beta_1, alpha_2, beta_2 = y
        return np.array([
            -g1 * beta_1 - 1j * s1.real * alpha_1,
            np.conj(g1) * alpha_1 - (gamma1 / 2 + 1j * d1) * beta_1,
            -g2 * beta_2 - 1j * s2.real * alpha_2,
            np.conj(g2) * alpha_2 - (gamma2 / 2 + 1j * d2) * beta_2 - root * field,
        ])

    start = _node1_state(alpha1, beta1, grid.t0, init)
    trajectory = Trajectory(grid, _solve(both, grid, start + tuple(init[2:]), solver))
    _check_steady(trajectory)
    return trajectory


def integrate_ideal(pulse1: ComplexSignal, pulse2: ComplexSignal, link: LinkParams, u: UnitaryParams,
                    init: Amplitudes = EXCITED, solver: Optional[SolverOptions] = None) -> Trajectory:
    """
    Integrate both nodes with real pulses.

    Node 1 is integrated first on the grid of ``pulse1``; its cavity amplitude is turned into ``Psi``
    by the unitary ``u`` and drives node 2, integrated together with node 1 on the grid of ``pulse2``.

    :raise IntegrationError: If the solver fails.
    """
    return integrate_general(pulse1, pulse2, link, u, init=init, solver=solver)


def integrate_with_decay(model: DecayModel, pulse1: ComplexSignal, link: LinkParams,
                         init: Tuple[complex, complex] = (1.0, 0.0),
                         solver: Optional[SolverOptions] = None) -> Trajectory:
    """
    Integrate node 1 with spontaneous decay of its atom.

    Both models reduce to the decay-free equations as the cooperativity grows.

    :raise ValidationError: If the model has no decay.
    :raise IntegrationError: If the solver fails.
    """
    if model.kind == DecayKind.NONE:
        raise ValidationError({'kind': 'Must be a decay model, not {!r}.'.format(model.kind.value)})
    gamma1, cooperativity = link.gamma1, model.C1
    detuning = 1 + 1j * model.Gamma_r
    drives = _Drives(pulse1)

    def node1(t: float, y: np.ndarray) -> np.ndarray:
        pulse = drives(t)[0].real
        alpha, beta = y
        return np.array([
            -pulse / detuning * beta - 2 * pulse ** 2 / (gamma1 * cooperativity * detuning) * alpha,
            pulse / detuning * alpha - gamma1 / 2 * (1 + model.Gamma_r ** 2 * cooperativity / detuning) * beta,
        ])

    first = _solve(node1, pulse1.grid, init, solver)
    return Trajectory(pulse1.grid, np.vstack([first, np.zeros((2, pulse1.grid.n))]))


def steady_state(traj: Trajectory, tolerance: float = STEADY_STATE_TOLERANCE,
                 fraction: float = STEADY_STATE_FRACTION) -> bool:
    """Check that the node 2 population changes slower than ``tolerance`` over the final part of the grid."""
    count = max(2, int(math.ceil(fraction * traj.grid.n)))
    population = np.abs(traj.alpha2[-count:]) ** 2
    return bool(np.max(np.abs(np.gradient(population, traj.grid.dt))) < tolerance)


def _check_steady(traj: Trajectory) -> None:
    if not traj.steady:
        LOGGER.warning('Node 2 is not in its steady state at the end of %r.', traj.grid)


def verify_time_reversal(traj: Trajectory, link: LinkParams, u_ideal: UnitaryParams) -> float:
    """
    Return how far node 2 is from following node 1 backwards in time.

    Ideally ``|alpha2(t)| = |alpha1(xi_i (T_i - t))|`` and ``|beta2(t)| = |beta1(xi_i (T_i - t))|``.
    Node 1 keeps its initial state before the grid and its cavity decays freely at ``gamma1`` after it.

    A finite transformation duration leaves ``|beta1(t_s)|`` in the node 1 cavity when the capture ends.
    Node 2 never receives it, so the residual is at least that amplitude.
    """
    grid = traj.grid
    arguments = u_ideal.xi * (u_ideal.T - grid.times)
    clipped = np.clip(arguments, grid.t0, grid.t_end)
    alpha1 = np.abs(sample(traj.signal('alpha1'), clipped)[0])
    beta1 = np.abs(sample(traj.signal('beta1'), clipped)[0])
    beta1 *= np.exp(-link.gamma1 / 2 * (arguments - clipped).clip(min=0.0))
    return float(max(np.max(np.abs(np.abs(traj.alpha2) - alpha1)), np.max(np.abs(np.abs(traj.beta2) - beta1))))


def emission_metrics(traj: Trajectory, target_beta1: ComplexSignal, gamma1: float) -> EmissionMetrics:
    """
    Return the efficiency ``gamma1 * int |beta1|^2`` of an emission and the overlap of its renormalized shape.

    :raise DegenerateEmissionError: If almost nothing is emitted.
    """
    beta1 = traj.signal('beta1')
    target = resample(target_beta1, traj.grid).values
    efficiency = gamma1 * integrate(np.abs(beta1.values) ** 2, traj.grid.dt)
    eta = math.sqrt(max(efficiency, 0.0))
    if eta < EMISSION_TOLERANCE:
        raise DegenerateEmissionError('Emission efficiency {!r} is too small to renormalize.'.format(efficiency))
    reference = gamma1 * integrate(np.abs(target) ** 2, traj.grid.dt)
    amplitude = gamma1 * integrate(np.conj(beta1.values / eta) * target, traj.grid.dt)
    return EmissionMetrics(efficiency=efficiency, overlap=abs(amplitude) ** 2 / reference)


def effective_cooperativity(efficiency: float) -> float:
    """Return the cooperativity ``C`` with ``C / (1 + C)`` equal to the emission efficiency."""
    if efficiency >= 1:
        return math.inf
    return efficiency / (1 - efficiency)


def default_gamma_r(C1: float) -> float:
    """Return the rescaled decay for a detuning of five times the larger of the coupling and twice gamma1."""
    return 1 / (5 * max(math.sqrt(C1), 4.0))


def decay_metrics(link: LinkParams, model: DecayModel, solver: Optional[SolverOptions] = None) -> EmissionMetrics:
    """Emit the logistic photon of ``link`` under a decay model and compare it with the decay-free emission."""
    dt = min(1 / (SAMPLES_PER_RATE * link.k), 1 / (SAMPLES_PER_RATE * link.gamma1))
    grid = TimeGrid.covering(-DECAY_WINDOW / link.k, DECAY_WINDOW / link.k, dt)
    emission = design_emission(link, grid)
    trajectory = integrate_with_decay(model, emission.pulse, link, solver=solver)
    metrics = emission_metrics(trajectory, emission.beta1, link.gamma1)
    LOGGER.debug('Decay %r at r = %r: %r.', model, link.r, metrics)
    return metrics


def slowly_varying_emission(gamma1: float, k: float, solver: Optional[SolverOptions] = None) -> EmissionMetrics:
    """
    Emit the chirped hyperbolic secant target with the slowly varying pulse design.

    The design is exact only for ``gamma1 / 2k`` going to infinity; the overlap shows how close it gets.
    """
    link = LinkParams(gamma1=gamma1, k=k)
    dt = min(1 / (SAMPLES_PER_RATE * k), 1 / (SAMPLES_PER_RATE * gamma1))
    grid = TimeGrid.covering(-SLOWLY_VARYING_WINDOW / k, SLOWLY_VARYING_WINDOW / k, dt)
    target = sech_target(k, gamma1, grid)
    pulse, phase = pulse_from_beta1_slowly_varying(target.with_values(math.sqrt(gamma1) * target.values), gamma1)
    trajectory = integrate_general(pulse.with_values(pulse.values * np.exp(1j * phase)), None, link, solver=solver)
    metrics = emission_metrics(trajectory, target, gamma1)
    LOGGER.debug('Slowly varying design at r = %r: %r.', link.r, metrics)
    return metrics


def transfer_grid(emission: Emission, link: LinkParams, u: UnitaryParams, u_ideal: UnitaryParams) -> TimeGrid:
    """Return the grid of a transfer covering both photons and the whole absorption of node 2."""
    return evaluation_grid(emission.beta1, link, u, phi=u_ideal, tolerance=0.0)


def simulate_transfer(emission: Emission, link: LinkParams, u: UnitaryParams, u_ideal: UnitaryParams,
                      solver: Optional[SolverOptions] = None) -> Trajectory:
    """
    Simulate the transfer through the unitary ``u`` to node 2 driven by the pulse ideal for ``u_ideal``.

    :raise IntegrationError: If the solver fails.
    """
    grid = transfer_grid(emission, link, u, u_ideal)
    pulse2 = g2_time_reversed(emission.pulse, u_ideal.xi, u_ideal.T, grid)
    trajectory = integrate_ideal(emission.pulse, pulse2, link, u, solver=solver)
    LOGGER.debug('Transferred %r through %r.', trajectory.transferred, u)
    return trajectory
