"""Ideal parameters of the channel unitary, error variables and the optimal timing."""
import logging
import math
from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy.optimize import bisect

from hqst.constants import (BISECTION_XTOL, REGION_OMEGA0, REGION_T, REGION_XI, TAIL_TOLERANCE, TIMING_SCAN_POINTS,
                            ErrorVariable)
from hqst.core import ComplexSignal, cumulative_integral, inner_product, sample
from hqst.datamodels import DataModel
from hqst.errors import ValidationError
from hqst.wavepacket import LinkParams, UnitaryParams, evaluation_grid, ideal_phi, support, synthesize_psi

LOGGER = logging.getLogger('hqst.transform')


class IdealParams(DataModel):
    """Ideal frequency shift and stretch of the unitary, and its optimal timing once known."""

    FIELDS = ['omega0_i', 'xi_i', 'T_i_star']
    omega0_i: float
    xi_i: float
    T_i_star: Optional[float] = None

    def __init__(self, **data: Any) -> None:
        super().__init__(**data)
        self.validate()

    def validate(self) -> None:
        """Validate the ideal parameters."""
        self.validate_numbers('omega0_i')
        self.validate_numbers('xi_i', minimum=0.0, strict=True)
        self.validate_numbers('T_i_star', required=False)

    def unitary(self, t_l: float) -> UnitaryParams:
        """
        Return the ideal unitary with the given transformation duration.

        :raise ValidationError: If the optimal timing is not known yet.
        """
        if self.T_i_star is None:
            raise ValidationError({'T_i_star': 'The optimal timing is required.'})
        return UnitaryParams(omega0=self.omega0_i, xi=self.xi_i, T=self.T_i_star, t_l=t_l)


class OptimalTiming(DataModel):
    """Switching time capturing the most of the photon, and the corresponding timing parameter."""

    FIELDS = ['t_s_star', 'T_i_star', 'fallback']
    t_s_star: float
    T_i_star: float
    fallback: bool = False
    """The timing maximizes the captured mass directly, the stationarity condition has no root."""

    def validate(self) -> None:
        """Validate the timing."""
        self.validate_numbers('t_s_star', 'T_i_star')
        self.validate_fields(bool, 'fallback')


class Region(DataModel):
    """Symmetric bounds of the error variables of a sweep."""

    FIELDS = ['omega0', 'xi', 'T']
    omega0: float = REGION_OMEGA0
    xi: float = REGION_XI
    T: float = REGION_T

    def __init__(self, **data: Any) -> None:
        super().__init__(**data)
        self.validate()

    def validate(self) -> None:
        """Validate the bounds."""
        self.validate_numbers('omega0', 'xi', 'T', minimum=0.0, strict=True)

    def bound(self, variable: ErrorVariable) -> float:
        """Return the bound of an error variable."""
        return getattr(self, ErrorVariable(variable).value)

    def axis(self, variable: ErrorVariable, points: int) -> np.ndarray:
        """Return uniform samples of an error variable across the region."""
        bound = self.bound(variable)
        return np.linspace(-bound, bound, points)


def ideal_params(link: LinkParams) -> IdealParams:
    """Return the ideal shift (the laser mismatch) and stretch (the ratio of decay rates); the timing is deferred."""
    return IdealParams(omega0_i=link.zeta, xi_i=link.gamma2 / link.gamma1)


def region(scale: float = 1.0) -> Region:
    """Return the sweep region with every bound scaled by ``scale``."""
    return Region(omega0=REGION_OMEGA0 * scale, xi=REGION_XI * scale, T=REGION_T * scale)


def unitary_from_errors(ideal: IdealParams, t_l: float, x: float = 0.0, y: float = 0.0, z: float = 0.0,
                        gamma2: float = 1.0) -> UnitaryParams:
    """
    Return the unitary deviating from the ideal one by the error variables.

    :param x: Frequency error in units of gamma2.
    :param y: Binary logarithm of the relative stretch.
    :param z: Timing error in units of 1/gamma2.
    """
    nominal = ideal.unitary(t_l)
    return nominal.replace(omega0=nominal.omega0 + x * gamma2, xi=nominal.xi * 2.0 ** y, T=nominal.T + z / gamma2)


def errors_from_unitary(ideal: IdealParams, u: UnitaryParams, gamma2: float = 1.0) -> Dict[ErrorVariable, float]:
    """Return the error variables of a unitary with respect to the ideal one."""
    nominal = ideal.unitary(u.t_l)
    return {
        ErrorVariable.OMEGA0: (u.omega0 - nominal.omega0) / gamma2,
        ErrorVariable.XI: math.log2(u.xi / nominal.xi),
        ErrorVariable.T: (u.T - nominal.T) * gamma2,
    }


def captured_mass(beta1: ComplexSignal, gamma1: float, t_s: float, t_l: float) -> float:
    """Return ``gamma1 * int_{t_s - t_l}^{t_s} |beta1|^2 dt``, the part of the photon the unitary captures."""
    running = gamma1 * cumulative_integral(beta1.with_values(beta1.magnitude ** 2)).real
    lower, upper = np.interp([t_s - t_l, t_s], beta1.times, running)
    return float(upper - lower)


def optimal_ts(beta1: ComplexSignal, t_l: float, xi_i: float, points: int = TIMING_SCAN_POINTS) -> OptimalTiming:
    """
    Find the switching time which captures the most of the photon during ``(t_s - t_l, t_s)``.

    The captured mass is stationary where ``beta1^2(t_s) = beta1^2(t_s - t_l)``. Its maxima are bracketed
    on a scan and refined by bisection; the largest captured mass wins. When the condition has no root,
    e.g. because ``t_l`` spans the whole photon, the maximum of the scanned mass is taken and flagged.

    :param beta1: Real cavity amplitude of node 1.
    :param t_l: Transformation duration, positive.
    :param xi_i: Ideal stretch.
    :param points: Number of scanned switching times.
    """
    if t_l <= 0:
        raise ValidationError({'t_l': 'Must be positive, not {!r}.'.format(t_l)})
    first, last = support(beta1)
    threshold = (TAIL_TOLERANCE * beta1.peak) ** 2

    def difference(t_s: float) -> float:
        values = np.abs(sample(beta1, [t_s, t_s - t_l])[0]) ** 2
        return float(values[0] - values[1])

    running = cumulative_integral(beta1.with_values(beta1.magnitude ** 2)).real
    scan = np.linspace(first, last + t_l, points)
    mass = np.interp(scan, beta1.times, running) - np.interp(scan - t_l, beta1.times, running)
    differences = np.array([difference(t_s) for t_s in scan])
    differences[np.abs(differences) <= threshold] = 0.0

    roots = []
    signed = np.flatnonzero(differences)
    for left, right in zip(signed[:-1], signed[1:]):
        if differences[left] < 0 or differences[right] > 0:
            continue
        if right == left + 1:
            roots.append(bisect(difference, scan[left], scan[right], xtol=BISECTION_XTOL))
        elif right == left + 2:
            roots.append(float(scan[left + 1]))
        # Longer zero runs are plateaus where both tails vanish, not stationary points.
    if roots:
        masses = np.interp(roots, beta1.times, running) - np.interp(np.array(roots) - t_l, beta1.times, running)
        t_s_star = float(roots[int(np.argmax(masses))])
        fallback = False
        LOGGER.debug('Timing condition has roots %r, captured masses %r.', roots, masses)
    else:
        best = np.flatnonzero(mass >= np.max(mass) - threshold)
        t_s_star = float((scan[best[0]] + scan[best[-1]]) / 2)
        fallback = True
        LOGGER.warning('Timing condition has no root for t_l = %r, centering the captured mass at t_s = %r.',
                       t_l, t_s_star)
    return OptimalTiming(t_s_star=t_s_star, T_i_star=t_s_star * (1 + 1 / xi_i), fallback=fallback)


def general_timing_objective(beta1: ComplexSignal, link: LinkParams, u: UnitaryParams) -> float:
    """
    Return ``|<Phi|Phi_l>|`` for the ideal shift and stretch with the timing and duration of ``u``.

    Unlike :func:`captured_mass`, the overlap keeps the untransformed part of the photon, which only
    averages out when the ideal shift is large.
    """
    ideal = ideal_params(link)
    params = u.replace(omega0=ideal.omega0_i, xi=ideal.xi_i)
    grid = evaluation_grid(beta1, link, params, phi=params)
    phi = ideal_phi(beta1, link, params, grid)
    return abs(inner_product(phi, synthesize_psi(beta1, link, params, grid)))


def timed_ideal(beta1: ComplexSignal, link: LinkParams, t_l: float) -> Tuple[IdealParams, OptimalTiming]:
    """Return the ideal parameters with the optimal timing for a transformation duration."""
    ideal = ideal_params(link)
    timing = optimal_ts(beta1, t_l, ideal.xi_i)
    return ideal.replace(T_i_star=timing.T_i_star), timing
