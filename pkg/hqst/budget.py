"""
Standard loss budget and the expected overhead of error correction.

Photons are lost at the emitter, at the cavity mirrors and in the transmission line. Each loss is
quantified by a cooperativity ``C``, the ratio of the desired to the undesired rate, with the survival
probability ``C / (1 + C)``. The repeat-until-success correction protocol restarts whenever a jump or
an error is detected; its amplitude bookkeeping gives the probability that a trial succeeds.

The cooperativity dataset is a CSV file with these columns:

* ``label``, ``emitter_type`` (``neutral-atom`` or ``ion``),
* ``g``, ``gamma``, ``gamma_sd``: coupling, cavity and spontaneous decay rates, or ``C_em`` directly,
* ``T_i``, ``T_o``, ``L``: mirror transmissions and losses, or ``T_loss`` for a reported ``T_o + L``,
* ``kappa_c``, ``kappa_l``: correct and lossy cavity decay rates, an alternative to the transmissions,
* ``P_cav_reported``: a reported cavity survival probability, the source of inferred cooperativities,
* ``flags``: ``;``-separated :class:`RecordFlag` values,
* ``abridged``: ``yes`` if the row belongs to the abridged table.
"""
import csv
import logging
import math
from numbers import Number
from typing import Any, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np
from scipy.constants import c as speed_of_light, hbar, k as boltzmann
from scipy.optimize import brentq

from hqst.constants import EmitterType, RecordFlag
from hqst.datamodels import DataModel
from hqst.errors import DivergenceError, ParseError, ValidationError

LOGGER = logging.getLogger('hqst.budget')

NORMALIZATION_TOLERANCE = 1e-9
RAW_TOLERANCE = 5e-3
"""Relative agreement of a cooperativity with its raw inputs, the rounding of the dataset."""


def survival(cooperativity: float) -> float:
    """Return the survival probability ``C / (1 + C)``."""
    return cooperativity / (1 + cooperativity)


def cooperativity_from_raw(g: float, gamma: float, gamma_sd: float) -> float:
    """Return the emitter cooperativity ``4 g^2 / (gamma gamma_sd)``."""
    return 4 * g ** 2 / (gamma * gamma_sd)


def cavity_cooperativity(t_i: float, t_o: float, loss: float) -> float:
    """Return the cavity cooperativity ``T_i / (T_o + L)``."""
    return t_i / (t_o + loss)


def cooperativity_from_probability(probability: float) -> float:
    """
    Return the cooperativity with the given survival probability, ``P / (1 - P)``.

    :raise ValidationError: If the probability is not in ``(0, 1)``.
    """
    if not 0 < probability < 1:
        raise ValidationError({'probability': 'Must be in (0, 1), not {!r}.'.format(probability)})
    return probability / (1 - probability)


class CooperativityRecord(DataModel):
    """Emitter and cavity cooperativities of a node, with the raw inputs they are derived from."""

    FIELDS = ['label', 'emitter_type', 'C_em', 'C_cav', 'g', 'gamma', 'gamma_sd', 'T_i', 'T_o', 'L', 'T_loss',
              'kappa_c', 'kappa_l', 'P_cav_reported', 'flags', 'abridged']
    label: str
    emitter_type: Optional[EmitterType] = None
    C_em: float
    C_cav: Optional[float] = None
    """Missing for an emitter without an output cavity."""
    g: Optional[float] = None
    gamma: Optional[float] = None
    gamma_sd: Optional[float] = None
    T_i: Optional[float] = None
    T_o: Optional[float] = None
    L: Optional[float] = None
    T_loss: Optional[float] = None
    kappa_c: Optional[float] = None
    kappa_l: Optional[float] = None
    P_cav_reported: Optional[float] = None
    flags: FrozenSet[RecordFlag] = frozenset()
    abridged: bool = True

    def __init__(self, **data: Any) -> None:
        super().__init__(**data)
        if self.emitter_type is not None:
            self.emitter_type = EmitterType(self.emitter_type)
        self.flags = frozenset(RecordFlag(flag) for flag in self.flags)
        self.validate()

    def validate(self) -> None:
        """Validate the record and the consistency of its raw inputs."""
        self.validate_fields(str, 'label')
        self.validate_numbers('C_em', minimum=0.0, strict=True)
        self.validate_numbers('C_cav', minimum=0.0, strict=True, required=False)
        self.validate_numbers('g', 'gamma', 'gamma_sd', 'T_i', 'T_o', 'L', 'T_loss', 'kappa_c', 'kappa_l',
                              minimum=0.0, required=False)
        self.validate_numbers('P_cav_reported', minimum=0.0, required=False)
        self.validate_fields(bool, 'abridged')
        self.T_loss = _total_loss(self.T_loss, self.T_o, self.L)

        if None not in (self.g, self.gamma, self.gamma_sd):
            self._check_raw('C_em', self.C_em, cooperativity_from_raw(self.g, self.gamma, self.gamma_sd))
        if self.C_cav is None or RecordFlag.INFERRED in self.flags:
            return
        if self.kappa_c is not None and self.kappa_l is not None:
            self._check_raw('C_cav', self.C_cav, self.kappa_c / self.kappa_l)
        elif self.T_i is not None and self.T_loss is not None:
            self._check_raw('C_cav', self.C_cav, self.T_i / self.T_loss)

    @staticmethod
    def _check_raw(name: str, value: float, expected: float) -> None:
        if not math.isclose(value, expected, rel_tol=RAW_TOLERANCE):
            raise ValidationError({name: 'Must agree with the raw inputs ({!r}), not {!r}.'.format(expected, value)})

    @property
    def has_cavity(self) -> bool:
        """Whether the cavity cooperativity is known."""
        return self.C_cav is not None

    def require_cavity(self) -> float:
        """
        Return the cavity cooperativity.

        :raise ValidationError: If the record has none.
        """
        if self.C_cav is None:
            raise ValidationError({'C_cav': 'The record {!r} has no cavity cooperativity.'.format(self.label)})
        return self.C_cav


def record(label: str, C_em: float, C_cav: Optional[float]) -> CooperativityRecord:
    """Return a record with given cooperativities only."""
    return CooperativityRecord(label=label, C_em=C_em, C_cav=C_cav)


def survival_probabilities(rec: CooperativityRecord, x_over_xtl: float = 0.0) -> Tuple[float, float, float]:
    """
    Return the emitter, cavity and transmission line survival probabilities.

    :param rec: Cooperativities of the node.
    :param x_over_xtl: Line length in units of the attenuation distance.
    """
    if x_over_xtl < 0:
        raise ValidationError({'x_over_xtl': 'Must be at least 0, not {!r}.'.format(x_over_xtl)})
    return survival(rec.C_em), survival(rec.require_cavity()), math.exp(-x_over_xtl)


def total_survival(rec: CooperativityRecord) -> float:
    """Return ``(P_em P_cav)^2``, the survival of emission and absorption by two identical nodes."""
    p_em, p_cav, _ = survival_probabilities(rec)
    return (p_em * p_cav) ** 2


def tilde_p_success(p: float, rec1: CooperativityRecord, rec2: CooperativityRecord,
                    x_over_xtl: float = 0.0) -> float:
    """Return the success probability ``p`` degraded by the standard losses of both nodes and the line."""
    if not 0 <= p <= 1:
        raise ValidationError({'p': 'Must be in [0, 1], not {!r}.'.format(p)})
    p_em1, p_cav1, p_line = survival_probabilities(rec1, x_over_xtl)
    p_em2, p_cav2, _ = survival_probabilities(rec2)
    return p * p_em1 * p_em2 * p_cav1 * p_cav2 * p_line


def wavelength_to_angular_frequency(wavelength: float) -> float:
    """Return the angular frequency of light with the given vacuum wavelength in meters."""
    return 2 * math.pi * speed_of_light / wavelength


def thermal_occupation(angular_frequency: float, temperature: float) -> float:
    """
    Return the mean thermal occupation ``1 / (exp(hbar omega / k T) - 1)`` of a mode.

    :param angular_frequency: Angular frequency in rad/s.
    :param temperature: Temperature in kelvins.
    """
    if angular_frequency <= 0 or temperature <= 0:
        raise ValidationError({'angular_frequency': 'Frequency and temperature must be positive.'})
    ratio = hbar * angular_frequency / (boltzmann * temperature)
    if ratio > 700:
        return math.exp(-ratio)
    return 1 / math.expm1(ratio)


def _parse_float(row: dict, name: str) -> Optional[float]:
    value = (row.get(name) or '').strip()
    return float(value) if value else None


def _total_loss(T_loss: Optional[float], T_o: Optional[float], L: Optional[float]) -> Optional[float]:
    if T_loss is None and T_o is not None and L is not None:
        return T_o + L
    return T_loss


def _parse_record(row: dict) -> CooperativityRecord:
    flags = frozenset(RecordFlag(flag.strip()) for flag in (row.get('flags') or '').split(';') if flag.strip())
    raw = {name: _parse_float(row, name) for name in (
        'g', 'gamma', 'gamma_sd', 'C_em', 'T_i', 'T_o', 'L', 'T_loss', 'kappa_c', 'kappa_l', 'P_cav_reported')}

    c_em = raw.pop('C_em')
    if None not in (raw['g'], raw['gamma'], raw['gamma_sd']):
        c_em = cooperativity_from_raw(raw['g'], raw['gamma'], raw['gamma_sd'])
    if c_em is None:
        raise ValueError('Either C_em or g, gamma and gamma_sd are required.')

    if RecordFlag.NOT_REPORTED in flags and raw['L'] is None:
        raw['L'] = 0.0
    raw['T_loss'] = _total_loss(raw['T_loss'], raw['T_o'], raw['L'])

    c_cav: Optional[float] = None
    if RecordFlag.INFERRED in flags:
        if raw['P_cav_reported'] is None:
            raise ValueError('An inferred cavity cooperativity requires P_cav_reported.')
        c_cav = cooperativity_from_probability(raw['P_cav_reported'])
    elif raw['kappa_c'] is not None and raw['kappa_l'] is not None:
        c_cav = raw['kappa_c'] / raw['kappa_l']
    elif raw['T_i'] is not None and raw['T_loss'] is not None:
        c_cav = raw['T_i'] / raw['T_loss']

    return CooperativityRecord(
        label=row['label'].strip(),
        emitter_type=row.get('emitter_type') or None,
        C_em=c_em,
        C_cav=c_cav,
        flags=flags,
        abridged=(row.get('abridged') or 'yes').strip().lower() in ('yes', 'true', '1'),
        **raw,
    )


def load_cooperativity_table(path: str) -> List[CooperativityRecord]:
    """
    Load the cooperativity dataset.

    :param path: Path of the CSV file.
    :return: Records in the file order.
    :raise ParseError: If a row is malformed, with the file name and line.
    """
    records = []
    with open(path, newline='') as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or 'label' not in reader.fieldnames:
            raise ParseError('{}: the header must name a label column.'.format(path))
        for row in reader:
            try:
                records.append(_parse_record(row))
            except (ValueError, KeyError, ValidationError) as e:
                raise ParseError('{}:{}: {}'.format(path, reader.line_num, e)) from e
    LOGGER.debug('Loaded %d cooperativity records from %s.', len(records), path)
    return records


def _mean(values: List[float], trimmed: bool) -> float:
    if trimmed:
        if len(values) < 3:
            raise ValidationError({'records': 'Trimming requires at least three values.'})
        values = sorted(values)[1:-1]
    return float(np.mean(values))


def table_averages(records: Iterable[CooperativityRecord], trimmed: bool = False) -> Tuple[float, float]:
    """
    Return the mean emitter and cavity cooperativities of the abridged table.

    Lower-bound cavity cooperativities are left out of the cavity mean.

    :param trimmed: Whether to disregard the largest and the smallest value of each column.
    """
    abridged = [rec for rec in records if rec.abridged]
    if not abridged:
        raise ValidationError({'records': 'No abridged records.'})
    c_em = [rec.C_em for rec in abridged]
    c_cav = [rec.require_cavity() for rec in abridged if RecordFlag.LOWER_BOUND not in rec.flags]
    return _mean(c_em, trimmed), _mean(c_cav, trimmed)


class EczChannel(DataModel):
    """
    Amplitudes of one transmission attempt, ``|g>|r> -> alpha |g>|r>`` and
    ``|e>|r> -> beta |r>|e> + upsilon1 |r>|r> + upsilon2 |e>|r>``.

    The second transmission of a trial has the amplitudes ``*_t``; they default to the first ones,
    the systematic case.
    """

    FIELDS = ['alpha', 'beta', 'upsilon1', 'upsilon2', 'alpha_t', 'beta_t', 'upsilon1_t', 'upsilon2_t']
    alpha: complex
    beta: complex
    upsilon1: complex = 0j
    upsilon2: complex = 0j
    alpha_t: Optional[complex] = None
    beta_t: Optional[complex] = None
    upsilon1_t: Optional[complex] = None
    upsilon2_t: Optional[complex] = None

    def __init__(self, **data: Any) -> None:
        super().__init__(**data)
        for name in ('alpha', 'beta', 'upsilon1', 'upsilon2'):
            if getattr(self, name + '_t') is None:
                setattr(self, name + '_t', getattr(self, name))
        self.validate()

    def validate(self) -> None:
        """
        Validate the amplitudes.

        :raise ValidationError: If an amplitude is not a number, ``|alpha| > 1``
            or ``|beta|^2 + |upsilon1|^2 + |upsilon2|^2 != 1``.
        """
        self.validate_fields(Number, *self.FIELDS)
        for suffix in ('', '_t'):
            alpha, beta, upsilon1, upsilon2 = (getattr(self, name + suffix)
                                               for name in ('alpha', 'beta', 'upsilon1', 'upsilon2'))
            if abs(alpha) > 1 + NORMALIZATION_TOLERANCE:
                raise ValidationError({'alpha' + suffix: 'Must not exceed 1 in magnitude, not {!r}.'.format(alpha)})
            norm = abs(beta) ** 2 + abs(upsilon1) ** 2 + abs(upsilon2) ** 2
            if abs(norm - 1) > NORMALIZATION_TOLERANCE:
                raise ValidationError({'beta' + suffix: 'The transmission must be normalized, '
                                                        '|beta|^2 + |upsilon1|^2 + |upsilon2|^2 = {!r}.'.format(norm)})

    @classmethod
    def worst_case(cls, epsilon: float) -> 'EczChannel':
        """Return the channel with ``|alpha| = 1`` whose error ``epsilon`` is all photon loss."""
        _check_epsilon(epsilon)
        return cls(alpha=1.0, beta=math.sqrt(1 - epsilon), upsilon1=math.sqrt(epsilon))

    @classmethod
    def both_errors(cls, epsilon: float, fraction: float = 1.0) -> 'EczChannel':
        """
        Return the channel with ``|alpha|^2 = |beta|^2 = 1 - epsilon``.

        :param fraction: Share of the error due to photon loss, the rest leaves node 1 excited.
        """
        _check_epsilon(epsilon)
        return cls(alpha=math.sqrt(1 - epsilon), beta=math.sqrt(1 - epsilon),
                   upsilon1=math.sqrt(fraction * epsilon), upsilon2=math.sqrt((1 - fraction) * epsilon))


class EczStepProbabilities(DataModel):
    """Probabilities of restarting a trial at each step, and the probability that it succeeds."""

    FIELDS = ['p_jump', 'p_ii', 'p_jump_t', 'p_iv', 'p_s']
    p_jump: float
    p_ii: float
    p_jump_t: float
    p_iv: float
    p_s: float

    def validate(self) -> None:
        """Validate the probabilities."""
        self.validate_numbers(*self.FIELDS, minimum=0.0)


def _check_epsilon(epsilon: float) -> None:
    if not 0 <= epsilon <= 1:
        raise ValidationError({'epsilon': 'Must be in [0, 1], not {!r}.'.format(epsilon)})


def _ratio(num: float, den: float) -> float:
    # A branch of zero norm carries no probability.
    return num / den if den > 0 else 0.0


def ecz_step_probabilities(ch: EczChannel) -> EczStepProbabilities:
    """
    Track the amplitudes of both branches of a trial through its two transmissions.

    The first transmission renormalizes by ``N_ii^2 = (1 + |alpha|^2) / 2``, the check of node 1 projects
    out ``upsilon2``, and the second transmission renormalizes by ``N_iv``.
    """
    a, b, u1, u2 = (abs(value) ** 2 for value in (ch.alpha, ch.beta, ch.upsilon1, ch.upsilon2))
    a_t, u1_t, u2_t = (abs(value) ** 2 for value in (ch.alpha_t, ch.upsilon1_t, ch.upsilon2_t))

    p_jump = (1 - a + u1) / 2
    p_ii = u2 / (1 + a)

    # Squared double-primed amplitudes after the check of node 1.
    remaining = 1 + a - u2
    a_pp = _ratio(2 * a, remaining)
    b_pp = _ratio(2 * b, remaining)
    u1_pp = _ratio(2 * u1, remaining)

    p_jump_t = ((1 - a_t) * (b_pp + u1_pp) + u1_t * a_pp) / 2

    n_iv = _ratio(a + a_t * (1 - u2), remaining)
    p_iv = (a_pp * (_ratio(u1_t, n_iv) + _ratio(u2_t, n_iv)) + _ratio(a_t, n_iv) * u1_pp) / 2

    p_s = (1 - p_jump) * (1 - p_ii) * (1 - p_jump_t) * (1 - p_iv)
    LOGGER.debug('ECZ steps: jump %r, ii %r, jump~ %r, iv %r, success %r.', p_jump, p_ii, p_jump_t, p_iv, p_s)
    return EczStepProbabilities(p_jump=p_jump, p_ii=p_ii, p_jump_t=p_jump_t, p_iv=p_iv, p_s=max(0.0, p_s))


def ecz_systematic_success(ch: EczChannel) -> float:
    """Return the closed-form success probability of a trial with equal amplitudes in both transmissions."""
    a, b, u1, u2 = (abs(value) ** 2 for value in (ch.alpha, ch.beta, ch.upsilon1, ch.upsilon2))
    return a * b * (1 + b) * (1 + a - u1) / ((1 + a) * (2 - u2))


def ecz_expected_trials(ch: EczChannel, systematic: bool = True) -> float:
    """
    Return the expected number of trials until success, ``1 / P_s``.

    :param systematic: Use the closed form for equal amplitudes in both transmissions; otherwise
        track the second transmission with its own amplitudes.
    :raise DivergenceError: If a trial never succeeds.
    """
    p_s = ecz_systematic_success(ch) if systematic else ecz_step_probabilities(ch).p_s
    if p_s <= 0:
        raise DivergenceError('A trial never succeeds, the expected number of trials diverges.')
    return 1 / p_s


def ecz_trials_stddev(p_s: float) -> float:
    """Return the standard deviation ``sqrt(1 - P_s) / P_s`` of the geometric number of trials."""
    if not 0 < p_s <= 1:
        raise DivergenceError('The success probability {!r} is not in (0, 1].'.format(p_s))
    return math.sqrt(1 - p_s) / p_s


def ecz_worst_case_trials(epsilon: float) -> float:
    """
    Return ``E[n] = 4 / ((1 - eps) (2 - eps)^2)`` for ``|alpha| = 1`` and photon loss ``eps``.

    :raise DivergenceError: If ``eps = 1``.
    """
    _check_epsilon(epsilon)
    if epsilon == 1:
        raise DivergenceError('Every photon is lost, the expected number of trials diverges.')
    return 4 / ((1 - epsilon) * (2 - epsilon) ** 2)


def ecz_both_errors_trials(epsilon: float) -> float:
    """
    Return ``E[n] = 1 / (1 - eps)^3`` for ``|alpha|^2 = |beta|^2 = 1 - eps`` and photon loss ``eps``.

    :raise DivergenceError: If ``eps = 1``.
    """
    _check_epsilon(epsilon)
    if epsilon == 1:
        raise DivergenceError('Every photon is lost, the expected number of trials diverges.')
    return 1 / (1 - epsilon) ** 3


def worst_case_epsilon(trials: float) -> float:
    """Return the photon loss at which the worst-case expected number of trials reaches ``trials``."""
    if trials < 1:
        raise ValidationError({'trials': 'Must be at least 1, not {!r}.'.format(trials)})
    if trials == 1:
        return 0.0
    return float(brentq(lambda epsilon: ecz_worst_case_trials(epsilon) - trials, 0.0, 1 - 1e-15, xtol=1e-12))


def en_vs_psuccess_curve(c0: float, x_over_xtl: float, psucc_axis: Iterable[float]) -> np.ndarray:
    """
    Return the worst-case expected number of trials against the shape error ``1 - P_success``.

    Both nodes have ``C_em = C_cav = c0``; the error of a transmission is ``1 - tilde_p_success``.

    :return: An array of ``(1 - P_success, E[n])`` rows, ``E[n]`` infinite where no photon survives.
    """
    if c0 <= 0:
        raise ValidationError({'c0': 'Must be greater than 0, not {!r}.'.format(c0)})
    node = record('C0', c0, c0)
    rows = []
    for p in psucc_axis:
        epsilon = 1 - tilde_p_success(float(p), node, node, x_over_xtl)
        trials = ecz_worst_case_trials(epsilon) if epsilon < 1 else math.inf
        rows.append((1 - float(p), trials))
    return np.array(rows, dtype=float).reshape(-1, 2)


def psuccess_for_trials(c0: float, x_over_xtl: float, trials: float) -> float:
    """
    Return the bare success probability at which the worst-case expected number of trials reaches ``trials``.

    :raise ValidationError: If the standard losses alone exceed the error budget.
    """
    node = record('C0', c0, c0)
    losses = tilde_p_success(1.0, node, node, x_over_xtl)
    p = (1 - worst_case_epsilon(trials)) / losses
    if p > 1:
        raise ValidationError({'trials': 'Unreachable with the standard losses ({!r}).'.format(losses)})
    return p


def ecz_general_fidelity(alpha: complex, alpha_t: complex, beta: complex, beta_t: complex) -> float:
    """
    Return the fidelity of the state after a trial whose transmissions differ with the systematic target.

    :raise ValidationError: If the denominator vanishes.
    """
    den = 2 * (abs(alpha_t) ** 2 * abs(beta) ** 2 + abs(alpha) ** 2 * abs(beta_t) ** 2)
    if den == 0:
        raise ValidationError({'alpha': 'The amplitudes must not vanish.'})
    return abs(alpha * beta_t + alpha_t * beta) ** 2 / den


def ecz_nonsystematic_fidelity(ratio_a: float, ratio_b: float, delta_ab: float) -> float:
    """
    Return ``1/2 + r_a r_b cos(delta_ab) / (r_a^2 + r_b^2)``.

    :param ratio_a: ``|alpha_t / alpha|``.
    :param ratio_b: ``|beta_t / beta|``.
    :param delta_ab: Difference of the phase errors of alpha and beta.
    """
    if ratio_a <= 0 or ratio_b <= 0:
        raise ValidationError({'ratio_a': 'The ratios must be positive.'})
    return 0.5 + ratio_a * ratio_b * math.cos(delta_ab) / (ratio_a ** 2 + ratio_b ** 2)
