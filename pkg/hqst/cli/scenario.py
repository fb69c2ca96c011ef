"""
Scenario files of the commands.

A scenario is an INI file, e.g.::

    [link]
    gamma1 = 2
    zeta = 50
    k = 2

    [unitary]
    t_l = 10
    xi = 0.75
    T = 17

Unitary fields left out take their ideal values. Any field can be overridden on the command line
with ``--set section.key=value``.
"""
import configparser
import logging
import re
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

from hqst.constants import Beta1Method
from hqst.errors import ParseError, ValidationError
from hqst.transform import IdealParams, OptimalTiming, timed_ideal
from hqst.utils import digest, parse_complex, parse_range
from hqst.wavepacket import (Emission, LinkParams, UnitaryParams, beta1_closed_form_logistic, design_emission,
                             emission_grid)

LOGGER = logging.getLogger('hqst.cli')

SECTIONS = ('link', 'unitary', 'grid', 'sweep', 'decay', 'budget', 'ecz', 'output')
DEFAULT_T_L = 10.0
REQUIRED = object()
V = TypeVar('V')

_SECTION_RE = re.compile(r'^\s*\[(?P<name>[^\]]+)\]')
_KEY_RE = re.compile(r'^\s*(?P<key>[^=:\s]+)\s*[=:]')


class Scenario:
    """
    Parameters of a command run.

    :param sections: Values by section and key.
    :param source: The file name, for diagnostics.
    :param lines: Lines of the file, for diagnostics.
    """

    def __init__(self, sections: Dict[str, Dict[str, str]], source: str = '<scenario>',
                 lines: Sequence[str] = (), overridden: Sequence[Tuple[str, str]] = ()) -> None:
        self.sections = sections
        self.source = source
        self.lines = list(lines)
        self.overridden = set(overridden)

    @classmethod
    def load(cls, path: Optional[str], overrides: Sequence[str] = ()) -> 'Scenario':
        """
        Load a scenario file and apply overrides.

        :param path: The file, or None for an empty scenario.
        :param overrides: Items ``section.key=value``.
        :raise ParseError: If the file or an override is malformed.
        """
        parser = configparser.ConfigParser(interpolation=None)
        parser.optionxform = str  # type: ignore
        lines: List[str] = []
        source = path or '<scenario>'
        if path is not None:
            try:
                with open(path, encoding='utf-8') as handle:
                    lines = handle.read().splitlines()
                parser.read_string('\n'.join(lines), source=path)
            except OSError as e:
                raise ParseError('{}: cannot read the scenario: {}'.format(path, e.strerror)) from e
            except configparser.Error as e:
                raise ParseError('{}:{}: {}'.format(path, getattr(e, 'lineno', '?'), e.message)) from e

        unknown = [name for name in parser.sections() if name not in SECTIONS]
        if unknown:
            raise ParseError('{}: unknown section [{}], expected one of {}.'.format(
                source, unknown[0], ', '.join(SECTIONS)))

        sections = {name: dict(parser.items(name)) for name in parser.sections()}
        overridden = []
        for item in overrides:
            name, equals, value = item.partition('=')
            section, dot, key = name.strip().partition('.')
            if not equals or not dot or not key or section not in SECTIONS:
                raise ParseError('--set {!r}: expected section.key=value with a section of {}.'.format(
                    item, ', '.join(SECTIONS)))
            sections.setdefault(section, {})[key] = value.strip()
            overridden.append((section, key))
        LOGGER.debug('Loaded scenario %s with sections %r.', source, sorted(sections))
        return cls(sections, source, lines, overridden)

    @property
    def digest(self) -> str:
        """Short hash of the scenario contents."""
        return digest(self.sections)[:16]

    def has(self, section: str, key: str) -> bool:
        """Whether the scenario sets a field."""
        return key in self.sections.get(section, {})

    def _line(self, section: str, key: str) -> str:
        if (section, key) in self.overridden:
            return '--set'
        current = None
        for number, line in enumerate(self.lines, start=1):
            header = _SECTION_RE.match(line)
            if header:
                current = header.group('name').strip()
                continue
            match = _KEY_RE.match(line)
            if current == section and match and match.group('key') == key:
                return str(number)
        return '?'

    def error(self, section: str, key: str, message: str) -> ParseError:
        """Return a parse error pointing at a field."""
        return ParseError('{}:{}: [{}] {}: {}'.format(self.source, self._line(section, key), section, key, message))

    def get(self, section: str, key: str, convert: Callable[[str], V], default: Any = REQUIRED) -> V:
        """
        Return a converted field.

        :raise ParseError: If the field is missing without a default or does not convert.
        """
        raw = self.sections.get(section, {}).get(key)
        if raw is None or raw == '':
            if default is REQUIRED:
                raise self.error(section, key, 'the field is required.')
            return default
        try:
            return convert(raw)
        except (TypeError, ValueError) as e:
            raise self.error(section, key, 'invalid value {!r} ({}).'.format(raw, e)) from e

    def get_float(self, section: str, key: str, default: Any = REQUIRED) -> float:
        """Return a real field."""
        return self.get(section, key, float, default)

    def get_int(self, section: str, key: str, default: Any = REQUIRED) -> int:
        """Return an integer field."""
        return self.get(section, key, int, default)

    def get_str(self, section: str, key: str, default: Any = REQUIRED) -> str:
        """Return a text field."""
        return self.get(section, key, str, default)

    def get_complex(self, section: str, key: str, default: Any = REQUIRED) -> complex:
        """Return a complex field."""
        return self.get(section, key, parse_complex, default)

    def get_range(self, section: str, key: str, default: Any = REQUIRED) -> np.ndarray:
        """Return uniform samples of a ``start:stop:num`` field."""
        spec = self.get(section, key, parse_range, default)
        return spec if spec is None or isinstance(spec, np.ndarray) else np.linspace(*spec)

    def get_floats(self, section: str, key: str, default: Any = REQUIRED) -> List[float]:
        """Return a comma-separated list of reals."""
        return self.get(section, key, lambda value: [float(item) for item in value.split(',')], default)

    def link(self) -> LinkParams:
        """
        Return the link of the scenario.

        :raise ParseError: If a field is missing or invalid.
        """
        fields = {'gamma1': self.get_float('link', 'gamma1'), 'gamma2': self.get_float('link', 'gamma2', 1.0),
                  'zeta': self.get_float('link', 'zeta', 0.0), 'k': self.get_float('link', 'k')}
        try:
            return LinkParams(**fields)
        except ValidationError as e:
            key, message = next(iter(e.errors.items()))
            raise self.error('link', key, message) from e

    @property
    def t_l(self) -> float:
        """Transformation duration."""
        return self.get_float('unitary', 't_l', DEFAULT_T_L)

    @property
    def seed(self) -> Optional[int]:
        """Seed of random choices."""
        return self.get_int('output', 'seed', None)

    def unitary(self, ideal: IdealParams) -> UnitaryParams:
        """
        Return the unitary of the scenario, ideal in every field it leaves out.

        :raise ParseError: If a field is invalid.
        """
        nominal = ideal.unitary(self.t_l)
        fields = {name: self.get_float('unitary', name, getattr(nominal, name)) for name in ('omega0', 'xi', 'T')}
        try:
            return nominal.replace(**fields)
        except ValidationError as e:
            key, message = next(iter(e.errors.items()))
            raise self.error('unitary', key, message) from e


class Reference:
    """
    The designed emission of a scenario and the ideal unitary for it.

    :param link: The link.
    :param emission: The emission of node 1.
    :param ideal: The ideal parameters with the optimal timing.
    :param timing: The optimal timing.
    :param t_l: Transformation duration.
    """

    def __init__(self, link: LinkParams, emission: Emission, ideal: IdealParams, timing: OptimalTiming,
                 t_l: float) -> None:
        self.link = link
        self.emission = emission
        self.ideal = ideal
        self.timing = timing
        self.t_l = t_l

    @property
    def beta1(self):
        """Cavity amplitude of node 1."""
        return self.emission.beta1

    @property
    def nominal(self) -> UnitaryParams:
        """The ideal unitary."""
        return self.ideal.unitary(self.t_l)


def build_reference(scenario: Scenario, method: Beta1Method = Beta1Method.QUADRATURE) -> Reference:
    """
    Design the emission of a scenario and find the optimal timing of its unitary.

    :param method: Evaluation path of the cavity amplitude.
    """
    link = scenario.link()
    grid = emission_grid(link, scenario.get_float('grid', 'dt', None))
    emission = design_emission(link, grid)
    if method == Beta1Method.LERCH:
        beta1 = emission.beta1.with_values(beta1_closed_form_logistic(link, grid.times, method))
        emission = Emission(emission.alpha1, emission.pulse, beta1)
    ideal, timing = timed_ideal(emission.beta1, link, scenario.t_l)
    if scenario.has('unitary', 'T_i'):
        ideal = ideal.replace(T_i_star=scenario.get_float('unitary', 'T_i'))
    LOGGER.info('Reference of %s: r = %r, T_i* = %r.', scenario.source, link.r, ideal.T_i_star)
    return Reference(link, emission, ideal, timing, scenario.t_l)
