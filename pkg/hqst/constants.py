"""Constants and enumerations."""
# This module must contain only constants and enums
# with basic types to be importable from settings.
from enum import Enum, unique

# Natural units: gamma2 = 1, every time is in units of 1/gamma2.

SOLVER_METHOD = 'DOP853'
SOLVER_RTOL = 1e-9
SOLVER_ATOL = 1e-12
MAX_STEP_FACTOR = 20
"""The solver step is capped at this multiple of the grid step, so the interpolated drives are never skipped."""

EPS_DIV = 1e-12
"""Pulse and derivative magnitude below which a division is treated as 0/0."""
EPS_TAIL = 1e-15
"""Floor of the tail integral in the slowly varying pulse design."""
PRODUCIBILITY_TOLERANCE = 1e-9
TAIL_TOLERANCE = 1e-6
"""Edge magnitude, relative to the peak, above which evaluating past a window is flagged as extrapolation."""
INITIAL_ALPHA1_TOLERANCE = 1e-6
EMISSION_TOLERANCE = 1e-9
STEADY_STATE_TOLERANCE = 1e-8
STEADY_STATE_FRACTION = 0.05

EMISSION_LEAD = 15.0
"""Emission window starts at -EMISSION_LEAD / k."""
EMISSION_TRAIL = 40.0
"""Emission window ends no earlier than EMISSION_TRAIL / gamma1, where the exponential tail has decayed."""
SAMPLES_PER_RATE = 40
SAMPLES_PER_CYCLE = 20
MAX_REFINEMENT = 64
"""Largest grid refinement applied to resolve a compressed wave packet."""
MAX_SWEEP_SAMPLES = 2 ** 19

BISECTION_XTOL = 1e-6
TIMING_SCAN_POINTS = 2001

DECAY_WINDOW = 15.0
"""Decay metrics are evaluated on k*t in [-DECAY_WINDOW, DECAY_WINDOW]."""
SLOWLY_VARYING_WINDOW = 15.0
"""The slowly varying design is checked on k*t in [-SLOWLY_VARYING_WINDOW, SLOWLY_VARYING_WINDOW]."""

REGION_OMEGA0 = 3.0
REGION_XI = 6.0
REGION_T = 7.5
REGION_POINTS = 101
"""Samples per axis of the unscaled region; scaled regions keep its spacing."""

EXPONENT_CLIP = 700.0
"""Arguments of exp and cosh are clipped here to stay within double precision."""
DECAY_BLOCK_SPAN = 50.0
"""Largest exponent spanned by one block of a running decaying integral."""


@unique
class ErrorVariable(str, Enum):
    """Dimensionless deviation of a unitary parameter from its ideal value."""

    OMEGA0 = 'omega0'
    """Frequency shift error x = (omega0 - omega0_i) / gamma2."""
    XI = 'xi'
    """Stretch error y = log2(xi / xi_i)."""
    T = 'T'
    """Timing error z = gamma2 * (T - T_i)."""


@unique
class DecayKind(str, Enum):
    """Spontaneous decay model of the emitting atom."""

    NONE = 'none'
    LARGE_DETUNING = 'large-detuning'
    FINITE_DETUNING = 'finite-detuning'


@unique
class Beta1Method(str, Enum):
    """Evaluation path of the cavity amplitude for a logistic atomic amplitude."""

    QUADRATURE = 'quadrature'
    LERCH = 'lerch'


@unique
class EmitterType(str, Enum):
    """Kind of emitter of a cooperativity record."""

    NEUTRAL_ATOM = 'neutral-atom'
    ION = 'ion'


@unique
class RecordFlag(str, Enum):
    """Annotation of a cooperativity record."""

    INFERRED = 'inferred'
    """The cavity cooperativity was inferred from a reported survival probability."""
    LOWER_BOUND = 'lower_bound'
    """Losses are an upper estimate; the cavity cooperativity is a lower bound."""
    NOT_REPORTED = 'not_reported'
    """Cavity losses were not reported."""
