"""Various utility functions."""
import hashlib
import json
import os
from typing import Any, Mapping, Optional, Tuple

import numpy as np


def parse_range(value: str) -> Tuple[float, float, int]:
    """
    Parse a range written as ``start:stop:num``.

    :param value: The range, e.g. ``-3:3:201``.
    :return: A tuple of start, stop and the number of samples.
    :raise ValueError: If the range is malformed.
    """
    try:
        start, stop, num = value.split(':')
        result = float(start), float(stop), int(num)
    except ValueError:
        raise ValueError('Invalid range {!r}, expected start:stop:num.'.format(value)) from None
    if result[2] < 2:
        raise ValueError('Invalid range {!r}, at least two samples are required.'.format(value))
    return result


def parse_complex(value: str) -> complex:
    """
    Parse a complex number, e.g. ``0.9``, ``0.3-0.1j`` or ``(1+2j)``.

    :raise ValueError: If the value is not a complex number.
    """
    return complex(value.replace(' ', ''))


def digest(data: Mapping[str, Any]) -> str:
    """Compute a stable SHA-256 digest of a nested mapping of plain values."""
    payload = json.dumps(data, sort_keys=True, default=str, separators=(',', ':'))
    return hashlib.sha256(payload.encode('utf-8')).hexdigest()


def available_cores() -> int:
    """Return the number of CPU cores available to this process."""
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:  # pragma: no cover
        return os.cpu_count() or 1


def seeded_rng(seed: Optional[int]) -> np.random.Generator:
    """Return a numpy random generator, deterministic for a given seed."""
    return np.random.default_rng(seed)
