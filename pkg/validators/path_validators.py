# -*- coding: utf-8 -*-

import logging
from pathlib import Path

from validators import LOGGER_NAME
from validators.validator_decorator import validator


def _to_path(value: str or Path) -> Path:
    """
    Returns the value as a resolved path, relative paths are taken from the working directory.

    :param str or Path value: The string or path to convert.
    """
    path = value if isinstance(value, Path) else Path(str(value))
    return path.expanduser().resolve()


@validator(message='The output directory must not be an existing file.')
def is_output_directory(value: str or Path) -> bool:
    """
    Validate if the given value can be used as an output directory.

    The directory itself may be missing, but neither it nor the nearest existing ancestor may be a file.

    :param str or Path value: The string or path to validate.
    """
    try:
        path = _to_path(value)
    except (OSError, RuntimeError, ValueError) as e:
        logging.getLogger(LOGGER_NAME).debug('is_output_directory: %s', e)
        return False

    if path.exists():
        return path.is_dir()

    existing = next((parent for parent in path.parents if parent.exists()), None)
    return existing is None or existing.is_dir()
