# -*- coding: utf-8 -*-

import logging
import math
import sys

from validators import LOGGER_NAME
from validators.validator_decorator import validator


MAX_SIZE = sys.maxsize
MIN_SIZE = -sys.maxsize - 1

# Smallest number of time steps accepted for a time grid
MIN_TIME_STEPS = 16


def _int(value: str, min_limit: int = MIN_SIZE, max_limit: int = MAX_SIZE) -> bool:
    """
    Validate if the given value is an int and is within the min and max limits.

    :param str value: The string to validate.
    :param int min_limit: The minimum allowed value.
    :param int max_limit: The maximum allowed value.
    """
    try:
        int_value = int(value)
        return min_limit <= int_value <= max_limit
    except (TypeError, ValueError) as e:
        logging.getLogger(LOGGER_NAME).debug('_int: %s', e)
        return False


def _float(value: str,
           min_limit: float = -math.inf,
           max_limit: float = math.inf,
           min_inclusive: bool = True,
           max_inclusive: bool = True) -> bool:
    """
    Validate if the given value is a finite float within the min and max limits.

    :param str value: The string to validate.
    :param float min_limit: The minimum allowed value.
    :param float max_limit: The maximum allowed value.
    :param bool min_inclusive: If the minimum itself is allowed.
    :param bool max_inclusive: If the maximum itself is allowed.
    """
    try:
        float_value = float(value)
    except (TypeError, ValueError) as e:
        logging.getLogger(LOGGER_NAME).debug('_float: %s', e)
        return False

    if not math.isfinite(float_value):
        return False
    above = float_value >= min_limit if min_inclusive else float_value > min_limit
    below = float_value <= max_limit if max_inclusive else float_value < max_limit
    return above and below


@validator(message='Only positive integer values are allowed.')
def is_positive_int(value: str) -> bool:
    """
    Validate if the given value is a positive integer.

    :param str value: The string to validate.
    """
    return _int(value, min_limit=1)


@validator(message='Negative integer values are not allowed.')
def is_not_negative_int(value: str) -> bool:
    """
    Validate if the given value is not a negative integer.

    :param str value: The string to validate.
    """
    return _int(value, min_limit=0)


@validator(message='At least {} time steps are required.'.format(MIN_TIME_STEPS))
def is_step_count(value: str) -> bool:
    return _int(value, min_limit=MIN_TIME_STEPS)


@validator(message='Only positive values are allowed.')
def is_positive_float(value: str) -> bool:
    """
    Validate if the given value is a positive finite float.

    :param str value: The string to validate.
    """
    return _float(value, min_limit=0.0, min_inclusive=False)


@validator(message='Negative values are not allowed.')
def is_not_negative_float(value: str) -> bool:
    return _float(value, min_limit=0.0)


@validator(message='A tolerance must lie strictly between 0 and 1.')
def is_tolerance(value: str) -> bool:
    return _float(value, min_limit=0.0, max_limit=1.0, min_inclusive=False, max_inclusive=False)


@validator(message='Only exponents in [1, 2) are allowed.')
def is_alpha_exponent(value: str) -> bool:
    """
    Validate the singularity exponent of a weight x^(-alpha).

    :param str value: The string to validate.
    """
    return _float(value, min_limit=1.0, max_limit=2.0, max_inclusive=False)


@validator(message='Only exponents p >= 1 are allowed.')
def is_lp_exponent(value: str) -> bool:
    """
    Validate an Lp exponent.

    :param str value: The string to validate.
    """
    return _float(value, min_limit=1.0)
