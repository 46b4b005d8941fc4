# -*- coding: utf-8 -*-

import logging

import numpy as np

from validators import LOGGER_NAME
from validators.validator_decorator import validator


@validator(message='Only square matrices are allowed.')
def is_square_matrix(value: np.ndarray) -> bool:
    """
    Validate if the given value is a square matrix.

    :param np.ndarray value: The parsed matrix.
    """
    matrix = np.asarray(value)
    return matrix.ndim == 2 and matrix.shape[0] == matrix.shape[1]


@validator(message='Only matrices with finite entries are allowed.')
def is_finite_matrix(value: np.ndarray) -> bool:
    matrix = np.asarray(value, dtype=float)
    return matrix.ndim == 2 and bool(np.all(np.isfinite(matrix)))


@validator(message='Only strictly ascending lists of non negative numbers are allowed.')
def is_ascending_list(value: np.ndarray) -> bool:
    """
    Validate if the given list is strictly ascending and non negative, e.g. a sweep of lambda values.

    :param np.ndarray value: The parsed list.
    """
    values = np.asarray(value, dtype=float)
    if values.ndim != 1 or values.size == 0:
        logging.getLogger(LOGGER_NAME).debug('is_ascending_list: shape %s', values.shape)
        return False
    return bool(values[0] >= 0.0 and np.all(np.diff(values) > 0.0))
