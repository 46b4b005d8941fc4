# -*- coding: utf-8 -*-

"""
Inline matrix literals in configuration files.

Matrices are written as YAML flow sequences of rows, e.g. ``[[-2.0, 0.5], [0.0, -1.0]]``, and vectors
as a single flow sequence, e.g. ``[1, 0.5, 0.25]``.
"""

import logging
from typing import Any

import numpy as np
from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError

LOGGER_NAME = 'MatrixLiterals'

_yaml = YAML(typ='safe', pure=True)


class Matrix:
    """
    Marker value type for configuration options holding an inline matrix literal.
    """


class FloatList:
    """
    Marker value type for configuration options holding a flat list of numbers.
    """


def _load(text: str) -> Any:
    try:
        return _yaml.load(text)
    except YAMLError as e:
        logging.getLogger(LOGGER_NAME).error('"%s" is not a valid literal: %s', text, e)
        raise ValueError('"{}" is not a valid literal.'.format(text))


def parse_matrix(text: str) -> np.ndarray:
    """Parses a row-list literal into a 2-D float array

    :param str text: The literal, e.g. ``[[1, 2], [3, 4]]``
    :return: The matrix
    :rtype: np.ndarray
    """
    value = _load(text)
    if not isinstance(value, list) or not value or not all(isinstance(row, list) and row for row in value):
        logging.getLogger(LOGGER_NAME).error('"%s" is not a list of rows.', text)
        raise ValueError('"{}" is not a list of rows.'.format(text))

    row_lengths = {len(row) for row in value}
    if len(row_lengths) != 1:
        logging.getLogger(LOGGER_NAME).error('The rows of "%s" have different lengths %s.', text, sorted(row_lengths))
        raise ValueError('The rows of "{}" have different lengths.'.format(text))

    try:
        return np.array(value, dtype=float)
    except (TypeError, ValueError):
        logging.getLogger(LOGGER_NAME).error('"%s" contains non numeric entries.', text)
        raise ValueError('"{}" contains non numeric entries.'.format(text))


def parse_float_list(text: str) -> np.ndarray:
    """Parses a flat list literal into a 1-D float array

    :param str text: The literal, e.g. ``[1, 2, 5]``
    :return: The values
    :rtype: np.ndarray
    """
    value = _load(text)
    if not isinstance(value, list) or not value or any(isinstance(item, list) for item in value):
        logging.getLogger(LOGGER_NAME).error('"%s" is not a flat list.', text)
        raise ValueError('"{}" is not a flat list.'.format(text))
    try:
        return np.array(value, dtype=float)
    except (TypeError, ValueError):
        logging.getLogger(LOGGER_NAME).error('"%s" contains non numeric entries.', text)
        raise ValueError('"{}" contains non numeric entries.'.format(text))


def format_matrix(matrix: np.ndarray) -> str:
    """Formats a matrix as a row-list literal readable by :func:`parse_matrix`."""
    rows = np.atleast_2d(np.asarray(matrix, dtype=float))
    return '[' + ', '.join('[' + ', '.join(repr(float(v)) for v in row) + ']' for row in rows) + ']'
