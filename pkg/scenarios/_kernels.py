# -*- coding: utf-8 -*-

"""
Named functions on [0, 1] used as convolution kernels, control profiles and functional densities.
"""

import logging
from typing import Callable, Dict

import numpy as np

from scenarios import LOGGER_NAME

Kernel = Callable[[np.ndarray], np.ndarray]

KERNELS: Dict[str, Kernel] = {
    'zero': lambda x: np.zeros_like(x, dtype=float),
    'one': lambda x: np.ones_like(x, dtype=float),
    'linear': lambda x: np.asarray(x, dtype=float),
    'exp-decay': lambda x: np.exp(-np.asarray(x, dtype=float)),
    'cosine': lambda x: np.cos(np.pi * np.asarray(x, dtype=float)),
}


def kernel(name: str, scale: float = 1.0) -> Kernel:
    """The named function multiplied by scale"""
    if name not in KERNELS:
        logging.getLogger(LOGGER_NAME).error('Unknown kernel %s, known kernels are %s.', name, ', '.join(KERNELS))
        raise ValueError('Unknown kernel {}, known kernels are {}.'.format(name, ', '.join(KERNELS)))
    function = KERNELS[name]
    return lambda x: scale * function(x)


def sample(function: Kernel, nodes: np.ndarray) -> np.ndarray:
    values = np.broadcast_to(np.asarray(function(nodes), dtype=float), nodes.shape).copy()
    if not np.all(np.isfinite(values)):
        logging.getLogger(LOGGER_NAME).error('The kernel is not bounded on the grid.')
        raise ValueError('The kernel is not bounded on the grid.')
    return values
