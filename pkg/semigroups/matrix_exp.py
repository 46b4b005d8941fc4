# -*- coding: utf-8 -*-

import numpy as np
import scipy.linalg

from operators.lin_op import LinOp
from semigroups._base import _SemigroupModelBase
from utils.numerical_errors import SpaceMismatch


class MatrixExp(_SemigroupModelBase):
    """
    T(t) = exp(tA) for a bounded generator matrix A, by scaling and squaring.
    """

    name = 'MatrixExp'

    description = 'Matrix exponential of a generator matrix.'

    def __init__(self, a: LinOp):
        super().__init__(a.domain)

        if not a.is_square:
            self.logger.error('The generator %s is not square.', a)
            raise SpaceMismatch('MatrixExp', 'The generator {} is not square.'.format(a))
        self.a = a

    def _evaluate(self, t: float) -> np.ndarray:
        if t == 0.0:
            return np.eye(self.space.dim)
        return scipy.linalg.expm(t * self.a.matrix)

    def _generator(self) -> np.ndarray:
        return self.a.matrix
