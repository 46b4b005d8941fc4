# -*- coding: utf-8 -*-

"""
Exceptions raised by the numerical layers.

Every error keeps the name of the failing function, a human readable message and the arguments that
triggered it, and maps onto the process exit code used by the scenario runner.
"""

from typing import Any, Dict

# Exit code for a configuration error
EXIT_CODE_CONFIG_ERROR = 1

# Exit code for a failed hypothesis
EXIT_CODE_HYPOTHESIS_FAILED = 2

# Exit code for a numerical failure
EXIT_CODE_NUMERICAL_FAILURE = 3


class NumericalError(Exception):
    """
    Base class for all numerical errors.
    """

    exit_code = EXIT_CODE_NUMERICAL_FAILURE

    def __init__(self, function: str, message: str, **kwargs: Any):
        super().__init__(message)
        self.function = function
        self.message = message
        self.details: Dict[str, Any] = dict(kwargs)

    def __repr__(self):
        return '{name}(function={function}, message={message}, details={details})'.format(
            name=self.__class__.__name__,
            function=self.function,
            message=self.message,
            details=self.details,
        )

    def __str__(self):
        return self.message

    def __bool__(self):
        return False


class SingularResolvent(NumericalError):
    pass


class DivergentSeries(NumericalError):
    pass


class DivergentIteration(NumericalError):
    pass


class NegativeTime(NumericalError):
    pass


class NotRescaled(NumericalError):
    pass


class NonDecayingTail(NumericalError):
    pass


class SingularBVP(NumericalError):
    pass


class NotPositiveOperator(NumericalError):
    pass


class EmbeddingMismatch(NumericalError):
    exit_code = EXIT_CODE_CONFIG_ERROR


class SpaceMismatch(NumericalError):
    exit_code = EXIT_CODE_CONFIG_ERROR


class BadAlpha(NumericalError):
    exit_code = EXIT_CODE_CONFIG_ERROR


class HypothesisFailed(NumericalError):
    """
    A hypothesis of one of the perturbation theorems does not hold.

    ``hypothesis`` names the failed condition, e.g. ``'spectral_radius'``.
    """

    exit_code = EXIT_CODE_HYPOTHESIS_FAILED

    def __init__(self, function: str, message: str, hypothesis: str, **kwargs: Any):
        super().__init__(function, message, hypothesis=hypothesis, **kwargs)
        self.hypothesis = hypothesis


class DominationViolated(NumericalError):
    exit_code = EXIT_CODE_HYPOTHESIS_FAILED


class InconsistentRepresentations(NumericalError):
    exit_code = EXIT_CODE_HYPOTHESIS_FAILED
