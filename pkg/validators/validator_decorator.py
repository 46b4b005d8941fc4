# -*- coding: utf-8 -*-

import inspect
from typing import Callable, Dict, Any

from decorator import decorator

from validators.validation_error import ValidationError


def func_args_as_dict(func: Callable, args, kwargs) -> Dict[str, Any]:
    """
    Return the positional and key value arguments of a call as a dictionary keyed by parameter name.
    """
    parameter_names = inspect.getfullargspec(func).args
    arguments = dict(zip(parameter_names, args))
    arguments.update(kwargs)
    return arguments


@decorator
def validator(function, message=None, *args, **kwargs):
    """
    A decorator that makes given function a validator.

    The decorated function returns ``True`` when the value is valid and a falsy
    :class:`ValidationError` otherwise, so validators can be used directly in ``if`` tests while still
    carrying the reason of the failure.

    Example::

        >>> @validator(message='Only exponents in [1, 2) are allowed.')
        ... def is_alpha_exponent(value: str) -> bool:
        ...     return 1.0 <= float(value) < 2.0

        >>> is_alpha_exponent('1.5')
        True

        >>> is_alpha_exponent('2')
        ValidationError(function=is_alpha_exponent, message='Only exponents in [1, 2) are allowed.', args={'value': '2'})

    :param Callable function: The function to decorate
    :param str message: The validation error message
    :param args: positional function arguments
    :param kwargs: key value function arguments
    """
    result = function(*args, **kwargs)
    if not result:
        if message is None:
            message = 'Not valid according to the "{}" validator.'.format(function.__name__)
        return ValidationError(function, message, func_args_as_dict(function, args, kwargs))
    return True
