# -*- coding: utf-8 -*-

from typing import Callable, Any, Dict


class ValidationError(Exception):
    """
    Falsy result of a failed validator, keeping the validator, its message and the checked arguments.
    """

    def __init__(self, function: Callable, message: str, args: Dict[str, Any]):
        super().__init__(message)
        self.function = function
        self.message = message
        self.arguments = dict(args)

    def __repr__(self):
        return 'ValidationError(function={function}, message={message!r}, args={args})'.format(
            function=self.function.__name__,
            message=self.message,
            args=self.arguments,
        )

    def __str__(self):
        return self.message

    def __bool__(self):
        return False
