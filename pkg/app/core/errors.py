class AlgebraError(Exception):
    """Base class for every error raised by the algebraic kernel."""


class DivisionByZero(AlgebraError, ZeroDivisionError):
    pass


class PoleError(AlgebraError):
    """A rational function was evaluated at a zero of its denominator."""


class MissingParameter(AlgebraError):
    pass


class SingularMatrix(AlgebraError):
    pass


class SizeMismatch(AlgebraError):
    pass


class NotHomogeneous(AlgebraError):
    pass


class BadSequence(AlgebraError):
    pass


class ZeroModeError(AlgebraError):
    pass


class ArityError(AlgebraError):
    pass


class RandomModeExhausted(Exception):
    """Every resampling attempt of a random-mode point hit a pole."""


class IllegalGenerator(AlgebraError):
    """A generator symbol has no image under the chosen morphism."""
