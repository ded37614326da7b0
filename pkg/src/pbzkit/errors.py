"""Exception hierarchy shared by every module of the workbench."""

from __future__ import annotations


class AlgebraError(Exception):
    """Base class for all errors raised by pbzkit."""


class MalformedAlgebra(AlgebraError):
    """The tables do not describe a structure of the declared kind."""


class SignatureMismatch(AlgebraError):
    """An operation was requested that the algebra's signature lacks."""


class SignatureError(SignatureMismatch):
    """A term uses a symbol that is illegal in the chosen signature."""


class PreconditionFailed(AlgebraError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotQuasiStone(PreconditionFailed):
    pass


class NotWeakLukasiewicz(PreconditionFailed):
    pass


class NotDistributivePBZ(PreconditionFailed):
    pass


class NotDeMorgan(PreconditionFailed):
    pass


class NotACongruence(AlgebraError):
    pass


class CapExceeded(AlgebraError):
    """An exhaustive search would exceed the configured size limits."""


class UnknownName(AlgebraError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class ParseError(AlgebraError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnboundVariable(AlgebraError):
    pass


class VariableSplitError(AlgebraError):
    pass


class FormatError(AlgebraError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line
