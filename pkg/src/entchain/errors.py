"""Exception hierarchy.

Input problems derive from :class:`ValidationError` (CLI exit code 2),
numerical failures from :class:`NumericalError` (CLI exit code 3).
"""


class EntChainError(Exception):
    pass


class ValidationError(EntChainError, ValueError):
    pass


class NumericalError(EntChainError, ArithmeticError):
    pass


class NonHermitianInput(ValidationError):
    pass


class NegativeEigenvalue(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass


class UnnormalizedState(ValidationError):
    pass


class FormViolation(ValidationError):
    def __init__(self, entries):
        self.entries = list(entries)
        listing = ", ".join(f"rho[{i + 1},{j + 1}]={v:.3g}" for i, j, v in self.entries)
        super().__init__(f"density matrix lacks the required sparsity pattern; offending entries: {listing}")


class OutOfRange(ValidationError):
    pass


class ConstraintViolation(ValidationError):
    pass


class BadNormalization(ValidationError):
    pass


class InvalidTuple(ValidationError):
    pass


class TooLarge(ValidationError):
    pass


class RelaxedModeUnsupported(ValidationError):
    pass


class InvalidParameters(ValidationError):
    pass


class NoConvergence(NumericalError):
    pass


class NoRoot(NumericalError):
    pass
