"""Exceptions shared across the workbench."""


class TwistedZhuError(Exception):
    """Base class for all workbench errors."""


class DivisionByZero(TwistedZhuError, ZeroDivisionError):
    """Inversion of the zero scalar."""


class ModulusMismatch(TwistedZhuError):
    """Arithmetic between cyclotomic scalars of different modulus."""


class WindowUnderflow(TwistedZhuError):
    """A coefficient outside the certified window of a series was requested."""


class InsufficientTable(TwistedZhuError):
    """A mode table does not cover a requested entry.

    Carries the missing (a, n, v) triples in ``missing``.
    """

    def __init__(self, missing):
        self.missing = list(missing)
        super().__init__(f"mode table misses entries: {self.missing}")


class AxiomViolation(TwistedZhuError):
    """A tabulated structure violates a defining axiom; carries a witness."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class SchemaError(TwistedZhuError):
    """A mode-file document does not match the expected schema."""


class NonhomogeneousWeight(TwistedZhuError):
    """A weight operator was applied where the grading is not defined."""


class NotAModule(TwistedZhuError):
    """Candidate module data fails the defining relations of the algebra."""


class NonDiagonalizable(TwistedZhuError):
    """Exact eigen-decomposition failed (irrational spectrum or nilpotent part)."""


class InvalidBox(TwistedZhuError):
    """A verification box is empty after applying hypothesis filters."""
