"""Exception types shared across the package.

The CLI maps these onto exit codes: validation/argument/capacity problems
exit with 2, numerical failures with 3.
"""


class EmpskitError(Exception):
    """Base class for all errors raised by empskit."""


class ValidationError(EmpskitError, ValueError):
    """Input data violates a structural invariant (normalization, hermiticity, ...)."""


class ArgumentError(EmpskitError, ValueError):
    """A call argument is out of range or inconsistent (bad qubit index, size mismatch)."""


class CapacityError(EmpskitError):
    """Requested system size exceeds the supported 12-qubit (dim 4096) limit."""


class NumericError(EmpskitError, ArithmeticError):
    """A numerical routine failed to converge; the message reports the residual."""
