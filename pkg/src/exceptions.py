from typing import Any, Dict, Optional


class VChowError(ValueError):
    """Base error for every failure raised by the services."""

    code = "error"
    exit_code = 1

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"code": self.code, "message": self.message}
        payload.update(self.details)
        return payload


class ParseError(VChowError):
    code = "parse_error"
    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        super().__init__(message, line=line, column=column)
        self.line = line
        self.column = column

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"{self.message} (line {self.line}, column {self.column})"


class UnsupportedInputError(VChowError):
    code = "unsupported_input"
    exit_code = 3


class UnsupportedCharacteristicError(UnsupportedInputError):
    code = "unsupported_characteristic"


class LEqualsCharacteristicError(UnsupportedInputError):
    code = "l_equals_characteristic"


class SingularCurveError(UnsupportedInputError):
    code = "singular_curve"


class InvalidPlaceError(UnsupportedInputError):
    code = "invalid_place"


class InvalidKernelError(UnsupportedInputError):
    code = "invalid_kernel"


class NotPrimeError(UnsupportedInputError):
    code = "not_prime"


class ResourceBoundExceeded(VChowError):
    code = "bound_exceeded"
    exit_code = 4


class EnumerationBoundExceeded(ResourceBoundExceeded):
    code = "enumeration_bound_exceeded"


class CandidateCapExceeded(ResourceBoundExceeded):
    code = "candidate_cap_exceeded"


class UndeterminedResultError(VChowError):
    code = "undetermined"
    exit_code = 5


class ArithmeticDomainError(VChowError):
    code = "arithmetic_domain"


class ConsistencyError(VChowError):
    code = "consistency"
