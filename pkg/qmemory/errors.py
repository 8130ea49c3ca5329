# qmemory/errors.py
from typing import Optional

EXIT_OK = 0
EXIT_AUDIT_FAILURE = 1
EXIT_PARSE_ERROR = 2
EXIT_DIMENSION_ERROR = 3


class QmemError(Exception):
    """Base error. `exit_code` is what the CLI returns, `detail` what it prints."""

    exit_code: int = EXIT_DIMENSION_ERROR

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code

    def __str__(self) -> str:
        return f"{type(self).__name__}: {self.detail}"


class SpecParseError(QmemError):
    exit_code = EXIT_PARSE_ERROR


class DomainError(QmemError):
    exit_code = EXIT_DIMENSION_ERROR


class NonHermitian(DomainError):
    pass


class NotPositive(DomainError):
    pass


class BadSubsystemIndex(DomainError):
    pass


class IncompleteBasis(DomainError):
    pass


class NotAQubit(DomainError):
    pass


class NotTwoQubits(DomainError):
    pass


class DimensionMismatch(DomainError):
    pass


class DimTooLarge(DomainError):
    pass


class ParamOutOfRange(DomainError):
    pass


class NotApplicable(DomainError):
    pass
