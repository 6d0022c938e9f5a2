"""Domain error hierarchy.

Every error carries a stable machine-readable ``code`` and the HTTP status
the API maps it to: validation failures are 422, missing resources 404,
state conflicts 409, storage faults 500.
"""

from __future__ import annotations


class DomainError(Exception):
    code = "DomainError"
    http_status = 422

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code


# -- validation (422) --------------------------------------------------------

class EmptyName(DomainError):
    code = "EmptyName"


class InvalidColor(DomainError):
    code = "InvalidColor"


class InvalidRange(DomainError):
    code = "InvalidRange"


class InvalidParameter(DomainError):
    code = "InvalidParameter"


class WrongDayCount(DomainError):
    code = "WrongDayCount"


class InconsistentActivities(DomainError):
    code = "InconsistentActivities"


class DegenerateCanvas(DomainError):
    code = "DegenerateCanvas"


class InvalidLayoutConfig(DomainError):
    code = "InvalidLayoutConfig"


class InfeasiblePersona(DomainError):
    code = "InfeasiblePersona"


# -- missing resources (404) -------------------------------------------------

class UnknownActivity(DomainError):
    code = "UnknownActivity"
    http_status = 404


class UnknownGoal(DomainError):
    code = "UnknownGoal"
    http_status = 404


class UnknownInterval(DomainError):
    code = "UnknownInterval"
    http_status = 404


# -- state conflicts (409) ---------------------------------------------------

class DuplicateName(DomainError):
    code = "DuplicateName"
    http_status = 409


class DuplicateOrder(DomainError):
    code = "DuplicateOrder"
    http_status = 409


class OverlapSameActivity(DomainError):
    code = "OverlapSameActivity"
    http_status = 409


class ClockRegression(DomainError):
    code = "ClockRegression"
    http_status = 409


class NotActive(DomainError):
    code = "NotActive"
    http_status = 409


class AlreadyActive(DomainError):
    code = "AlreadyActive"
    http_status = 409


# -- persistence (500 if ever surfaced over HTTP) ----------------------------

class IoFailure(DomainError):
    code = "IoFailure"
    http_status = 500


class ParseError(DomainError):
    code = "ParseError"
    http_status = 500


class SchemaViolation(DomainError):
    code = "SchemaViolation"
    http_status = 500


class UnsupportedVersion(DomainError):
    code = "UnsupportedVersion"
    http_status = 500
