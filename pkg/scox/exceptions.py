"""
Custom Exceptions for scox

Every error raised by the library carries an HTTP status code for the API
and an exit code for the command line.
"""
from typing import Optional


class ScoxException(Exception):
    """Base exception for all scox errors"""

    exit_code = 1

    def __init__(
        self,
        message: str,
        status_code: int = 500,
        error_code: Optional[str] = None,
        details: Optional[dict] = None
    ):
        self.message = message
        self.status_code = status_code
        self.error_code = error_code or self.__class__.__name__
        self.details = details or {}
        super().__init__(self.message)

    def to_dict(self):
        """Convert exception to API response format"""
        return {
            "error": self.error_code,
            "message": self.message,
            "details": self.details,
            "status_code": self.status_code
        }


class ValidationError(ScoxException):
    """Malformed system, subset, word, expression or web input"""

    def __init__(self, message: str, field: Optional[str] = None, details: Optional[dict] = None):
        super().__init__(
            message=message,
            status_code=400,
            error_code="VALIDATION_ERROR",
            details={"field": field, **(details or {})}
        )


class CapabilityError(ScoxException):
    """Element arithmetic requested on an infinite Coxeter system"""

    def __init__(self, message: str, system: Optional[str] = None):
        super().__init__(
            message=message,
            status_code=422,
            error_code="CAPABILITY_ERROR",
            details={"system": system}
        )


class DomainError(ScoxException):
    """Operation outside its mathematical domain (non-finitary subset, impossible extension)"""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(
            message=message,
            status_code=422,
            error_code="DOMAIN_ERROR",
            details=details
        )


class UsageError(ScoxException):
    """Incompatible arguments: mixed systems, endpoint mismatch, unknown format"""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(
            message=message,
            status_code=400,
            error_code="USAGE_ERROR",
            details=details
        )


class NoRotationError(ScoxException):
    """The switchback context (J, s, t) has a unique reduced expression"""

    def __init__(self, message: str, context: Optional[dict] = None):
        super().__init__(
            message=message,
            status_code=422,
            error_code="NO_ROTATION",
            details=context
        )


class StaleRedexError(ScoxException):
    """A relation instance no longer matches the expression it is applied to"""

    def __init__(self, message: str, position: Optional[int] = None, kind: Optional[str] = None):
        super().__init__(
            message=message,
            status_code=409,
            error_code="STALE_REDEX",
            details={"position": position, "kind": kind}
        )


class NoMatchError(ScoxException):
    """A web relation does not match at the requested site"""

    def __init__(self, message: str, relation: Optional[str] = None, at: Optional[int] = None):
        super().__init__(
            message=message,
            status_code=422,
            error_code="NO_MATCH",
            details={"relation": relation, "at": at}
        )


class ResourceBoundError(ScoxException):
    """A configured search or enumeration bound was exceeded"""

    exit_code = 2

    def __init__(self, message: str, bound_name: Optional[str] = None, limit: Optional[int] = None):
        super().__init__(
            message=message,
            status_code=413,
            error_code="RESOURCE_BOUND_EXCEEDED",
            details={"bound": bound_name, "limit": limit}
        )


class InvariantViolation(ScoxException):
    """An internal cross-check failed; indicates a bug, never bad input"""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(
            message=message,
            status_code=500,
            error_code="INVARIANT_VIOLATION",
            details=details
        )
