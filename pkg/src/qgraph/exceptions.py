"""Simple exceptions for QGraph application."""

from typing import Any, Optional


class QGraphError(Exception):
    """Base exception for QGraph application."""

    def __init__(self, message: str, error_code: str = "QG_ERROR", context: Optional[dict] = None):
        super().__init__(message)
        self.error_code = error_code
        self.context = context or {}


class ValidationError(QGraphError):
    """Exception for malformed input (shapes, ranges, graphs, check matrices)."""

    def __init__(self, message: str, validation_type: str = "unknown", invalid_value: Any = None):
        super().__init__(
            message,
            error_code=f"QG_VALIDATION_{validation_type.upper()}",
            context={"validation_type": validation_type, "invalid_value": str(invalid_value)}
        )
        self.validation_type = validation_type


class ComputationError(QGraphError):
    """Exception for algorithms that fail to reach their post-condition."""

    def __init__(self, message: str, processing_type: str = "unknown"):
        super().__init__(
            message,
            error_code=f"QG_PROCESSING_{processing_type.upper()}",
            context={"processing_type": processing_type}
        )


class VerificationError(QGraphError):
    """Exception for codes that fail Conditions 0-2 or the Knill-Laflamme check."""

    def __init__(self, message: str, violation: Any = None):
        super().__init__(
            message,
            error_code="QG_VERIFICATION_FAILED",
            context={"violation": violation} if violation is not None else {}
        )
        self.violation = violation


class SearchIncompleteError(QGraphError):
    """Exception for searches stopped by their time budget."""

    def __init__(self, message: str, partial: Any = None):
        super().__init__(message, error_code="QG_SEARCH_INCOMPLETE")
        self.partial = partial


# Backwards compatibility aliases
CatalogError = ValidationError
ConfigurationError = ValidationError
