"""
Uniform result envelope shared by every tool.

{"successful": bool, "data": {...}, "error": str, "error_type": "validation" | "internal"}
"""

import logging
from typing import Any, Dict, Optional

from src.errors import OrbifoldError

_logger = logging.getLogger(__name__)

# Bad input and violated preconditions; everything else is reported as internal
VALIDATION_ERRORS = (OrbifoldError, ValueError, PermissionError, FileNotFoundError)


def success(data: Dict[str, Any]) -> dict:
    return {"successful": True, "data": data}


def rejected(message: str, data: Optional[Dict[str, Any]] = None) -> dict:
    """A command that ran but whose input failed a check."""
    return {"successful": False, "data": data or {}, "error": message, "error_type": "validation"}


def failure(error: Exception) -> dict:
    if isinstance(error, VALIDATION_ERRORS):
        # KeyError quotes its message in str()
        message = error.args[0] if isinstance(error, KeyError) and error.args else str(error)
        return rejected(str(message) or type(error).__name__)
    _logger.exception("Internal error")
    return {
        "successful": False,
        "data": {},
        "error": f"{type(error).__name__}: {error}",
        "error_type": "internal",
    }
