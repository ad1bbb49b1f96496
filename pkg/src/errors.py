"""Exception hierarchy shared by all modules."""

from pathlib import Path
from typing import Optional


class NetInferError(Exception):
    """Base exception for netinfer errors."""
    pass


class InputError(NetInferError):
    """Raised when arguments or configuration values are invalid."""
    pass


class ParseError(InputError):
    """Raised when a graph or config file cannot be parsed."""

    def __init__(self, message: str, path: Optional[Path] = None, line_number: Optional[int] = None):
        self.path = path
        self.line_number = line_number
        location = ""
        if path is not None:
            location = f"{path}"
            if line_number is not None:
                location += f":{line_number}"
            location += ": "
        super().__init__(f"{location}{message}")


class ValidationError(InputError):
    """Raised when well-formed input violates a domain rule."""
    pass


class OutputError(NetInferError):
    """Raised when results cannot be written."""
    pass
