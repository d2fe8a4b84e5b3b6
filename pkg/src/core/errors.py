"""
Exception hierarchy for quadforge.

Library code raises these; only the command-line shell turns them into
messages and exit codes.
"""

from typing import List, Optional


class QuadforgeError(Exception):
    """Base class for every error raised by quadforge."""


class InvalidMapError(QuadforgeError, ValueError):
    """
    Raised when a map violates the embedded-quadrangulation invariants.

    Attributes:
        violations: Human-readable list of the violated invariants.
    """

    def __init__(self, violations: List[str], message: Optional[str] = None):
        self.violations = list(violations)
        super().__init__(message or "invalid map: " + "; ".join(self.violations))


class InvalidWalkError(QuadforgeError, ValueError):
    """Raised for a split walk whose darts do not sit at its vertex."""


class InvalidContractionError(QuadforgeError):
    """Raised when a face contraction does not yield a valid quadrangulation."""


class ColouringError(QuadforgeError, ValueError):
    """Raised for colourings that are not proper or leave a colour class empty."""


class ConfigError(QuadforgeError, ValueError):
    """Raised for inconsistent run configurations."""


class FormatError(QuadforgeError):
    """Base class for file format problems."""


class MQFormatError(FormatError):
    """
    Raised when an MQ record cannot be parsed.

    Attributes:
        line_no: 1-based line number in the input, when known.
    """

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(prefix + message)


class PlanarCodeError(FormatError):
    """Raised when a planar_code stream is malformed."""


class FormatRestrictionError(FormatError):
    """Raised when a map cannot be expressed in the requested format."""


class CensusConsistencyError(QuadforgeError):
    """Raised when a census breaks one of its counting identities."""
