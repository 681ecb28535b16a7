# File: design/errors.py
# Description: Exception hierarchy shared by every package.


class DesignError(ValueError):
    """Base class for all errors raised by this project."""


class DesignFormatError(DesignError):
    """Malformed design or matrix text."""


class DesignStructureError(DesignError):
    """A design (or an operation's parameters) violates a structural requirement."""


class MatrixError(DesignError):
    """Dimension mismatch, bad field, or an incidence matrix that cannot be built."""


class EnumerationError(DesignError):
    """Inadmissible census parameters or an unusable checkpoint."""
