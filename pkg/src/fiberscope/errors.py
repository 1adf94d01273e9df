"""Typed error hierarchy shared across the package.

Every failure mode that callers are expected to handle is a subclass of
FiberscopeError; parsers and math routines raise these instead of bare
ValueError so the CLI and server can map them to exit codes / HTTP status
codes uniformly.
"""


class FiberscopeError(Exception):
    """Base class for all typed errors raised by this package."""


# --- TRK parsing / writing ---------------------------------------------------

class BadMagic(FiberscopeError):
    """File does not start with the TRACK id string."""


class BadHeaderSize(FiberscopeError):
    """Header size field is not 1000."""


class Truncated(FiberscopeError):
    """A record declares more bytes than the stream contains."""


class CountOverflow(FiberscopeError):
    """Scalar or property count outside the 0..10 header layout."""


class TooManyFields(FiberscopeError):
    """Geometry carries more scalars/properties than the header can hold."""


class NameTooLong(FiberscopeError):
    """Field name does not fit the fixed 20-byte header slot."""


# --- VTP parsing -------------------------------------------------------------

class UnsupportedEncoding(FiberscopeError):
    """Appended/compressed data or another feature outside the subset."""


class MalformedXml(FiberscopeError):
    """Input is not well-formed XML or lacks the expected structure."""


class InconsistentOffsets(FiberscopeError):
    """Line offsets are not strictly increasing or point past the data."""


class ArityMismatch(FiberscopeError):
    """Attribute array length disagrees with the point or cell count."""


# --- metadata / cohort scanning ----------------------------------------------

class MissingIdColumn(FiberscopeError):
    """Metadata CSV header has no subject-id column."""


class DuplicateSubjectId(FiberscopeError):
    """Metadata CSV contains the same subject id twice."""


class NoMatches(FiberscopeError):
    """Cohort scan found no files matching the naming pattern."""


# --- statistics --------------------------------------------------------------

class DegenerateFiber(FiberscopeError):
    """Fiber has fewer than two points."""


class InvalidRange(FiberscopeError):
    """Normalization range has min > max."""


class EmptyCohort(FiberscopeError):
    """An operation requiring at least one cluster got none."""


class UnknownAxis(FiberscopeError):
    """Requested axis is not a known scalar or property field."""


# --- projection --------------------------------------------------------------

class AxisMissing(FiberscopeError):
    """A fingerprint lacks an axis required by the distance metric."""


class NotSymmetric(FiberscopeError):
    """Distance matrix is not symmetric."""


class NegativeEntry(FiberscopeError):
    """Distance matrix contains a negative entry."""


class BadK(FiberscopeError):
    """Pivot count outside 1..n."""


class NoConvergence(FiberscopeError):
    """Eigensolver failed to converge."""


class LengthMismatch(FiberscopeError):
    """Two point sets that must be paired have different lengths."""


class BadRect(FiberscopeError):
    """Brush rectangle is not well-ordered."""


# --- server / CLI ------------------------------------------------------------

class UnknownSubject(FiberscopeError):
    """Subject id is not part of the loaded cohort."""


class PortInUse(FiberscopeError):
    """Requested server port is already bound."""


class AllValuesNaNWarning(UserWarning):
    """A statistics field contained only NaN samples and was dropped."""
