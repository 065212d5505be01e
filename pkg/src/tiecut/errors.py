"""Exception types raised across the package.

Every anticipated failure mode maps to one subclass of
:class:`TiecutError` so callers (and the command-line driver) can
distinguish bad inputs from genuine bugs.  Precondition violations on
programmer-facing contracts (mismatched lengths, i == j) raise plain
:class:`ValueError` instead.
"""


class TiecutError(Exception):
    """Base class for all package-specific failures."""


class ConfigError(TiecutError):
    """A configuration object failed validation."""


class DegenerateSplitError(TiecutError):
    """A threshold left the high or low weight group empty, so the
    unit-conversion factor is undefined there."""


class EmptyGraphError(TiecutError):
    """An operation needs at least one positive weight but the graph
    has none."""


class NoGiantComponentError(TiecutError):
    """No threshold produces a component covering the requested
    fraction of nodes."""


class UndefinedDiameterError(TiecutError):
    """The graph has no connected pair, so diameters are undefined."""


class CollinearDesignError(TiecutError):
    """The regression design matrix is rank deficient (for example a
    constant network predictor from an empty binary graph)."""


class UnrealizableCorrelationError(TiecutError):
    """A nonzero indegree correlation was requested but the indegree
    sequence has zero variance."""


class MissingCellError(TiecutError):
    """Every cell needed by an aggregation step was recorded missing."""


class LoadError(TiecutError):
    """A data file failed to parse; the message carries the offending
    location."""
