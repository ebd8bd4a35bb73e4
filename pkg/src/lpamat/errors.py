"""Exception types shared across the library.

Every error raised on purpose by this package derives from
:class:`GraphAlgebraError`, so callers (and the CLI) can distinguish
domain failures from genuine bugs.
"""


class GraphAlgebraError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(GraphAlgebraError):
    """Input graph or matrix failed to parse or validate."""


class NotHereditarySaturated(GraphAlgebraError):
    """A vertex set required to be hereditary and saturated is not."""


class NotStronglyConnected(GraphAlgebraError):
    """Operation requires a strongly connected graph."""


class NotAperiodic(GraphAlgebraError):
    """Operation requires an aperiodic graph."""


class NotInLattice(GraphAlgebraError):
    """A vertex set is not a member of the hereditary saturated lattice."""


class NotACycle(GraphAlgebraError):
    """An edge sequence does not form a vertex-simple cycle of the graph."""


class HasSink(GraphAlgebraError):
    """Operation requires every vertex to emit at least one edge."""


class SinkCannotExpand(GraphAlgebraError):
    """A sink generator has no defining relation to expand with."""


class GeneratorAbsent(GraphAlgebraError):
    """The requested generator does not occur in the monoid element."""


class TooLarge(GraphAlgebraError):
    """Requested enumeration exceeds the configured size cap."""
