"""Exception types shared across the seeder pipeline."""


class SeederError(Exception):
    """Base class for operational failures in the seeding pipeline."""


class UnsupportedClockError(SeederError):
    """No monotonic high-resolution clock is available on this platform."""


class StuckClockError(SeederError):
    """The clock never advanced while being probed."""


class NonMonotonicTimerError(SeederError):
    """The timer stepped backwards, or is not flagged monotonic."""


class InvalidConfigError(SeederError):
    """A collection config violates its bounds (samples, scale, stretch)."""


class EmptyTraceError(SeederError):
    """A trace with no samples was passed where deltas are required."""


class InsufficientEntropyError(SeederError):
    """The trace's distinct-delta count is below the quality floor.

    Raised before any seed material is produced; nothing is written.
    """


class InsufficientValuesError(SeederError):
    """A report holds fewer distinct values than the requested top-k."""


class EmptyInputError(SeederError):
    """No traces (or only empty traces) were given to aggregate."""


class WrongBlockSizeError(SeederError):
    """A statistical-test block is not exactly 20000 bits."""


class ShortStreamError(SeederError):
    """The byte stream ran dry before the requested block count.

    Carries the partial tally in ``partial`` so callers can still report it.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
