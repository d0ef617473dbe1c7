"""Exception types shared across the package."""


class ArbcyclesError(Exception):
    """Base class for errors raised by this package."""


class SnapshotFormatError(ArbcyclesError):
    """A snapshot record is malformed or violates a quote invariant."""


class WeightRangeError(ArbcyclesError):
    """Transformed integer weights would exceed the safe summation bound."""


class WitnessConsistencyError(ArbcyclesError):
    """A witness entry fails its defining identity during reconstruction."""
