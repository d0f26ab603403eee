"""Exception hierarchy. Every domain error is a ValueError so callers can catch broadly."""


class DomainError(ValueError):
    """Base class for precondition and validation failures."""

    kind = "domain_error"


class GraphError(DomainError):
    kind = "malformed_graph"


class PartitionError(DomainError):
    kind = "invalid_partition"


class CapExceeded(DomainError):
    """An exact or exhaustive computation was asked to run beyond its size cap."""

    kind = "cap_exceeded"


class HypothesisFailed(DomainError):
    """A lemma's hypotheses do not hold for the supplied instance."""

    kind = "hypothesis_failed"


class BoundTooLarge(DomainError):
    kind = "bound_too_large"

    def __init__(self, message: str, steps: int):
        super().__init__(message)
        self.steps = steps
