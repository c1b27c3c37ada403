"""Exception types shared across the toolkit."""

from __future__ import annotations


class MalcevError(Exception):
    """Base class for all toolkit errors."""


class AlgebraMismatch(MalcevError):
    """Operands belong to different algebra instances."""


class NotHomogeneous(MalcevError):
    """A graded operation received an element of mixed parity."""


class GradingError(MalcevError):
    """Data violates the Z2-grading (table entry or operator block)."""


class ArityError(MalcevError):
    """Wrong number of arguments for a named multilinear function."""


class VerificationError(MalcevError):
    """A verified precondition failed (the witness explains where)."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class HypothesisViolated(MalcevError):
    """A nonzero homogeneous element annihilates the embedded subalgebra."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class LieComponent(MalcevError):
    """Greedy decomposition exhausted its operator witnesses before the
    carrier was covered; the unreached part behaves like a Lie module."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class FactorizationError(MalcevError):
    """Base class for failures inside the tensor factorization engine."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class CentroidViolation(FactorizationError):
    """A candidate coordinate operator fails the centroid relations."""


class NotClosed(FactorizationError):
    """Composition of coordinate operators left their span."""


class NotSupercommutative(FactorizationError):
    """Two coordinate operators fail the (super)commutativity law."""


class DimensionMismatch(FactorizationError):
    """dim(host) != 7 * dim(coordinate algebra)."""


class IsoCheckFailed(FactorizationError):
    """The assembled tensor map is not bijective or not multiplicative."""


class BundleFormatError(MalcevError):
    """Malformed bundle document (parse error or invariant violation)."""

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
