"""Exception types shared across the package."""


class SemigroupError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(SemigroupError):
    pass


class NotFullRank(SemigroupError):
    """Generators span a proper subspace; re-embed in lower dimension first."""


class NotSimplicial(SemigroupError):
    """Number of extremal rays differs from the rank of the generator span."""


class RayMismatch(SemigroupError):
    """A supposed ray element is not a positive multiple of the expected ray."""


class NotInCone(SemigroupError):
    pass


class NotClosed(SemigroupError):
    """A gap decomposes as a sum of two nonzero non-gaps.

    Carries the offending gap and the violating decomposition.
    """

    def __init__(self, gap, left, right):
        self.gap = gap
        self.left = left
        self.right = right
        super().__init__(f"gap {gap} = {left} + {right} with both parts in the semigroup")


class NotMultset(SemigroupError):
    pass


class NotAntichain(SemigroupError):
    pass


class NotVerified(SemigroupError):
    """Generator input could not be certified as a finite-complement semigroup.

    ``proven_negative`` is True when a necessary condition failed (the input is
    definitely not a finite-complement semigroup), False when the region scan
    ran out of budget without a verdict.
    """

    def __init__(self, k_max, reason, proven_negative=False):
        self.k_max = k_max
        self.reason = reason
        self.proven_negative = proven_negative
        super().__init__(f"not verified up to k_max={k_max}: {reason}")


class NotMinimalElement(SemigroupError):
    pass


class PFEqualsGaps(SemigroupError):
    """Raised when a witness is requested but every gap is pseudo-Frobenius."""


class PreconditionFailed(SemigroupError):
    pass


class NonIntegralRelation(SemigroupError):
    """The Betti-number relation failed to divide exactly; internal bug."""


class InternalInconsistency(SemigroupError):
    """Two provably equivalent criteria disagreed; internal bug."""


class ResourceLimit(SemigroupError):
    def __init__(self, size, diagnostics=""):
        self.size = size
        self.diagnostics = diagnostics
        super().__init__(f"resource cap exceeded: {size} ({diagnostics})")


class NotInBoth(SemigroupError):
    """Gluing element fails to factor in one of the two parts."""


class LatticeMismatch(SemigroupError):
    """Group intersection differs from the proposed gluing lattice."""

    def __init__(self, actual_basis):
        self.actual_basis = actual_basis
        super().__init__(f"group intersection has basis {actual_basis}")


class ValidationError(SemigroupError):
    """Instance-file schema violation; ``where`` is a JSON path."""

    def __init__(self, message, where="$"):
        self.where = where
        super().__init__(f"{where}: {message}")
