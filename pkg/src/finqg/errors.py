"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for every error raised by finqg."""


class DimensionMismatch(ToolkitError):
    """Coefficient vector or matrix has the wrong shape for the host."""


class SingularSystem(ToolkitError):
    """Linear system is rank-deficient and inconsistent beyond tolerance."""


class NotPowerBounded(ToolkitError):
    """ker(T - I) and ran(T - I) do not span; T cannot be Cesaro-averaged."""


class NoSolution(ToolkitError):
    """A defining linear system has no solution within tolerance."""


class NonUnique(ToolkitError):
    """A defining linear system has more than one solution."""


class HostMismatch(ToolkitError):
    """Functionals or elements live on different host algebras."""


class SingularGram(ToolkitError):
    """The Haar bilinear Gram matrix is singular (Haar data not faithful)."""


class NotIdempotent(ToolkitError):
    """Operation requires an idempotent state."""


class VerificationFailed(ToolkitError):
    """A post-condition did not hold within tolerance."""


class CrossCheckFailed(ToolkitError):
    """Two independent computation routes disagree beyond tolerance."""


class InconsistentClassification(ToolkitError):
    """Centrality and null-space Haar tests disagree."""


class NotGood(ToolkitError):
    """Element is not a good group-like projection."""


class NotAGroup(ToolkitError):
    """Cayley-table data violates a group axiom."""


class NotASubgroup(ToolkitError):
    """Subset is not closed as a subgroup."""


class InvalidK(ToolkitError):
    """Family parameter k out of range."""


class InvalidParameters(ToolkitError):
    """Named-functional parameters out of range."""


class ClosureExplosion(ToolkitError):
    """Lattice closure exceeded the configured element cap."""
