"""Exception hierarchy for ringsums."""

from __future__ import annotations


class RingSumsError(Exception):
    """Base class for every error raised by this package."""


class AxiomViolation(RingSumsError):
    """A multiplication table fails a ring axiom.

    ``kind`` is one of ``associativity``, ``distributivity``, ``identity``
    (or ``table`` for malformed input); ``witness`` is the offending triple.
    """

    def __init__(self, kind: str, witness: tuple[int, ...], detail: str = ""):
        self.kind = kind
        self.witness = witness
        msg = f"{kind} fails at {witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class SizeLimitExceeded(RingSumsError):
    pass


class RingMismatch(RingSumsError):
    """Elements of two different rings were combined."""


class LatticeLimitExceeded(RingSumsError):
    def __init__(self, limit: int, partial_count: int):
        self.limit = limit
        self.partial_count = partial_count
        super().__init__(
            f"ideal lattice exceeds {limit} ideals (reached {partial_count} before stopping)"
        )


class SideMismatch(RingSumsError):
    pass


class MaximalFamilyTooLarge(RingSumsError):
    def __init__(self, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(f"maximal family has {size} members, subset limit is {limit}")


class NotASubgroup(RingSumsError):
    pass


class InvariantViolation(RingSumsError):
    """A self-check that the mathematics guarantees has failed."""


class UniquenessViolation(InvariantViolation):
    """Two incomparable maximal ideals sit inside the same subgroup."""


class PremiseNotMet(RingSumsError):
    """The closed form needs the maximal family to be a minimal subset of itself."""


class DivisibilityViolation(InvariantViolation):
    pass


class NotSymmetricSet(RingSumsError):
    pass


class LoopsForbidden(RingSumsError):
    pass


class ConvergenceFailure(RingSumsError):
    pass


class MismatchReport(RingSumsError):
    """Two spectra disagree; ``mismatches`` lists the offending eigenvalues."""

    def __init__(self, mismatches: list):
        self.mismatches = list(mismatches)
        super().__init__(f"{len(self.mismatches)} eigenvalue mismatch(es): {self.mismatches[:5]}")


class SpecError(RingSumsError):
    """Malformed ring-spec, corpus, or config document."""
