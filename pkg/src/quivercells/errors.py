"""Shared exception types for cross-check failures and bad parameters."""


class VerificationError(AssertionError):
    """Two independently computed answers disagree."""


class GenericityError(ValueError):
    """A stability or deformation parameter fails the required genericity."""


class DichotomyError(AssertionError):
    """A point violates the expected vanishing pattern on a deleted edge."""


class DecomposableError(ValueError):
    """A representation expected to be indecomposable is not."""
