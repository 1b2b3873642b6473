"""Exception types shared across the library."""


class CatlabError(Exception):
    """Base class for all catlab errors."""


class NotHermitian(CatlabError):
    """Matrix handed to a Hermitian-only routine is not Hermitian within tolerance."""


class NegativeEigenvalue(CatlabError):
    """A spectrum entry is more negative than the numerical clamp window allows."""


class ResolutionTooCoarse(CatlabError):
    """Classical sampling grid is coarser than the partition it must resolve."""


class SymbolOutOfRange(CatlabError):
    """A word contains a symbol outside the partition alphabet."""


class BudgetExceeded(CatlabError):
    """Requested computation would exceed the configured size or memory budget."""


class ShapeMismatch(CatlabError):
    """Operands describe incompatible partitions, word lengths, or dimensions."""


class ConfigInvalid(CatlabError):
    """Experiment configuration failed validation."""
