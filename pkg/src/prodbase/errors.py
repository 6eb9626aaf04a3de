"""Exception types shared across the package."""


class ProdbaseError(Exception):
    """Base class for every error raised by this package."""


class InputError(ProdbaseError):
    """Malformed or out-of-range input."""


class DegreeMismatch(InputError):
    pass


class MalformedGenerator(InputError):
    pass


class NotASubgroup(InputError):
    pass


class UnfaithfulAction(InputError):
    pass


class NotTransitive(InputError):
    pass


class BudgetExhausted(ProdbaseError):
    """A configured search or size budget was exceeded."""


class OrderExceedsBound(BudgetExhausted):
    pass


class IndexTooLarge(BudgetExhausted):
    pass


class PointBudgetExceeded(BudgetExhausted):
    pass


class NoSaxlGraph(InputError):
    """Raised when the group has no base of size two."""


class ConsistencyError(ProdbaseError):
    """An internal cross-check failed; indicates a bug or a false theorem instance."""
