"""Exception types raised across the package."""


class HypermomentError(Exception):
    """Base class for every error raised by hypermoment."""


class RankMismatch(HypermomentError, ValueError):
    pass


class OrderMismatch(HypermomentError, ValueError):
    pass


class DominanceViolation(HypermomentError, ValueError):
    """beta is not componentwise below alpha."""


class CoefficientUnavailable(HypermomentError, IndexError):
    """A recurrence coefficient was requested beyond a custom table's n_max."""


class InvalidSpec(HypermomentError, ValueError):
    """A recurrence specification breaks the polynomial hypergroup axioms."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class NegativeLinearization(HypermomentError, ArithmeticError):
    """A linearization coefficient c(n, m, k) came out negative."""

    def __init__(self, n, m, k, weight):
        super().__init__(f"c({n},{m},{k}) = {weight} < 0: not a hypergroup")
        self.n, self.m, self.k, self.weight = n, m, k, weight


class UnknownCatalogEntry(HypermomentError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown catalog entry"


class ExpNonzeroConstant(HypermomentError, ValueError):
    pass


class IncompleteSeed(HypermomentError, ValueError):
    """Multi-indexed data is missing entries; ``missing`` lists them."""

    def __init__(self, missing):
        self.missing = list(missing)
        shown = ", ".join(str(list(a)) for a in self.missing)
        super().__init__(f"missing values for multi-indices: {shown}")


class TableRangeExceeded(HypermomentError, IndexError):
    pass
