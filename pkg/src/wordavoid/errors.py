"""Exception types shared across the package."""


class WordError(ValueError):
    """Base class for every error raised by wordavoid."""


class NotLinear(WordError):
    pass


class NotProlongable(WordError):
    pass


class NonStabilizing(WordError):
    pass


class NotPrimitive(WordError):
    pass


class SearchBudgetExceeded(WordError):
    def __init__(self, nodes, best_length=None):
        super().__init__(f"search exceeded node cap after {nodes} nodes")
        self.nodes = nodes
        self.best_length = best_length


class CapExceeded(WordError):
    pass


class ParikhClassViolation(WordError):
    pass


class HypothesisViolated(WordError):
    def __init__(self, clause):
        super().__init__(f"hypothesis violated: {clause}")
        self.clause = clause
