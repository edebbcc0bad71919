"""Exception hierarchy shared by all modules."""


class DeepCommutingError(Exception):
    """Base class for library errors."""


class InvalidWord(DeepCommutingError, ValueError):
    pass


class BudgetExceeded(DeepCommutingError):
    """A configured size or time budget was hit before the computation finished."""


class NonCentralKernel(DeepCommutingError):
    pass


class InvalidSpec(DeepCommutingError, ValueError):
    pass


class InvalidParams(DeepCommutingError, ValueError):
    pass


class Unsupported(DeepCommutingError):
    pass


class NotCoprime(InvalidSpec):
    pass


class CapExceeded(DeepCommutingError):
    pass


class UnknownVertex(DeepCommutingError, KeyError):
    pass


class ArityMismatch(DeepCommutingError, ValueError):
    pass


class BadBijection(DeepCommutingError, ValueError):
    pass
