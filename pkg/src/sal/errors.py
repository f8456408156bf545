"""Exception types raised across the package."""


class SalError(Exception):
    """Base class for every error raised by this package."""


class NonSquare(SalError, ValueError):
    pass


class NonSymmetric(SalError, ValueError):
    pass


class DimMismatch(SalError, ValueError):
    pass


class MalformedBlock(SalError, ValueError):
    pass


class DuplicatePairInTwoBlocks(SalError, ValueError):
    def __init__(self, i, j, block, other):
        self.pair = (i, j)
        self.blocks = (block, other)
        super().__init__(f"pair {{{i},{j}}} lies in blocks {block} and {other}")


class UncoveredPair(SalError, ValueError):
    def __init__(self, i, j):
        self.pair = (i, j)
        super().__init__(f"pair {{{i},{j}}} lies in no block")


class InvalidDimension(SalError, ValueError):
    pass


class InvalidOrder(SalError, ValueError):
    pass


class NotAPermutation(SalError, ValueError):
    pass


class AllParamsZero(SalError, ValueError):
    pass


class PointNotInBlock(SalError, ValueError):
    pass


class ExcludedBeta(SalError, ValueError):
    def __init__(self, beta, reason=""):
        self.beta = beta
        msg = f"beta={beta} is excluded"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class ClosureCapExceeded(SalError, RuntimeError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"group closure exceeded cap of {cap} elements")


class ParseError(SalError, ValueError):
    pass
