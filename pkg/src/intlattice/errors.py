"""Exception hierarchy shared by every module."""


class LatticeError(Exception):
    """Base class for all errors raised by intlattice."""


class DimensionMismatch(LatticeError, ValueError):
    pass


class NotContained(LatticeError):
    pass


class NotSaturated(LatticeError):
    pass


class NotIsotropic(LatticeError):
    pass


class NotUnimodular(LatticeError):
    pass


class NotPositiveDefinite(LatticeError):
    pass


class NotAPolarization(LatticeError):
    pass


class SingularMatrix(LatticeError):
    pass


class HypothesisFailed(LatticeError):
    """A checker's precondition does not hold; ``hypothesis`` names which one."""

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        self.detail = detail
        super().__init__(f"{hypothesis}: {detail}" if detail else hypothesis)


class BadParameters(LatticeError, ValueError):
    pass


class NotACycle(LatticeError):
    pass
