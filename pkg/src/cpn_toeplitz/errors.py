"""Exception hierarchy shared by all modules."""


class CPNError(Exception):
    """Base class for every error raised by this package."""


class ParamError(CPNError, ValueError):
    """Invalid (n, m), multi-index, quadrature size or dimension overflow."""


class SymbolSyntaxError(CPNError, ValueError):
    """Symbol text does not match the grammar.

    ``offset`` is the byte offset (UTF-8) into the source text.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class EvaluationError(CPNError, ArithmeticError):
    """A symbol could not be evaluated (pole, domain error, non-finite value)."""


class NotRadialError(CPNError, ValueError):
    """A separately radial symbol was required."""


class NotHermitianError(CPNError, ValueError):
    pass


class ConvergenceError(CPNError, ArithmeticError):
    pass


class GeometryError(CPNError, ValueError):
    """Point outside the dense chart region (some coordinate zero) or bad orbit radii."""
