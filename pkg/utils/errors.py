"""Error types shared by the services and the CLI."""


class ConstDiagImpossible(ValueError):
    """No symmetric Latin square with constant diagonal exists for odd order."""


class OddOrderUnsupported(ValueError):
    """Raised by constructions that need an even number of blocks."""


class CatalogExhausted(ValueError):
    """No Hadamard order in the catalog satisfies the request below the cap."""


class MatrixOverflowError(ArithmeticError):
    """Checked integer arithmetic would leave the 64-bit range."""


class NonConvergenceError(RuntimeError):

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class CertificationError(RuntimeError):
    """An algebraic closure operation produced a matrix that failed certification."""
