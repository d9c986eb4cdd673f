"""Exception types shared across the package."""


class CapabilityError(ValueError):
    """A structural limit of the implementation was exceeded.

    Raised when a request is well-formed but outside what this code is built
    to handle (e.g. principal-minor enumeration beyond the dimension cap),
    as opposed to a plain invalid argument.
    """


class ConvergenceError(RuntimeError):
    """An iterative numerical method failed to converge.

    Carries the final off-diagonal Frobenius norm when raised by the Jacobi
    eigenvalue solver.
    """

    def __init__(self, message: str, offdiag_norm: float | None = None):
        super().__init__(message)
        self.offdiag_norm = offdiag_norm
