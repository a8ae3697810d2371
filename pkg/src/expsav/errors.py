"""Exceptions raised by the time steppers."""


class SolverError(RuntimeError):
    """A step produced an unsolvable linear system (corrupted tables or state)."""


class ConvergenceError(SolverError):
    """Fixed-point iteration failed to reach tolerance within the iteration cap."""

    def __init__(self, message: str, iters: int):
        super().__init__(message)
        self.iters = iters
