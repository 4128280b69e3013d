class KgError(Exception):
    """Base class for solver and harness errors."""


class DimensionError(KgError, ValueError):
    pass


class NumericError(KgError, ArithmeticError):
    def __init__(self, msg: str, mode: int | None = None):
        super().__init__(msg)
        self.mode = mode


class BlowUpError(KgError, ArithmeticError):
    """Raised when a trajectory leaves the finite range (|u| > 1e8 or nan)."""

    def __init__(self, msg: str, step: int | None = None):
        super().__init__(msg)
        self.step = step


class ConvergenceError(KgError, RuntimeError):
    def __init__(self, msg: str, increment: float):
        super().__init__(msg)
        self.increment = increment


class ChecksumError(KgError, IOError):
    pass


class ReferenceIntegrityError(KgError, RuntimeError):
    pass


class ReferenceUnavailableError(KgError, LookupError):
    pass


BLOWUP_THRESHOLD = 1e8


def check_finite(arr, step: int | None = None, what: str = "u"):
    import numpy as np

    a = np.abs(arr)
    m = float(np.max(a)) if a.size else 0.0
    if not np.isfinite(m) or m > BLOWUP_THRESHOLD:
        raise BlowUpError(f"{what} blew up (max |{what}| = {m:.3g})", step=step)
