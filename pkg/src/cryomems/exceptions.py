"""Exception types raised by the simulator."""


class StabilityError(RuntimeError):
    """Integration produced contact penetration beyond the allowed bound.

    Usually means the time step is too large for the contact stiffness.
    """


class SingularityError(RuntimeError):
    """The gate plate gap closed during integration.

    The contact stop is supposed to prevent this; hitting it indicates an
    inconsistent parameter set (contact gap too close to the plate-travel
    limit) or a blown-up trajectory.
    """


class CalibrationError(RuntimeError):
    """Calibration could not reach its targets; carries a diagnostic."""


class OptimizationError(RuntimeError):
    """No waveform candidate closed the switch."""

    def __init__(self, message: str, best_spec=None, best_diagnostic=None):
        super().__init__(message)
        self.best_spec = best_spec
        self.best_diagnostic = best_diagnostic


class LogicIntegrityError(RuntimeError):
    """A logic output voltage landed in the ambiguous band around threshold."""
