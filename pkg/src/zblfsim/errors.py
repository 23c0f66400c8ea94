"""Exception types shared across the package."""


class ZblfsimError(Exception):
    """Base class for package errors."""


class ConfigError(ZblfsimError):
    """Invalid configuration file, key, or parameter value."""


class ConstraintViolation(ZblfsimError):
    """A barrier was evaluated at or beyond its boundary.

    Raised when |z| >= k (up to the numerical guard) so the caller can stop
    and report instead of letting the barrier term overflow.
    """

    def __init__(self, value: float, bound: float, joint=None, time=None):
        self.value = value
        self.bound = bound
        self.joint = joint
        self.time = time
        where = "" if joint is None else f" at joint {joint}"
        when = "" if time is None else f", t = {time:.6f} s"
        super().__init__(
            f"barrier boundary reached{where}{when}: |z| = {abs(value):.6g} "
            f"vs bound {bound:.6g}"
        )


class SingularDynamics(ZblfsimError):
    """The inertia-matrix solve failed; indicates invalid parameters."""
