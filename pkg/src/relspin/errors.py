"""Exception hierarchy shared by the library and the CLI."""


class RelspinError(Exception):
    pass


class ConfigError(RelspinError, ValueError):
    """Malformed or out-of-range experiment configuration (CLI exit code 1)."""


class NumericalError(RelspinError, ArithmeticError):
    """A numerical precondition or invariant failed (CLI exit code 2)."""


class DegenerateError(NumericalError):
    pass


class FrameSingularity(NumericalError):
    """A polarization frame cannot be evaluated at some momenta.

    ``momenta`` holds the offending spatial momenta as an (n, 3) array.
    """

    def __init__(self, message, momenta=None):
        self.momenta = momenta
        if momenta is not None and len(momenta):
            shown = "; ".join(
                "(" + ", ".join(f"{c:.6g}" for c in row) + ")" for row in momenta[:5]
            )
            more = f" (+{len(momenta) - 5} more)" if len(momenta) > 5 else ""
            message = f"{message} at momenta {shown}{more}"
        super().__init__(message)
