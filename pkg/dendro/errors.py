class DendroError(Exception):
    """Base class for every error raised by the library."""

    exit_code = 2

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.message = message
        self.witness = witness


class InputError(DendroError):
    pass


class PreconditionError(DendroError):
    pass


class DimensionBoundError(PreconditionError):
    pass


class ArityCapError(PreconditionError):
    pass


class ConfigurationError(DendroError):
    pass
