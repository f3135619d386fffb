class Error(Exception):
    """Base for everything zonalprop raises on purpose.

    ``stage`` names the pipeline stage that failed, when known.
    """

    def __init__(self, message, *, stage=None):
        super().__init__(message)
        self.stage = stage

    def __str__(self):
        message = super().__str__()
        if self.stage:
            return f"[{self.stage}] {message}"
        return message


class ConfigError(Error):
    pass


class DomainError(Error):
    pass


class NonEllipticError(DomainError):
    pass


class EquatorialDecompositionError(DomainError):
    pass


class ChartError(DomainError):
    pass


class CriticalInclinationError(Error):
    pass


class ConvergenceError(Error):
    pass


class LayoutError(Error):
    pass
