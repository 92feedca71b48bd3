"""Error hierarchy shared by the computational modules and the commands."""


class TauError(Exception):
    pass


class InvalidArgument(TauError, ValueError):
    pass


class DeligneViolation(TauError):
    """A supplied tau(p) lies outside |tau(p)| <= 2p^(11/2)."""


class PrecisionError(TauError):
    pass


class FactorizationError(TauError):

    def __init__(self, cofactor):
        self.cofactor = cofactor
        super().__init__(f'could not split cofactor {cofactor}')


class ConfigurationError(TauError):
    pass


class CheckpointMismatch(TauError):
    pass


class TableFormatError(InvalidArgument):
    pass


class ReproductionError(TauError):
    pass
