"""Exception hierarchy shared by the library and the CLI."""


class MorseKGError(Exception):
    """Base class for all library errors."""


class DomainError(MorseKGError, ValueError):
    """Input outside the domain of an operation (CLI exit code 2)."""


class UnknownMoleculeError(DomainError, LookupError):
    pass


class UnsupportedCaseError(DomainError):
    """Requested combination (e.g. complex potential in the real oracle) is not handled."""


class DegeneratePotentialError(DomainError):
    pass


class DegenerateRecurrenceError(DomainError):
    def __init__(self, index: int):
        super().__init__(f"recurrence coefficient Z_{index} vanishes; series cannot be continued")
        self.index = index


class SpecialCaseNotApplicable(DomainError):
    pass


class DivergenceError(DomainError):
    pass


class ProvenanceMismatch(MorseKGError):
    """Closed-form levels and oracle result were computed from different inputs."""


class RadicandWarning(UserWarning):
    """A real-mode energy radicand went negative and the result was complexified."""
