"""Exception types shared across the package."""


class LobbyGameError(Exception):
    """Base class for all domain errors raised by this package."""


class OutOfRangeError(LobbyGameError, ValueError):
    """One or more game parameters violate their admissible range.

    Carries the full list of violations so callers can report every broken
    constraint at once instead of failing on the first.
    """

    def __init__(self, violations):
        self.violations = tuple(violations)
        super().__init__("; ".join(self.violations))


class RegimeMismatchError(LobbyGameError):
    """An equilibrium constructor was called outside its parameter regime."""


class DegenerateFormulaError(LobbyGameError):
    """A closed-form expression is undefined at these parameters."""


class BoundaryError(LobbyGameError):
    """Parameters sit on a knife-edge between regimes at the working tolerance."""


class MalformedProfileError(LobbyGameError):
    """A strategy profile is missing histories or fails to parse."""


class FileUnreadableError(LobbyGameError):
    """An input file could not be opened or decoded."""


class SchemaMismatchError(LobbyGameError):
    """A mapped column is absent from the input header."""


class MissingIncomeError(LobbyGameError):
    """A country record carries neither an income class nor a GNI value."""
