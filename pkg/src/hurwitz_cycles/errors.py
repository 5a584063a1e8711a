"""Error classes shared across the package; the CLI maps them to exit codes."""


class HurwitzError(Exception):
    exit_code = 1


class InvalidInputError(HurwitzError, ValueError):
    exit_code = 2


class OnWallError(InvalidInputError):
    """Raised when a ramification vector lies on a wall W_I."""

    def __init__(self, wall: tuple, message: str = ""):
        self.wall = tuple(wall)
        label = "W{" + ",".join(map(str, self.wall)) + "}"
        self.wall_name = label
        super().__init__(message or f"on wall {label}")


class NonAdjacentChambersError(InvalidInputError):
    def __init__(self, disagreements: list):
        self.disagreements = disagreements
        walls = ", ".join("W{" + ",".join(map(str, w)) + "}" for w in disagreements)
        super().__init__(f"chambers are not adjacent across a single wall; signs differ on {walls}")


class VerificationError(HurwitzError):
    exit_code = 3


class ResourceGuardError(HurwitzError):
    exit_code = 4
