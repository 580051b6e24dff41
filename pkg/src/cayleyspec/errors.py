class CapExceededError(ValueError):
    """A size or budget limit was exceeded; the message names the limit."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed (a theorem would be falsified)."""


class GensetParseError(ValueError):
    def __init__(self, message: str, token: str, position: int):
        super().__init__(f"{message}: {token!r} at position {position}")
        self.token = token
        self.position = position
