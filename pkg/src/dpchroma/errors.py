from __future__ import annotations


class CapacityError(RuntimeError):
    """A computation would exceed a configured size limit."""

    def __init__(self, msg: str, required: int | None = None, limit: int | None = None):
        super().__init__(msg)
        self.required = required
        self.limit = limit


class PreconditionError(ValueError):
    """An input violates an operation's documented precondition."""
