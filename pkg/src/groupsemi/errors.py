"""Exception hierarchy shared by every module."""


class GroupSemiError(Exception):
    """Base class for all library errors."""


class DomainMismatch(GroupSemiError, ValueError):
    """Operands belong to different coefficient domains or groups."""


class ConditionViolated(GroupSemiError):
    """A construction needs a unit split the coefficient domain cannot provide."""


class NotApplicable(GroupSemiError):
    """The input lies outside the shape an operation is defined for."""


class Unsupported(GroupSemiError):
    """The operation is not decidable/implemented for this domain or family."""


class SearchLimitExceeded(GroupSemiError):
    """An exhaustive search would exceed its explicit size guard."""

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what}: search space {size} exceeds limit {limit}")
        self.size = size
        self.limit = limit


class ParseError(GroupSemiError, ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos
        self.text = text
