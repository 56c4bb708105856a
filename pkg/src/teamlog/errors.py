"""Exception hierarchy shared by every teamlog module."""


class TeamlogError(Exception):
    """Base class for all errors raised by teamlog."""


class ModelError(TeamlogError):
    """A structure or team is malformed (unknown element, wrong arity, partial function)."""


class ScopeError(TeamlogError):
    """A formula mentions a variable the current team does not carry."""


class UnknownSymbol(TeamlogError):
    pass


class ArityError(TeamlogError):
    pass


class SpaceTooLarge(TeamlogError):
    """An exhaustive enumeration would exceed the configured cap."""


class ParseError(TeamlogError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {self.line}, column {self.column}")
