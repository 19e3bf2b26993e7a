class WcnestError(Exception):
    """Base class for every error raised by wcnest."""


class ParseError(WcnestError):
    """Rejected program text, always carrying a 1-based position."""

    def __init__(self, line, column, message, kind='syntax'):
        self.line = line
        self.column = column
        self.message = message
        self.kind = kind
        super().__init__(f"{kind} error at line {line}, column {column}: {message}")


class InvalidWeightError(WcnestError, ValueError):
    pass


class EnumerationCapExceeded(WcnestError):
    def __init__(self, size, cap, what='atoms'):
        self.size = size
        self.cap = cap
        super().__init__(
            f"refusing to enumerate: {size} {what} exceed the enumeration cap of {cap} "
            f"(raise it with --cap or WCNEST_CAP)"
        )


class ClassicalNegationError(WcnestError):
    def __init__(self, literal):
        super().__init__(
            f"formula contains the classical negation literal {literal}; "
            f"apply eliminate_classical_negation first"
        )


class TranslationError(WcnestError):
    pass


class PreconditionError(WcnestError, ValueError):
    pass


class NotTightError(WcnestError):
    def __init__(self, cycle):
        self.cycle = cycle
        names = ' -> '.join(str(a) for a in cycle)
        super().__init__(f"program is not tight (positive cycle {names}); completion is not guaranteed sound")
