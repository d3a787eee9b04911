"""Exception types shared across the package."""


class BoolbicError(Exception):
    """Base class for all package-specific errors."""


class ParseError(BoolbicError, ValueError):
    """Malformed delimited input.

    Carries the 1-based line and field position of the offending cell when
    known, so callers can point users at the exact spot in the file.
    """

    def __init__(self, message, line=None, column=None):
        if line is not None:
            where = f"line {line}" if column is None else f"line {line}, field {column}"
            message = f"{message} ({where})"
        super().__init__(message)
        self.line = line
        self.column = column


class DomainError(BoolbicError, ValueError):
    """An argument is outside the domain a contract requires."""


class ResourceCapError(BoolbicError, RuntimeError):
    """Enumeration exceeded a configured resource cap.

    The error is loud on purpose: dualization is output-exponential in the
    worst case and silently truncated results would be indistinguishable
    from complete ones.  ``partial`` is always True; ``terms_seen`` and
    ``clauses_done`` describe how far the run got.
    """

    def __init__(self, message, terms_seen, clauses_done, clauses_total):
        super().__init__(message)
        self.partial = True
        self.terms_seen = terms_seen
        self.clauses_done = clauses_done
        self.clauses_total = clauses_total
