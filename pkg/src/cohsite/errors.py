"""Exception hierarchy shared by every module of the toolkit."""


class CohsiteError(Exception):
    pass


class DocumentError(CohsiteError):
    """Malformed presentation document.  ``location`` names where parsing failed."""

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)


class AxiomError(CohsiteError):
    """An algebraic law failed during validation; ``witness`` holds the offending elements."""

    def __init__(self, law, witness=()):
        self.law = law
        self.witness = tuple(witness)
        super().__init__(f"{law} fails at {self.witness}")


class NotALatticeError(AxiomError):
    pass


class SizeGuardError(CohsiteError):
    """An exhaustive construction would exceed its configured bound."""

    def __init__(self, what, size, bound):
        self.size = size
        self.bound = bound
        super().__init__(f"{what}: size {size} exceeds bound {bound} (raise it with --budget)")


class UnitalCongruenceError(CohsiteError):
    pass


class UnsupportedError(CohsiteError):
    """The requested operation is outside what a backend can decide exactly."""
