"""Exception types shared across the package."""


class TiltkitError(Exception):
    """Base class for all errors raised by this package."""


class InputError(TiltkitError):
    """Malformed or inconsistent input data."""


class ParseError(InputError):
    pass


class SubspaceNotContained(TiltkitError):
    pass


class InvalidRelation(InputError):
    pass


class NotStabilized(TiltkitError):
    def __init__(self, max_len, detail=""):
        self.max_len = max_len
        msg = f"presentation did not stabilize up to path length {max_len}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class NotBasic(TiltkitError):
    pass


class AlgebraMismatch(TiltkitError):
    pass


class ComplexMismatch(TiltkitError):
    pass


class NotBasicDecomposition(TiltkitError):
    pass


class NotIndecomposable(TiltkitError):
    pass


class NotTwoTerm(TiltkitError):
    pass


class NonCycleTerm(InputError):
    pass


class UnknownVertex(InputError):
    pass
