"""Exception types shared across the package."""


class ParseError(Exception):
    """An input file could not be parsed or is malformed."""


class HypothesisError(Exception):
    """A mathematical hypothesis of the requested computation fails.

    Raised when the input is well-formed but does not satisfy the
    assumptions a computation needs (subgroup not normal, quotient not
    abelian or not cyclic, input not a genuine character, ...).
    """


class InternalCheckError(Exception):
    """An internally certified identity failed; this indicates a bug."""


def ensure(condition: bool, message: str) -> None:
    """Raise InternalCheckError unless `condition` holds."""
    if not condition:
        raise InternalCheckError(message)
