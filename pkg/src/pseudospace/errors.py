class PseudospaceError(Exception):
    """Base class for all errors raised by this package."""

    code = "E_PSEUDOSPACE"


class InputError(PseudospaceError, ValueError):
    """Malformed input: unknown ids, bad shapes, schema violations."""

    code = "E_INPUT"


class ContractError(PseudospaceError):
    """A precondition of an operation does not hold."""

    code = "E_CONTRACT"

    def __init__(self, message: str, witness=None) -> None:
        super().__init__(message)
        self.witness = witness


class NotSimplyConnected(ContractError):
    """The ambient geometry contains a zigzag cycle."""

    code = "E_NOT_SIMPLY_CONNECTED"
