"""Exception hierarchy shared by every stage of the codec."""


class CodecError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(CodecError, ValueError):
    """A caller-supplied parameter is outside its documented domain."""


class InfeasibleParametersError(ParameterError):
    """The (n, f) pair is valid but the construction cannot be built for it."""


class UsageError(CodecError, ValueError):
    """Wrong input shape or size at an API boundary (e.g. message length)."""


class EncodeError(CodecError, ValueError):
    """An integer or payload is out of range for the requested encoder."""


class CorruptCodewordError(CodecError):
    """Input to a decoder is not a codeword; ``stage`` names where it was caught."""

    def __init__(self, message, stage=None):
        self.stage = stage
        if stage:
            message = f"[{stage}] {message}"
        super().__init__(message)


class CorruptStateError(CodecError):
    """Encoder reached a state its invariants rule out (e.g. flipping a 0)."""


class InternalInvariantError(CodecError, AssertionError):
    """A precondition owed by internal callers was violated."""
