"""Exception hierarchy shared by all modules."""


class EffectfaError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(EffectfaError):
    """Unknown builtin name or inconsistent configuration data."""


class InterfaceError(EffectfaError):
    """Carrier or effect-type mismatch between composed values."""


class InputError(EffectfaError):
    """Input data outside the declared domain (e.g. a foreign letter)."""


class ResourceError(EffectfaError):
    """A configured size bound would be exceeded."""


class PreconditionError(EffectfaError):
    """An operation was called on data that violates its stated precondition."""


class IntegrityError(EffectfaError):
    """Supplied structure is internally inconsistent (e.g. no preimage exists)."""


class CapabilityError(EffectfaError):
    """The operation is not available for the requested effect type."""


class IllegalMoveError(EffectfaError):
    """A rewriting-game move whose side conditions do not hold."""


class ParseError(EffectfaError):
    """Malformed textual input; carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
