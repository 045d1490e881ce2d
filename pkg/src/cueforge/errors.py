"""Exception types shared across the toolkit."""


class CueforgeError(Exception):
    """Base class for all cueforge errors."""


class InvalidParams(CueforgeError):
    """Image parameters violate their documented bounds."""


class InvalidCanvas(CueforgeError):
    """Canvas size is not one of the supported square sizes."""


class EmptyText(CueforgeError):
    """A metric was asked to operate on an empty string."""


class EmptyCorpus(CueforgeError):
    """A corpus-level operation received no responses."""


class CorpusFormatError(CueforgeError):
    """A corpus or log file failed to parse."""

    def __init__(self, message: str, line_number: int | None = None):
        super().__init__(message)
        self.line_number = line_number


class AuthError(CueforgeError):
    """Base class for authentication protocol errors."""


class AlreadyRegistered(AuthError):
    """Registration requested for a username that already has an account."""


class InvalidCode(AuthError):
    """Registration code is unknown, superseded, or already consumed."""


class ExpiredCode(AuthError):
    """Registration code is past its validity window."""


class MissingCueParams(AuthError):
    """Cueblot-condition registration submitted without cue parameters."""


class EmptySecret(AuthError):
    """Registration submitted with an empty secret."""


class UnknownUser(AuthError):
    """Operation referenced a username with no account."""
