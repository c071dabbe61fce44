"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: usage errors exit 1, data and
configuration errors exit 2, backend errors exit 3.
"""


class SnexError(Exception):
    """Base class for all package errors."""


class UsageError(SnexError):
    """Bad invocation: missing inputs, too few actors, unknown flags."""


class DataError(SnexError):
    """Malformed or inconsistent input data."""


class DuplicateDocIdError(DataError):
    def __init__(self, doc_id: int):
        super().__init__(f"duplicate doc_id {doc_id} in corpus")
        self.doc_id = doc_id


class InvalidQueryError(DataError):
    """A query term produced no tokens, or term count is out of range."""


class UrlParseError(DataError):
    """Input is not an absolute URL with scheme and authority."""


class ConfigError(DataError):
    """A setting references something that does not exist or cannot apply."""


class ValidationError(DataError):
    """Cross-file consistency failure, e.g. gold edges naming unknown actors."""


class BackendError(SnexError):
    """Transport-level failure talking to a search backend.

    Retriable; carries the query that failed so callers can resubmit.
    """

    def __init__(self, message: str, query=None):
        super().__init__(message)
        self.query = query


class BackendParseError(BackendError):
    """The backend answered, but the response did not match the configured
    shape. Never silently treated as zero hits."""
