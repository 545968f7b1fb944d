"""Exception types shared across the analyzer."""


class AnalyzerError(Exception):
    """Base class for all errors raised by this package."""


class DecodeError(AnalyzerError):
    """The HTML byte stream could not be decoded."""


class SelectorSyntaxError(AnalyzerError):
    """A selector string does not fit the supported grammar."""


class ContractError(AnalyzerError):
    """A metric operation was called with inconsistent inputs."""


class ConfigError(AnalyzerError):
    """The configuration file is malformed."""


class PairingError(AnalyzerError):
    """Two inputs that must describe the same page set do not."""

    def __init__(self, message: str, orphans: list[str] | None = None):
        super().__init__(message)
        self.orphans = orphans or []


class EmptyCorpusError(AnalyzerError):
    """The corpus directory contains no page directories."""


class EmptyInputError(AnalyzerError):
    """An aggregate was requested over an empty value list."""


class SuffixOnlyError(AnalyzerError):
    """The host is itself a public suffix and has no registrable domain."""


class RecordError(AnalyzerError):
    """A request record cannot be classified (for example an unparseable URL)."""
