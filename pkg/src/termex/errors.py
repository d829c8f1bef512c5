"""Exception hierarchy.

Everything raised on bad input data derives from :class:`TermexError` so the
command line can map it to the data-error exit code in one place.
"""


class TermexError(Exception):
    """Base class for data errors."""


class IngestError(TermexError):
    pass


class ConfigError(TermexError, ValueError):
    pass


class TrainingError(TermexError):
    pass


class VectorFormatError(TermexError):
    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class IndexBuildError(TermexError):
    pass


class UnknownWordError(TermexError, KeyError):
    def __init__(self, word):
        super().__init__(word)
        self.word = word

    def __str__(self):
        return f"word not in index: {self.word!r}"


class ExpansionError(TermexError):
    def __init__(self, message, missing=()):
        super().__init__(message)
        self.missing = list(missing)


class SynthSpecError(TermexError, ValueError):
    pass
