"""Exception hierarchy. Every error carries the pipeline stage it came from."""


class CorpusError(Exception):
    stage = "corpus"

    def __init__(self, message, *, context=None):
        super().__init__(message)
        self.context = context

    def __str__(self):
        msg = super().__str__()
        if self.context:
            return f"{self.context}: {msg}"
        return msg


class InvalidEncoding(CorpusError):
    stage = "normalize"

    def __init__(self, position, encoding="utf-8", *, context=None):
        super().__init__(f"cannot decode as {encoding} at byte {position}", context=context)
        self.position = position
        self.encoding = encoding


class InsufficientTrainingData(CorpusError):
    stage = "langdetect"


class TooShort(CorpusError):
    stage = "langdetect"


class NoProfiles(CorpusError):
    stage = "langdetect"


class EmptyDocument(CorpusError):
    stage = "langdetect"


class MissingProfile(CorpusError):
    stage = "clean"

    def __init__(self, lang, *, context=None):
        super().__init__(f"no language profile loaded for {lang!r}", context=context)
        self.lang = lang


class DuplicateDocumentId(CorpusError):
    stage = "docalign"


class UnknownBeadType(CorpusError):
    stage = "sentalign"


class UnknownRegion(CorpusError):
    stage = "greenreport"


class NegativeDuration(CorpusError):
    stage = "greenreport"


class ClockError(CorpusError):
    stage = "greenreport"


class ConfigError(CorpusError):
    stage = "config"


class IoError(CorpusError):
    stage = "pipeline"
