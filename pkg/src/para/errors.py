"""Exception hierarchy shared by all para modules.

Every error carries a short machine-readable ``code`` so the HTTP service
can emit structured ``{code, message, position?}`` bodies without string
matching.
"""


class ParaError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"

    def to_dict(self):
        body = {"code": self.code, "message": str(self)}
        pos = getattr(self, "position", None)
        if pos is not None:
            body["position"] = pos
        return body


class NumerationError(ParaError):
    code = "numeration_error"


class DictionaryError(ParaError):
    code = "dictionary_error"


class ParseError(ParaError):
    """Surface-syntax error; ``position`` is a 0-based character offset."""

    code = "parse_error"

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at {position})")
        self.position = position


class CodecError(ParaError):
    code = "codec_error"


class TilingError(ParaError):
    code = "tiling_error"


class RenderError(ParaError):
    code = "render_error"


class TranslateError(ParaError):
    code = "translate_error"


class CorpusError(ParaError):
    code = "corpus_error"
