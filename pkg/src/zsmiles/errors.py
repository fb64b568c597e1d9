"""Exception hierarchy for zsmiles.

Everything raised on bad input derives from ZsmilesError so callers can
catch one type at the CLI boundary.
"""


class ZsmilesError(Exception):
    pass


class TokenizeError(ZsmilesError):
    pass


class UnbalancedBracket(TokenizeError):
    pass


class MalformedPercent(TokenizeError):
    pass


class UnpairedRingClosure(ZsmilesError):
    """A ring ID opens without closing (or closes without opening)."""


class RingIdOverflow(ZsmilesError):
    """Renumbering would need a ring ID above 99."""


class EmptyCorpus(ZsmilesError):
    pass


class DictionaryFormatError(ZsmilesError):
    pass


class BadMagic(DictionaryFormatError):
    pass


class UnsupportedVersion(DictionaryFormatError):
    pass


class PatternTooLong(DictionaryFormatError):
    pass


class TooManyPatterns(DictionaryFormatError):
    pass


class NonAlphabetByteInPattern(DictionaryFormatError):
    pass


class DecodeError(ZsmilesError):
    pass


class UnknownCode(DecodeError):
    """A payload byte is neither an escape, an identity byte, nor an
    assigned pattern code. Usually means the wrong dictionary."""

    def __init__(self, code: int, offset: int = -1):
        self.code = code
        self.offset = offset
        super().__init__(f"unknown code 0x{code:02x} at offset {offset} "
                         "(dictionary mismatch?)")


class TruncatedEscape(DecodeError):
    def __init__(self, offset: int = -1):
        self.offset = offset
        super().__init__(f"payload ends with a dangling escape at offset {offset}")


class LineError(ZsmilesError):
    """Wraps a per-line failure with its 1-based line number."""

    def __init__(self, line_no: int, cause: Exception):
        self.line_no = line_no
        self.cause = cause
        super().__init__(f"line {line_no}: {cause}")
