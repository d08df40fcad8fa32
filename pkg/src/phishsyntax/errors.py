"""Exception hierarchy.

``InputError`` subclasses map to CLI exit code 1, ``DataError`` subclasses
(parse and alignment failures) to exit code 2.
"""


class PhishSyntaxError(Exception):
    exit_code = 1


class InputError(PhishSyntaxError):
    exit_code = 1


class DataError(PhishSyntaxError):
    exit_code = 2


class UnbalancedBrackets(DataError):
    def __init__(self, position, message="unbalanced brackets"):
        self.position = position
        super().__init__(f"{message} at offset {position}")


class EmptyTree(DataError):
    pass


class TerminalWithChildren(DataError):
    pass


class MalformedLine(DataError):
    def __init__(self, line_number, line=""):
        self.line_number = line_number
        super().__init__(f"malformed dependency line {line_number}: {line!r}")


class IndexMismatch(DataError):
    pass


class SentenceAlignmentMismatch(DataError):
    pass


class UnknownSentenceId(DataError):
    pass


class OccurrenceNotInTree(DataError):
    pass


class SameToken(PhishSyntaxError, ValueError):
    pass


class IndexOutOfRange(PhishSyntaxError, IndexError):
    pass


class ZeroVector(PhishSyntaxError, ValueError):
    """Cosine requested against a counter with no mass."""


class EmptyDistribution(PhishSyntaxError, ValueError):
    pass


class UnwritableOutput(InputError):
    pass


class ManifestError(InputError):
    pass
