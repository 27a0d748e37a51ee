"""Exception hierarchy shared across the engine.

Every error the HTTP layer can surface maps to exactly one (status, code)
pair; the code string is the class name without the ``Error`` suffix.
"""

from __future__ import annotations


class GeomError(Exception):
    """Base class for all engine errors."""

    @property
    def code(self) -> str:
        name = type(self).__name__
        return name[:-5] if name.endswith("Error") else name


class DuplicateIdError(GeomError):
    pass


class EmptyNameError(GeomError):
    pass


class OutOfRangeError(GeomError):
    pass


class UnknownSkillError(GeomError):
    pass


class UnknownProblemError(GeomError):
    pass


class NoGraphsError(GeomError):
    pass


class StatementError(GeomError):
    """Base for statement-language failures; carries a character offset."""

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        super().__init__(message)
        self.position = position
        self.expected = expected

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        base = super().__str__()
        if self.expected:
            return f"{base} at offset {self.position} (expected {', '.join(self.expected)})"
        return f"{base} at offset {self.position}"


class ParseError(StatementError):
    pass


class ArityError(StatementError):
    pass


class SessionClosedError(GeomError):
    pass


class BadIndexError(GeomError):
    pass


class BadRefsError(GeomError):
    pass


class NoSuchLineError(GeomError):
    pass


class NoFrontierError(GeomError):
    pass


class BadRangeError(GeomError):
    pass


class UnknownSessionError(GeomError):
    pass


class ExternalUnavailableError(GeomError):
    pass


class CorpusIoError(GeomError):
    pass


class SchemaVersionMismatchError(GeomError):
    def __init__(self, found: object, supported: int):
        super().__init__(f"unsupported schema_version {found!r}; this build reads version {supported}")
        self.found = found
        self.supported = supported


class CorpusFormatError(GeomError):
    """Malformed corpus/script content, positioned by file and JSON pointer."""

    def __init__(self, path: str, pointer: str, message: str):
        super().__init__(f"{path}: {pointer or '/'}: {message}")
        self.path = path
        self.pointer = pointer
        self.reason = message


class LintFailureError(GeomError):
    def __init__(self, diagnostics):
        super().__init__(f"{len(diagnostics)} lint error(s)")
        self.diagnostics = list(diagnostics)


class UnsupportedFormatError(GeomError):
    pass


class InvalidConfigError(GeomError):
    pass
