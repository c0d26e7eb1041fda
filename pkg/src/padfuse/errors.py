"""Exception types shared across the library."""


class PadfuseError(Exception):
    """Base class for every error raised by this package."""


class DomainError(PadfuseError):
    """A rate, probability or threshold argument is outside its legal range."""


class EmptyClassError(PadfuseError):
    """A required sample class has no records in the dataset."""

    def __init__(self, klass: str):
        super().__init__(f"no records for required class {klass!r}")
        self.klass = klass


class EmptyInputError(PadfuseError):
    """An operation over a collection received an empty one."""


class EmptyCurveError(PadfuseError):
    """A curve with no points cannot be analyzed."""


class GridMismatchError(PadfuseError):
    """Two sweeps were compared over different w grids."""


class ConfigError(PadfuseError):
    """A generator configuration violates its invariants."""


class UnknownPresetError(ConfigError):
    """Requested preset name is not in the documented preset list."""

    def __init__(self, name: str, known: tuple[str, ...]):
        super().__init__(f"unknown preset {name!r}; known presets: {', '.join(known)}")
        self.name = name


class ParseError(PadfuseError):
    """A score file line could not be parsed."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class UnknownClassError(ParseError):
    """A score file line names a class outside the three legal ones."""

    def __init__(self, line: int, klass: str):
        super().__init__(line, f"unknown class {klass!r}")
        self.klass = klass


class ReportIOError(PadfuseError):
    """A report file could not be read or written."""


class VersionMismatchError(PadfuseError):
    """A report file carries an unsupported format_version."""

    def __init__(self, found, expected: int):
        super().__init__(f"report format_version {found!r} is not supported (expected {expected})")
        self.found = found
        self.expected = expected
