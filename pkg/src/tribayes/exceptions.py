"""Exception hierarchy shared across the package."""


class TribayesError(Exception):
    """Base class for all errors raised by this package."""


class CorpusParseError(TribayesError, ValueError):
    """Malformed tagged-corpus or confusion-set input."""

    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = []
        if source is not None:
            where.append(str(source))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class ConfigError(TribayesError, ValueError):
    """Invalid configuration value."""


class TrainingError(TribayesError, ValueError):
    """Training cannot proceed on the given data."""


class ModelFormatError(TribayesError, ValueError):
    """A model file is malformed or has an unsupported version."""


class ZeroProbabilityError(TribayesError, ArithmeticError):
    """Every tagging of a sentence has probability zero."""

    def __init__(self, position):
        self.position = position
        super().__init__(f"no tagging with nonzero probability survives position {position}")
