"""Exception hierarchy shared by all investnet modules."""


class InvestnetError(Exception):
    """Base class for all errors raised by this package."""


class EmptyLabelError(InvestnetError):
    """A node label was empty (or whitespace only) after trimming."""


class SelfLoopError(InvestnetError):
    """An edge pair joins a label to itself."""

    def __init__(self, label: str):
        super().__init__(f"self-loop on label {label!r}")
        self.label = label


class OutOfRangeError(InvestnetError):
    """A node id lies outside 0..n-1."""


class MissingColumnError(InvestnetError):
    """A required column is absent from an input header."""

    def __init__(self, name: str):
        super().__init__(f"missing required column {name!r}")
        self.name = name


class MalformedRowError(InvestnetError):
    """A data row has the wrong field count or an empty required field."""

    def __init__(self, line_number: int, message: str = "wrong field count"):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class EmptyGraphError(InvestnetError):
    """The operation needs at least one node."""


class DegenerateGraphError(InvestnetError):
    """The graph is too small or one-sided for the requested quantity."""


class NoPairsError(InvestnetError):
    """No connected node pair exists in the requested scope."""


class InsufficientTailError(InvestnetError):
    """Too few (or too uniform) samples above xmin to fit a power law."""


class TooManyEdgesError(InvestnetError):
    """Requested edge count exceeds the simple-graph maximum n*(n-1)/2."""


class ParameterError(InvestnetError):
    """A generator or probe parameter is outside its valid range."""


class DegenerateBaselineError(InvestnetError):
    """Every random baseline sample has zero clustering; sigma is undefined."""


class SchemaError(InvestnetError):
    """A report file has an unsupported or missing schema version."""
