"""Exception types. Each carries a short ``code`` used as the CLI error prefix."""


class FatigueError(Exception):
    code = "E_FATIGUE"


class DomainError(FatigueError, ValueError):
    """Input outside the domain where a formula is defined."""

    code = "E_DOMAIN"


class ArgumentError(FatigueError, ValueError):
    code = "E_ARG"


class UndefinedCorrelationError(FatigueError, ValueError):
    """Zero variance or all-identical input; the statistic has no value."""

    code = "E_UNDEFINED"


class SingularParameterError(FatigueError, ValueError):
    code = "E_SINGULAR"


class ParseError(FatigueError, ValueError):
    code = "E_PARSE"


class ManifestError(FatigueError, ValueError):
    code = "E_CONFIG"
