"""Exception hierarchy shared by the library and the CLI."""


class TargetRuleError(Exception):
    """Base class for every error raised by this package."""


class InvalidRuleError(TargetRuleError, ValueError):
    """A rule or query rule violates its structural contract."""


class RuleNotContainedError(TargetRuleError, LookupError):
    """An operation needs a sequence that contains the rule."""


class InvalidInstanceError(TargetRuleError, ValueError):
    """A rule instance (li, ri) does not satisfy li < ri."""


class UndefinedConfidenceError(TargetRuleError, ZeroDivisionError):
    """The antecedent never occurs, so confidence has no value."""


class SimilarityDomainError(TargetRuleError, ValueError):
    """Support counts outside the domain of the similarity metrics."""


class UniverseTooLargeError(TargetRuleError, ValueError):
    """The brute-force oracle refuses item universes it cannot enumerate."""


class ConfigError(TargetRuleError, ValueError):
    """Invalid thresholds, limits or generator parameters."""


class ParseError(TargetRuleError, ValueError):
    """Malformed database, query or token-map text.

    ``line`` is 1-based; it is ``None`` for single-line inputs such as a query.
    """

    def __init__(self, message, line=None):
        self.line = line
        self.reason = message
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
