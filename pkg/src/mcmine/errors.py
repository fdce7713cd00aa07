"""Exception types shared across the toolkit."""


class McmineError(Exception):
    """Base class for all toolkit errors."""


class MissingBinding(McmineError):
    """A template placeholder marked required was not bound."""

    def __init__(self, name: str):
        super().__init__(f"missing required template binding: {name!r}")
        self.name = name


class MalformedScenario(McmineError):
    """A mock scenario file does not follow the scenario schema."""


class GatewayError(McmineError):
    """Base class for completion-transport failures."""


class TransportError(GatewayError):
    """Network-level failure or 5xx after retries were exhausted."""


class RateLimitedError(GatewayError):
    """Provider kept returning rate-limit responses after retries."""


class UnauthorizedError(GatewayError):
    """Credential missing from the environment or rejected by the provider."""


class ProviderRefusalError(GatewayError):
    """Provider answered but produced no usable completion text."""


class ParseError(McmineError):
    """Model output did not match the expected tagged grammar."""


class TokenizeError(McmineError):
    """Source text could not be scanned (e.g. unterminated string)."""

    def __init__(self, diagnostic):
        super().__init__(f"line {diagnostic.line}: {diagnostic.message}")
        self.diagnostic = diagnostic


class InsufficientProblems(McmineError):
    """Problem bank is smaller than the configured bag size."""


class EmptyInput(McmineError):
    """An aggregate operation received no records."""
