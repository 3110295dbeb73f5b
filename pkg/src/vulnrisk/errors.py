"""Semantic exception hierarchy.

Every error raised on purpose by this package derives from ``VulnRiskError``,
so callers can catch one base class.  Numeric failures (divergent integrals,
infinite quantiles, degenerate conditioning events) are distinguished from
plain input-validation errors because the CLI maps them to different exit
codes.
"""


class VulnRiskError(Exception):
    """Base class for all package errors."""


class ConfigError(VulnRiskError):
    """Invalid configuration or input specification.

    ``messages`` collects every validation failure found, so a bad config is
    reported in one pass rather than one field at a time.
    """

    def __init__(self, messages):
        if isinstance(messages, str):
            messages = [messages]
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))


class DimensionError(VulnRiskError):
    """Argument length does not match the declared dimension."""


class DomainError(VulnRiskError):
    """Scalar argument outside its admissible range."""


class UnsupportedDimensionError(VulnRiskError):
    """Dimension exceeds the hard cap of an operation (2^dim expansion)."""


class DegenerateEventError(VulnRiskError):
    """Conditioning event has probability zero."""


class InfiniteQuantileError(VulnRiskError):
    """Quantile requested at a level where the distribution is unbounded."""


class DivergentIntegralError(VulnRiskError):
    """Integral failed to converge (heavy tail without finite mean, etc.)."""


class ZeroBaselineError(VulnRiskError):
    """Ratio contribution measure requested with a zero baseline."""


class InsufficientSampleError(VulnRiskError):
    """Monte Carlo conditioning event was hit too rarely to estimate."""
