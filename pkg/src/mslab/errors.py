"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: configuration problems exit
with 2, numeric domain violations with 3, failed certificates with 4.
"""


class MslabError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(MslabError):
    """Invalid configuration or malformed input data."""


class NumericDomainError(MslabError):
    """An operation was evaluated outside its numeric domain."""


class OnSpectrumError(NumericDomainError):
    """Evaluation requested at (or too close to) a spectrum point."""


class CertificationError(MslabError):
    """A required certificate could not be established."""
