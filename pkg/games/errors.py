"""
PCMAS error types
Each error also derives from the builtin a caller would naturally catch
"""


class PcmasError(Exception):
    """Base class for all errors raised by this project"""


class BoundsError(PcmasError, IndexError):
    """A joint action or action index lies outside a game's bounds"""


class DomainError(PcmasError, ValueError):
    """An argument lies outside the domain of an operation"""


class ConfigError(PcmasError, ValueError):
    """An invalid simulation config, experiment spec or game file"""


class StateTrackingError(PcmasError, RuntimeError):
    """A teacher needs the student's state but cannot track it"""


class MissingPolicyError(PcmasError, FileNotFoundError):
    """An experiment needs a solved teaching policy that does not exist"""
