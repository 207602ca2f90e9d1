"""
Error hierarchy for the planning toolkit.

The command-line front end maps these onto exit codes; library code raises them
and lets callers decide.
"""

from typing import Optional


class PlannerError(Exception):
    """Base class for every error raised by the toolkit."""


class UsageError(PlannerError, ValueError):
    """Invalid arguments: dimension mismatch, duplicate ids, bad flags."""


class ConfigurationError(PlannerError):
    """The problem instance cannot be planned on as configured."""


class ScenarioError(ConfigurationError):
    """A scenario or experiment file failed to load or validate."""

    def __init__(self, message: str, problems: Optional[list] = None):
        super().__init__(message)
        self.problems = list(problems or [])


class QueryError(PlannerError, LookupError):
    """A query was issued against a structure that cannot answer it."""


class OutputError(PlannerError, OSError):
    """Writing an artifact failed."""

    def __init__(self, path: str, reason: str):
        super().__init__(f"Failed to write {path}: {reason}")
        self.path = path


class InvariantViolation(PlannerError, AssertionError):
    """A debug-mode consistency check failed."""


EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_IO = 3


def exit_code_for(error: BaseException) -> int:
    """Map an exception onto the CLI exit-code contract."""
    if isinstance(error, OutputError):
        return EXIT_IO
    if isinstance(error, (UsageError, ConfigurationError)):
        return EXIT_USAGE
    if isinstance(error, OSError):
        return EXIT_IO
    return EXIT_INTERNAL
