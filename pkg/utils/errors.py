"""
Error types for the secrecy toolkit

The CLI maps the ValueError family to exit code 2 and budget errors to exit code 3.
NumericalError signals a defect and is left to surface as a traceback.
"""

from typing import Optional


class TwwtError(Exception):
    """Base class for toolkit errors."""


class ChannelParameterError(TwwtError, ValueError):
    """A channel parameter violates its invariant."""

    def __init__(self, field: str, value: object, requirement: str):
        self.field = field
        self.value = value
        self.requirement = requirement
        super().__init__(f"{field}={value!r} violates {requirement}")


class DomainError(TwwtError, ValueError):
    """An argument lies outside the domain of an operation."""


class InputDocumentError(TwwtError, ValueError):
    """A JSON input document is unreadable or of the wrong kind."""

    def __init__(self, message: str, path: Optional[str] = None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class BudgetExceededError(TwwtError, RuntimeError):
    """Exhaustive enumeration would exceed the configured state budget."""

    def __init__(self, product: str, cost: int, budget: int):
        self.product = product
        self.cost = cost
        self.budget = budget
        super().__init__(f"enumeration cost {product} = {cost} exceeds budget {budget}")


class ConfigError(TwwtError, ValueError):
    """The configuration file is missing, unreadable or malformed."""


class NumericalError(TwwtError, ArithmeticError):
    """A computed quantity left its mathematical range by more than rounding error."""
