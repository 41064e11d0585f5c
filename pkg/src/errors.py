class UltrametricError(Exception):
    """Base class for every error raised by the package"""


class DomainError(UltrametricError, ValueError):
    """A documented precondition of an operation does not hold"""

    def __init__(self, precondition: str, message: str):
        self.precondition = precondition
        self.message = message
        super().__init__(f"[{precondition}] {message}")


class LevelEscalationError(DomainError):
    def __init__(self, message: str):
        super().__init__("level_cap", message)


class EnumerationBudgetError(DomainError):
    def __init__(self, message: str):
        super().__init__("enumeration_budget", message)


class SearchExhaustedError(DomainError):
    def __init__(self, message: str, hull_diameter: int):
        self.hull_diameter = hull_diameter
        super().__init__("search_bound", f"{message} (hull diameter {hull_diameter})")


class BitLengthError(DomainError):
    def __init__(self, message: str):
        super().__init__("bit_length_cap", message)


class ConfigError(UltrametricError):
    """Configuration file or override could not be turned into a valid config"""
