"""
Custom exception classes for solver and experiment error handling.

This module defines a hierarchy of exception classes giving every failure a consistent structure:
a process exit code, a user-facing message, and detailed information for logging. They are raised
in the link-model, solver, game and experiment layers and turned into exit codes by the CLI
exception handler.
"""
import uuid
from datetime import datetime
from typing import Optional

from app.utils.constants.constants import (EXIT_CONFIG_ERROR, EXIT_INFEASIBLE,
                                           EXIT_NOT_CONVERGED,
                                           EXIT_UNKNOWN_ERROR)
from app.utils.enums.operations import Operations


class BaseGameException(Exception):
    """
    Base class for all simulator exceptions.

    Attributes:
        exit_code (int): Process exit code used by the command-line interface.
        message (str): A short, static message describing the failure class.
        details (str): Specific error details for logging.
        exception_id (str): A unique ID for this specific error instance for traceability.
        timestamp (datetime): The time when the exception was created.
    """
    exit_code: int = EXIT_UNKNOWN_ERROR
    message: str = "An internal simulator error occurred."

    def __init__(self, details: Optional[str] = None):
        """
        Initialize the BaseGameException.

        Args:
            details (Optional[str]): Specific error details for logging. Defaults to a generic message.
        """
        self.details: str = details or "No specific details provided."
        self.exception_id: str = str(uuid.uuid4())
        self.timestamp: datetime = datetime.now()
        super().__init__(f"{self.message} {self.details}")


class InvalidGeometryException(BaseGameException):
    """
    Raised when a distance is not strictly positive.
    """
    exit_code = EXIT_CONFIG_ERROR
    message = "Invalid tag geometry."

    def __init__(self, quantity: str, value: float) -> None:
        super().__init__(details=f"{quantity} must be > 0 meters, got {value}.")


class DomainException(BaseGameException):
    """
    Raised when an argument lies outside the domain of a link-model or solver formula.
    """
    exit_code = EXIT_UNKNOWN_ERROR
    message = "Argument outside the domain of the formula."


class DegenerateGameException(BaseGameException):
    """
    Raised when the game cannot be played: zero reflection differential or no allocated tag.
    """
    exit_code = EXIT_CONFIG_ERROR
    message = "The game is degenerate."


class SingularCoefficientException(BaseGameException):
    """
    Raised when a closed form divides by a vanishing composite coefficient.
    """
    exit_code = EXIT_UNKNOWN_ERROR
    message = "A closed-form coefficient is singular."


class InfeasibleScenarioException(BaseGameException):
    """
    Raised when the leader's constraint set is empty for the given parameters.

    Args:
        constraint (str): Name of the binding constraint.
        tag (int): Index of the tag that cannot satisfy it.
        details (str): Numbers behind the verdict.
    """
    exit_code = EXIT_INFEASIBLE
    message = "The scenario is infeasible."

    def __init__(self, constraint: str, tag: int, details: str) -> None:
        self.constraint: str = constraint
        self.tag: int = tag
        super().__init__(details=f"Constraint '{constraint}' cannot hold for tag {tag}: {details}")


class BoundaryPointException(BaseGameException):
    """
    Raised when a finite-difference stencil would leave the feasible box.
    """
    exit_code = EXIT_UNKNOWN_ERROR
    message = "Point too close to the boundary for the requested step."


class ConfigValidationException(BaseGameException):
    """
    Raised when a scenario file cannot be parsed or violates a field constraint.
    """
    exit_code = EXIT_CONFIG_ERROR
    message = "Invalid scenario configuration."


class NonConvergenceException(BaseGameException):
    """
    Raised when a run ends without convergence or an oracle certification breach is found.
    """
    exit_code = EXIT_NOT_CONVERGED
    message = "The computation did not converge."


class UnknownException(BaseGameException):
    """
    Raised for unexpected errors that do not fit into other categories.

    Args:
        operation (Operations): The operation being performed when the error occurred.
        component (str): The solver or service involved.
        details (str): Additional details about the error.
    """
    exit_code = EXIT_UNKNOWN_ERROR
    message = "An unknown error occurred."

    def __init__(self, operation: Operations, component: str, details: str):
        super().__init__(
            details=f"Unknown error during {operation.value} in {component}: {details}")
