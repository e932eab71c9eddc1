"""
Exception handler decorators for solver services and CLI commands.

Solver methods are wrapped so that only simulator exceptions leave the service layer; CLI commands
are wrapped so that those exceptions become logged messages and process exit codes.
"""

import logging
from functools import wraps

import typer

from app.utils.enums.operations import Operations
from app.utils.errors.exceptions import (BaseGameException, DomainException,
                                         UnknownException)
from app.utils.logger.application_logger import ApplicationLogger

_logger: ApplicationLogger = ApplicationLogger(name=__name__, log_to_console=False)


def handle_solver_exceptions(component: str, operation: Operations):
    """
    Decorator for solver methods.

    Simulator exceptions pass through untouched; arithmetic failures become DomainException and
    anything else UnknownException, both naming the component and operation.

    Args:
        component (str): The solver or service name.
        operation (Operations): The type of operation being performed.

    Returns:
        Callable: The decorated function with error handling.
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except BaseGameException:
                raise
            except (ZeroDivisionError, FloatingPointError, OverflowError) as e:
                _logger.bind(component=component, operation=operation.value).log_event(
                    "numeric_failure", logging.WARNING, error=type(e).__name__)
                raise DomainException(
                    details=f"{operation.value} in {component} failed: {e}") from e
            except Exception as e:
                raise UnknownException(
                    operation=operation, component=component, details=str(e)) from e
        return wrapper
    return decorator


def handle_cli_exceptions(func):
    """
    Decorator for CLI commands: logs simulator exceptions and exits with their exit code.

    Returns:
        Callable: The decorated command.
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except typer.Exit:
            raise
        except BaseGameException as e:
            _logger.log_error(
                message=f"[{e.exception_id}]: {e.message} Details: {e.details}")
            typer.echo(f"error: {e.message} {e.details}", err=True)
            raise typer.Exit(code=e.exit_code)
    return wrapper
