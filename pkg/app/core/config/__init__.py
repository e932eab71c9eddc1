from .application_config import (APP_NAME, APP_VERSION, DEBUG, LOG_DIR,
                                 LOG_LEVEL, LOG_TO_FILE)

__all__: list[str] = [
    "APP_NAME",
    "APP_VERSION",
    "DEBUG",
    "LOG_DIR",
    "LOG_LEVEL",
    "LOG_TO_FILE",
]
