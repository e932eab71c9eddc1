from typing import List
from app.core.config.application_config import APP_NAME, APP_VERSION
__all__: List[str] = [
    "APP_NAME",
    "APP_VERSION",
]
