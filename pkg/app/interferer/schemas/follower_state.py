"""
Pydantic schema for the smart interferer (follower) state.
"""

from typing import List

from pydantic import BaseModel, Field, field_validator


class FollowerState(BaseModel):
    """
    Interferer action and its Lagrange multipliers.

    Attributes:
        p_i (float): Interference power P_I on the attacked sub-channel, watts.
        zeta (List[float]): Per-tag multipliers ζ_n of the power cap.
        attacked_channel (int): Sub-channel index carrying the full interference power.
        utility (float): U_I at the accepted power.
        iteration (int): Follower iteration counter T_I of the last best response.
        converged (bool): Whether the accept test stopped the iteration before the cap.
    """

    p_i: float = Field(..., ge=0)
    zeta: List[float]
    attacked_channel: int = Field(0, ge=0)
    utility: float = float("-inf")
    iteration: int = 0
    converged: bool = True

    class Config:
        frozen = True
        json_schema_extra = {
            "example": {
                "p_i": 0.41,
                "zeta": [0.0, 0.0, 0.0],
                "attacked_channel": 0,
                "utility": -1.23,
                "iteration": 2,
                "converged": True,
            }
        }

    @field_validator("zeta")
    @classmethod
    def _nonnegative(cls, value: List[float]) -> List[float]:
        if any(v < 0 for v in value):
            raise ValueError("zeta must be >= 0")
        return value

    @classmethod
    def silent(cls, n_tags: int) -> "FollowerState":
        """Interferer that has not transmitted yet."""
        return cls(p_i=0.0, zeta=[0.0] * n_tags)
