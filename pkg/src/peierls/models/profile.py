"""
Models for the measured growth and isoperimetric constants
"""
from enum import auto
from typing import List, Optional

from pydantic import BaseModel, Field

from peierls.models.manifest import RunManifest
from peierls.models.utils import SCHEMA_VERSION, AutoNamedEnum


class ProfileFlag(AutoNamedEnum):
    """
    Diagnostics attached to a profile:

    - **hypotheses_fail**: the isoperimetric exponent is zero, so the boundary of
      large sets does not grow (the path graph)
    - **insufficient_window**: too few sizes were measured to fit an exponent
    """

    hypotheses_fail = auto()
    insufficient_window = auto()


class Window(BaseModel):
    """ The finite range over which constants were certified """

    r_max: int = Field(..., ge=0, description="Largest ball radius measured")
    s_max: int = Field(..., ge=0, description="Largest region size measured")


class GrowthRow(BaseModel):
    """ One exact ball count """

    radius: int
    count: int


class BoundaryRow(BaseModel):
    """ The certified minimizer of |∂S| among connected S ∋ v of a given size """

    size: int
    boundary: int
    members: List[int] = []


class ConstantsProfile(BaseModel):
    """
    Growth constants (K, D) with |B(v, r)| ≤ K·r^D and isoperimetric constants
    (k, ε) with |∂S| ≥ k·|S|^ε, both certified pointwise on the window only.
    """

    version: int = SCHEMA_VERSION
    vertex: int = 0
    K: float = Field(..., ge=0)
    D: int = Field(..., ge=0)
    k: float = Field(..., ge=0)
    epsilon: float = Field(..., ge=0, le=1)
    dimension: Optional[float] = Field(
        None, description="The isoperimetric dimension 1/(1 − ε), null if unbounded"
    )
    slope: Optional[float] = Field(
        None, description="Least-squares slope of log min|∂S| against log s"
    )
    window: Window
    growth: List[GrowthRow] = []
    isoperimetry: List[BoundaryRow] = []
    flags: List[ProfileFlag] = []
    manifest: Optional[RunManifest] = None

    @property
    def hypotheses_hold(self) -> bool:
        """ Whether the constants can feed the Peierls bound """
        return (
            ProfileFlag.hypotheses_fail not in self.flags
            and self.k > 0
            and self.epsilon > 0
            and self.K > 0
            and self.D >= 1
        )
