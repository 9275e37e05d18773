"""
Models for the Monte Carlo percolation sweep and its comparison with p_star
"""
from typing import List, Optional

from pydantic import BaseModel, Field

from peierls.models.manifest import RunManifest
from peierls.models.utils import SCHEMA_VERSION


class PercolationConfig(BaseModel):
    """
    One bond configuration: edge i is open iff its uniform U_i(seed, trial) < p,
    so the same (seed, trial) couples every p monotonically.
    """

    p: float = Field(..., ge=0, le=1)
    seed: int = Field(..., ge=0, description="64-bit seed of the keyed generator")
    trial: int = Field(0, ge=0)


class SweepRow(BaseModel):
    """ θ̂(p), the fraction of trials where the center reaches the target """

    p: float
    theta: float
    successes: int
    trials: int
    ci_low: float
    ci_high: float
    half_width: float


class PcEstimate(BaseModel):
    """ Where θ̂ crosses 1/2 on the grid """

    estimate: Optional[float] = Field(None, description="Interpolated crossing")
    low: float = Field(..., description="Lower end of the bracketing grid interval")
    high: float = Field(..., description="Upper end of the bracketing grid interval")
    ci_low: Optional[float] = None
    ci_high: Optional[float] = None
    confidence: float = 0.95
    open_low: bool = Field(False, description="θ̂ is at least 1/2 on the whole grid")
    open_high: bool = Field(False, description="θ̂ stays below 1/2 on the whole grid")


class SweepResult(BaseModel):
    """ A whole p-grid evaluated on shared, keyed randomness """

    version: int = SCHEMA_VERSION
    center: int
    radius: Optional[int] = Field(
        None, description="Window radius, null when the target is the unbounded face"
    )
    seed: int
    trials: int
    rows: List[SweepRow] = []
    thresholds: List[float] = Field(
        [], description="Per trial, the p above which the center reaches the target"
    )
    nonmonotone: bool = Field(False, description="θ̂ dropped by more than 3σ")
    estimate: Optional[PcEstimate] = None
    manifest: Optional[RunManifest] = None


class ConfrontReport(BaseModel):
    """ The empirical crossing next to the rigorous threshold """

    version: int = SCHEMA_VERSION
    p_star: float
    estimate: Optional[float] = None
    ci_low: Optional[float] = None
    ci_high: Optional[float] = None
    margin: Optional[float] = Field(
        None, description="p_star minus the largest plausible crossing"
    )
    consistent: bool = True
    manifest: Optional[RunManifest] = None
