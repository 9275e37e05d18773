"""
Encapsulate the configuration for peierls
"""
from pydantic import BaseSettings, Field


class _Settings(BaseSettings):
    """ The settings shared by the command line and the HTTP service """

    log_level: str = Field("info", description="Level of the root logger")
    threads: int = Field(
        0, description="Worker processes for parallel stages, 0 means all cores"
    )
    boundary_guard: int = Field(
        12, description="Largest region size searched exhaustively for min |∂S|"
    )
    path_guard: int = Field(
        10 ** 8, description="Maximum number of dart-steps spent counting paths"
    )
    cutset_guard: int = Field(
        2 * 10 ** 6, description="Maximum number of connected sets explored"
    )
    bootstrap_samples: int = Field(
        1000, description="Bootstrap resamples used to bracket the p_c crossing"
    )
    confidence: float = Field(0.95, description="Confidence level of intervals")
    cache_url: str = "memory://"
    host: str = "127.0.0.1"
    port: int = 8800

    class Config:
        """ Additional configuration for the settings """

        env_prefix = "PEIERLS_"


Settings = _Settings()
