"""
Provenance attached to every output of the pipeline
"""
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field

from peierls import __version__
from peierls.models.utils import SCHEMA_VERSION


class RunManifest(BaseModel):
    """
    Describes the invocation that produced an output. Two runs with identical
    manifests produce byte-identical outputs, so nothing time dependent is stored.
    """

    version: int = SCHEMA_VERSION
    tool_version: str = __version__
    subcommand: str = Field(..., description="The pipeline stage that ran")
    parameters: Dict[str, Any] = Field(
        {}, description="Every parameter that influences the output"
    )
    seed: Optional[int] = Field(None, description="Seed of any random stage")
    inputs: Dict[str, str] = Field(
        {}, description="Input name mapped to the sha256 digest of its content"
    )
    outputs: Dict[str, str] = Field({}, description="Output name mapped to its path")


class ErrorReport(BaseModel):
    """ Machine-readable description of a failure """

    code: str
    message: str
    details: Dict[str, Any] = {}
    manifest: Optional[RunManifest] = None
