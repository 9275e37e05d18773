"""
Data models for planar embeddings, their duals and vertex sets measured on them.
"""
from typing import Any, List, Optional, Tuple, Type

from pydantic import BaseModel, Field, validator

from peierls.models.manifest import RunManifest
from peierls.models.utils import SCHEMA_VERSION, AutoNamedEnum


class Family(AutoNamedEnum):
    """
    The graph families the toolkit can generate:

    - **grid**: the L¹ ball of Z²
    - **box**: a width × height rectangle of Z²
    - **triangular**: a graph-distance ball of the triangular lattice
    - **hex**: a graph-distance ball of the honeycomb lattice
    - **path**: a finite piece of the bi-infinite line (hypotheses fail)
    - **cycle**: the cycle C_n
    """

    grid = "grid"
    box = "box"
    triangular = "triangular"
    hex = "hex"
    path = "path"
    cycle = "cycle"


class GraphFile(BaseModel):
    """
    A planar embedding stored as a rotation system. The rotation of each vertex
    lists its neighbours in cyclic order; adjacency lists alone would lose the
    embedding.
    """

    version: int = SCHEMA_VERSION
    vertices: int = Field(..., ge=1, description="Number of vertices V")
    rotation: List[List[int]] = Field(
        ..., description="Per vertex, the neighbour ids in cyclic order"
    )
    outer: Optional[Tuple[int, int]] = Field(
        None, description="A dart (u, v) lying on the unbounded face"
    )
    center: int = Field(0, ge=0, description="The marked vertex of the window")
    rim: Optional[List[int]] = Field(
        None, description="Vertices whose degree is truncated by the finite window"
    )
    family: Optional[Family] = None
    manifest: Optional[RunManifest] = None

    @classmethod
    def _check_rotation(
        cls: Type["GraphFile"], value: Any, values: dict
    ) -> List[List[int]]:
        """ Validate that there is exactly one rotation per vertex """
        vertices = values.get("vertices")
        if vertices is not None and len(value) != vertices:
            raise ValueError(
                f"Expected {vertices} rotations, found {len(value)} in the file!"
            )

        return value

    # Same workaround as elsewhere: mypy does not understand validator as a decorator
    # on a classmethod, so wrap the underlying function explicitly.
    check_rotation = validator("rotation")(getattr(_check_rotation, "__func__"))


class DualFile(BaseModel):
    """
    The dual multigraph G*. Dual edge i joins the two faces flanking primal edge
    star[i]'s preimage; loops and parallel edges are allowed, so edges are stored
    explicitly next to the neighbour rotation.
    """

    version: int = SCHEMA_VERSION
    vertices: int = Field(..., ge=1, description="Number of faces F")
    rotation: List[List[int]] = Field(
        ..., description="Per face, the neighbouring faces in cyclic order"
    )
    edge_rotation: List[List[int]] = Field(
        ..., description="Per face, the dual edge ids in the same cyclic order"
    )
    edges: List[Tuple[int, int]] = Field(..., description="Dual edge endpoints")
    star: List[int] = Field(..., description="Primal edge index to dual edge index")
    outer: int = Field(..., ge=0, description="The face standing for infinity")
    interior: List[int] = Field(
        [], description="Faces fully interior to the truncation"
    )
    manifest: Optional[RunManifest] = None


class Ball(BaseModel):
    """ The closed ball { u : dist(center, u) ≤ radius } """

    center: int
    radius: int = Field(..., ge=0)
    members: List[int]

    def __len__(self) -> int:
        return len(self.members)


class Region(BaseModel):
    """
    A finite vertex set S together with its edge boundary ∂S, the edges with
    exactly one endpoint in S.
    """

    members: List[int]
    boundary: List[int] = Field(..., description="Sorted primal edge ids of ∂S")
    connected: bool = True

    @property
    def size(self) -> int:
        """ |S| """
        return len(self.members)

    @property
    def perimeter(self) -> int:
        """ |∂S| """
        return len(self.boundary)
