"""
The dual multigraph G* and the correspondence between minimal cut-sets of G and
simple cycles of G*.

Faces of G are traced directly on the rotation system, so dual vertex f is the
f-th face orbit and dual edge e* joins the faces of the two darts of e. A bridge
has the same face on both sides and becomes a loop; two faces sharing several
edges become joined by parallel edges.

The dual implemented here is the one required by the Peierls argument: a cut-set
must leave v in a finite component. In a finite window "finite" means the
component avoids the vertices of the unbounded face. On a path (a window of the
bi-infinite line) every edge is a loop at the single face, while cutting one
edge separates the two ends; bond-style duals identify these differently.
"""
import logging
from functools import cached_property
from typing import IO, Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
from pydantic import BaseModel, Field, ValidationError

from peierls.graph.embedding import PlanarEmbedding
from peierls.models.graph import DualFile, Region
from peierls.models.manifest import RunManifest
from peierls.utils.errors import DualityError, MalformedInputError


class DualCycle(BaseModel):
    """ A simple closed path of G*: its edges in order and the faces it visits """

    edges: List[int] = Field(..., description="Dual edge ids in traversal order")
    faces: List[int] = Field(..., description="Faces visited, faces[i] starts edge i")

    def __len__(self) -> int:
        return len(self.edges)


class DualGraph:
    """
    G* together with the bijection star between primal and dual edges. The edge
    rotation of a face lists its dual edges in the cyclic order of its boundary
    walk, which is the rotation system of the dual embedding.
    """

    def __init__(
        self,
        edges: Sequence[Tuple[int, int]],
        edge_rotation: Sequence[Sequence[int]],
        star: Sequence[int],
        outer: int,
        interior: Iterable[int] = (),
    ):
        self.edges: Tuple[Tuple[int, int], ...] = tuple(
            (int(a), int(b)) for a, b in edges
        )
        self.edge_rotation: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(int(e) for e in face) for face in edge_rotation
        )
        self.star: Tuple[int, ...] = tuple(int(e) for e in star)
        self.outer = int(outer)

        if sorted(self.star) != list(range(len(self.edges))):
            raise MalformedInputError("The star map is not a bijection of edges!")
        if not 0 <= self.outer < self.num_vertices:
            raise MalformedInputError(f"Outer face {outer} does not exist!")
        for a, b in self.edges:
            if not (0 <= a < self.num_vertices and 0 <= b < self.num_vertices):
                raise MalformedInputError(f"Dual edge ({a}, {b}) is dangling!")

        self.star_inverse: Tuple[int, ...] = tuple(
            primal for primal, _ in sorted(enumerate(self.star), key=lambda p: p[1])
        )

        self.interior: Tuple[int, ...] = tuple(sorted(int(f) for f in interior))
        if not self.interior:
            self.interior = tuple(f for f in range(self.num_vertices) if f != outer)

    @property
    def num_vertices(self) -> int:
        """ Number of faces of the primal embedding """
        return len(self.edge_rotation)

    @property
    def num_edges(self) -> int:
        """ Equal to the number of primal edges """
        return len(self.edges)

    def degree(self, face: int) -> int:
        """ Dual degree, a loop counting twice """
        return len(self.edge_rotation[face])

    def other_end(self, edge: int, face: int) -> int:
        """ The endpoint of a dual edge opposite to face """
        a, b = self.edges[edge]
        return b if a == face else a

    def rotation(self, face: int) -> List[int]:
        """ Neighbouring faces in cyclic order (repeated for parallel edges) """
        return [self.other_end(edge, face) for edge in self.edge_rotation[face]]

    @cached_property
    def adjacency(self) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
        """ Per face, (dual edge, neighbour) pairs in edge-id order, loops omitted """
        neighbors: List[List[Tuple[int, int]]] = [[] for _ in range(self.num_vertices)]
        for edge, (a, b) in enumerate(self.edges):
            if a != b:
                neighbors[a].append((edge, b))
                neighbors[b].append((edge, a))

        return tuple(tuple(pairs) for pairs in neighbors)

    @cached_property
    def multigraph(self) -> nx.MultiGraph:
        """ G* as a networkx multigraph keyed by dual edge id """
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.num_vertices))
        graph.add_edges_from((a, b, edge) for edge, (a, b) in enumerate(self.edges))
        return graph

    def to_model(self, manifest: Optional[RunManifest] = None) -> DualFile:
        """ Convert to the file model """
        return DualFile(
            vertices=self.num_vertices,
            rotation=[self.rotation(face) for face in range(self.num_vertices)],
            edge_rotation=[list(face) for face in self.edge_rotation],
            edges=list(self.edges),
            star=list(self.star),
            outer=self.outer,
            interior=list(self.interior),
            manifest=manifest,
        )

    @classmethod
    def from_model(cls, model: DualFile) -> "DualGraph":
        """ Build a dual graph from the file model """
        if len(model.edge_rotation) != model.vertices:
            raise MalformedInputError("Expected one edge rotation per dual vertex!")

        return cls(
            model.edges, model.edge_rotation, model.star, model.outer, model.interior
        )


def dualize(emb: PlanarEmbedding, outer: Optional[int] = None) -> DualGraph:
    """
    Construct G*: one vertex per face orbit and one dual edge per primal edge,
    joining the faces on its two sides. The dual edge of primal edge e has id e.
    """
    if not emb.is_connected():
        raise MalformedInputError("Cannot dualize a disconnected embedding!")

    if outer is None:
        outer = emb.outer_face
    elif not 0 <= outer < emb.num_faces:
        raise MalformedInputError(f"Face {outer} does not exist!")

    edges = [
        (emb.face_of[2 * edge], emb.face_of[2 * edge + 1])
        for edge in range(emb.num_edges)
    ]
    edge_rotation = [[dart // 2 for dart in orbit] for orbit in emb.faces]
    if not edge_rotation:
        edge_rotation = [[]]

    interior = [
        face
        for face, orbit in enumerate(emb.faces)
        if face != outer and not any(emb.origin[dart] in emb.rim for dart in orbit)
    ]

    logging.info(
        "Dualized V=%d E=%d into F=%d faces (%d interior)",
        emb.num_vertices,
        emb.num_edges,
        len(edge_rotation),
        len(interior),
    )
    return DualGraph(edges, edge_rotation, range(emb.num_edges), outer, interior)


def cutset_to_dual(dual: DualGraph, cut: Iterable[int]) -> List[int]:
    """ The star-image of a set of primal edges, sorted """
    image = []
    for edge in set(cut):
        if not 0 <= edge < dual.num_edges:
            raise MalformedInputError(f"Edge {edge} is not a primal edge!")
        image.append(dual.star[edge])

    return sorted(image)


def as_cycle(dual: DualGraph, edges: Iterable[int]) -> DualCycle:
    """
    Order a set of dual edges into a simple closed path, or raise DualityError if
    the set is not one. A loop is a cycle of length 1 and two parallel edges form
    a cycle of length 2.
    """
    remaining = set(edges)
    if not remaining:
        raise DualityError("An empty edge set is not a cycle!")
    for edge in remaining:
        if not 0 <= edge < dual.num_edges:
            raise MalformedInputError(f"Edge {edge} is not a dual edge!")

    incident: Dict[int, List[int]] = {}
    for edge in remaining:
        a, b = dual.edges[edge]
        incident.setdefault(a, []).append(edge)
        incident.setdefault(b, []).append(edge)

    if any(len(around) != 2 for around in incident.values()):
        raise DualityError("Edge set visits a dual vertex other than twice!")

    first = min(remaining)
    start = dual.edges[first][0]
    ordered, visited = [first], [start]
    face = dual.other_end(first, start)
    remaining.discard(first)
    while face != start:
        following = next((e for e in incident[face] if e in remaining), None)
        if following is None:
            raise DualityError("Edge set is not a single closed path!")
        ordered.append(following)
        visited.append(face)
        remaining.discard(following)
        face = dual.other_end(following, face)

    if remaining:
        raise DualityError("Edge set consists of several disjoint cycles!")

    return DualCycle(edges=ordered, faces=visited)


def dual_cycle_to_cutset(
    emb: PlanarEmbedding, dual: DualGraph, cycle: Sequence[int]
) -> Region:
    """
    The region Q enclosed by a simple dual cycle: its star-preimage is ∂Q. Q is
    the side away from the face chosen as unbounded, so cycles through that face
    enclose nothing finite and are rejected.
    """
    ordered = as_cycle(dual, cycle)
    if dual.outer in ordered.faces:
        raise DualityError("Cycle passes through the unbounded face!")

    cut = {dual.star_inverse[edge] for edge in ordered.edges}
    remaining = emb.graph.copy()
    remaining.remove_edges_from(emb.edges[edge] for edge in cut)

    unbounded = {emb.origin[dart] for dart in emb.faces[dual.outer]}
    inside: Set[int] = set()
    for component in nx.connected_components(remaining):
        if not component & unbounded:
            inside |= component

    region = emb.region(inside)
    if not inside or set(region.boundary) != cut:
        raise DualityError("Cycle does not bound a finite region!")

    return region


def finite_side(emb: PlanarEmbedding, v: int, cut: Iterable[int]) -> Optional[Set[int]]:
    """
    The component of v once cut is removed, or None if it reaches the unbounded
    face (then cut is not a cut-set of v).
    """
    remaining = emb.graph.copy()
    remaining.remove_edges_from(emb.edges[edge] for edge in set(cut))
    component = nx.node_connected_component(remaining, v)
    if component & emb.boundary_vertices:
        return None

    return component


def is_minimal_cutset(emb: PlanarEmbedding, v: int, cut: Iterable[int]) -> bool:
    """
    Whether cut puts v in a finite component while no proper subset does. That
    holds exactly when cut = ∂S for the finite side S and the rest of the graph
    stays connected, so every cut edge has its other end joined to infinity.
    """
    cut = set(cut)
    for edge in cut:
        if not 0 <= edge < emb.num_edges:
            raise MalformedInputError(f"Edge {edge} is not a primal edge!")

    side = finite_side(emb, v, cut)
    if side is None:
        return False
    if set(emb.boundary(side)) != cut:
        return False

    rest = emb.graph.subgraph(set(range(emb.num_vertices)) - side)
    return nx.is_connected(rest)


def save_dual(dual: DualGraph, stream: IO[str], manifest: Optional[RunManifest] = None):
    """ Write the dual as JSON """
    stream.write(dual.to_model(manifest).json())


def load_dual(stream: IO[str]) -> DualGraph:
    """ Read a dual written by save_dual """
    try:
        model = DualFile.parse_raw(stream.read())
    except ValidationError as e:
        logging.warning("Rejected malformed dual file: %s", str(e))
        raise MalformedInputError(f"Malformed dual file: {e}") from e

    return DualGraph.from_model(model)
