"""
Finite planar graphs as combinatorial embeddings (rotation systems).

Every edge e is split into two darts, 2e and 2e + 1, pointing in opposite
directions, so the twin of dart d is d ^ 1. The rotation successor of a dart is
the next dart leaving the same vertex, and the face permutation is the rotation
successor of the twin. Faces are the orbits of the face permutation; the face
containing the designated outer dart stands for infinity.
"""
import logging
from functools import cached_property
from typing import IO, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from pydantic import ValidationError

from peierls.models.graph import Ball, Family, GraphFile, Region
from peierls.models.manifest import RunManifest
from peierls.utils.errors import MalformedInputError


class PlanarEmbedding:
    """
    An immutable rotation system. Dart ids are dense: edge e owns darts 2e
    (lower vertex id to higher) and 2e + 1. Edges are numbered in the order they
    are first met scanning rotations by increasing vertex id.
    """

    def __init__(
        self,
        rotation: Sequence[Sequence[int]],
        outer: Optional[Tuple[int, int]] = None,
        center: int = 0,
        rim: Optional[Iterable[int]] = None,
        family: Optional[Family] = None,
        positions: Optional[Sequence[Tuple[float, float]]] = None,
    ):
        self.rotation: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(int(w) for w in neighbors) for neighbors in rotation
        )
        self.family = family
        self._validate()

        if not 0 <= center < self.num_vertices:
            raise MalformedInputError(f"Center {center} is not a vertex!")
        self.center = center

        edges: List[Tuple[int, int]] = []
        dart_ids: Dict[Tuple[int, int], int] = {}
        for v, neighbors in enumerate(self.rotation):
            for w in neighbors:
                if v < w:
                    dart_ids[(v, w)] = 2 * len(edges)
                    dart_ids[(w, v)] = 2 * len(edges) + 1
                    edges.append((v, w))

        self.edges: Tuple[Tuple[int, int], ...] = tuple(edges)
        self.dart_ids = dart_ids

        origin = [0] * (2 * len(edges))
        for (v, w), dart in dart_ids.items():
            origin[dart] = v
        self.origin: Tuple[int, ...] = tuple(origin)

        rotation_next = [0] * len(origin)
        for v, neighbors in enumerate(self.rotation):
            for slot, w in enumerate(neighbors):
                following = neighbors[(slot + 1) % len(neighbors)]
                rotation_next[dart_ids[(v, w)]] = dart_ids[(v, following)]
        self.rotation_next: Tuple[int, ...] = tuple(rotation_next)

        self.faces, self.face_of = self._trace_faces()
        self.outer_face = self._find_outer_face(outer, positions)

        if rim is None:
            rim = self.boundary_vertices
        self.rim = frozenset(int(v) for v in rim)

    def _validate(self):
        """ Reject rotations with dangling darts, loops or repeated neighbours """
        num_vertices = len(self.rotation)
        if not num_vertices:
            raise MalformedInputError("An embedding needs at least one vertex!")

        for v, neighbors in enumerate(self.rotation):
            if len(set(neighbors)) != len(neighbors):
                raise MalformedInputError(
                    f"Vertex {v} lists a neighbour twice (duplicate dart pair)!"
                )

            for w in neighbors:
                if not 0 <= w < num_vertices:
                    raise MalformedInputError(
                        f"Dangling dart {v}->{w}: no such vertex!"
                    )
                if w == v:
                    raise MalformedInputError(f"Vertex {v} has a loop!")
                if v not in self.rotation[w]:
                    raise MalformedInputError(
                        f"Dart {v}->{w} has no twin {w}->{v}!"
                    )

    def _trace_faces(self) -> Tuple[Tuple[Tuple[int, ...], ...], Tuple[int, ...]]:
        """ Partition the darts into orbits of the face permutation """
        face_of = [-1] * len(self.origin)
        faces: List[Tuple[int, ...]] = []
        for start in range(len(self.origin)):
            if face_of[start] >= 0:
                continue

            orbit = []
            dart = start
            while face_of[dart] < 0:
                face_of[dart] = len(faces)
                orbit.append(dart)
                dart = self.face_next(dart)

            faces.append(tuple(orbit))

        return tuple(faces), tuple(face_of)

    def _find_outer_face(
        self,
        outer: Optional[Tuple[int, int]],
        positions: Optional[Sequence[Tuple[float, float]]],
    ) -> int:
        """
        Designate the unbounded face: the face of the given dart, else the face of
        largest enclosed |area| when positions are known, else the longest face.
        """
        if not self.faces:
            # A single isolated vertex has no darts; its only face is infinity
            return 0

        if outer is not None:
            dart = self.dart_ids.get((int(outer[0]), int(outer[1])))
            if dart is None:
                raise MalformedInputError(f"Outer dart {outer} is not an edge!")
            return self.face_of[dart]

        if positions is not None:
            areas = []
            for orbit in self.faces:
                twice_area = 0.0
                for dart in orbit:
                    x0, y0 = positions[self.origin[dart]]
                    x1, y1 = positions[self.target(dart)]
                    twice_area += x0 * y1 - x1 * y0
                areas.append(round(abs(twice_area), 9))
            return max(range(len(areas)), key=lambda f: (areas[f], -f))

        return max(range(len(self.faces)), key=lambda f: (len(self.faces[f]), -f))

    @property
    def num_vertices(self) -> int:
        """ V """
        return len(self.rotation)

    @property
    def num_edges(self) -> int:
        """ E """
        return len(self.edges)

    @property
    def num_faces(self) -> int:
        """ F, the number of face orbits (1 for an isolated vertex) """
        return max(len(self.faces), 1)

    def euler_characteristic(self) -> int:
        """ V − E + F, which is 2 for every connected embedding """
        return self.num_vertices - self.num_edges + self.num_faces

    @staticmethod
    def twin(dart: int) -> int:
        """ The reverse dart """
        return dart ^ 1

    def target(self, dart: int) -> int:
        """ The vertex a dart points to """
        return self.origin[dart ^ 1]

    def face_next(self, dart: int) -> int:
        """ The next dart around the face of dart """
        return self.rotation_next[dart ^ 1]

    def degree(self, v: int) -> int:
        """ Number of edges at v """
        return len(self.rotation[v])

    def neighbors(self, v: int) -> Tuple[int, ...]:
        """ Neighbours of v in rotation order """
        return self.rotation[v]

    def edge_id(self, u: int, v: int) -> int:
        """ The id of the edge joining u and v """
        return self.dart_ids[(u, v)] // 2

    @property
    def outer_dart(self) -> Optional[Tuple[int, int]]:
        """ The lowest dart on the outer face, as (origin, target) """
        if not self.faces:
            return None

        dart = min(self.faces[self.outer_face])
        return (self.origin[dart], self.target(dart))

    @cached_property
    def boundary_vertices(self) -> frozenset:
        """ Vertices on the unbounded face """
        if not self.faces:
            return frozenset(range(self.num_vertices))
        return frozenset(self.origin[dart] for dart in self.faces[self.outer_face])

    @cached_property
    def graph(self) -> nx.Graph:
        """ The underlying simple graph, edges annotated with their id """
        graph = nx.Graph()
        graph.add_nodes_from(range(self.num_vertices))
        graph.add_edges_from(
            (u, v, {"id": edge}) for edge, (u, v) in enumerate(self.edges)
        )
        return graph

    def is_connected(self) -> bool:
        """ Whether the underlying graph is connected """
        return nx.is_connected(self.graph)

    def boundary(self, members: Iterable[int]) -> List[int]:
        """ Sorted ids of the edges with exactly one endpoint in members """
        inside = set(members)
        return sorted(
            self.edge_id(v, w)
            for v in inside
            for w in self.rotation[v]
            if w not in inside
        )

    def region(self, members: Iterable[int]) -> Region:
        """ Wrap a vertex set with its boundary """
        inside = sorted(set(members))
        connected = bool(inside) and nx.is_connected(self.graph.subgraph(inside))
        return Region(
            members=inside, boundary=self.boundary(inside), connected=connected
        )

    def to_model(self, manifest: Optional[RunManifest] = None) -> GraphFile:
        """ Convert to the file model """
        return GraphFile(
            vertices=self.num_vertices,
            rotation=[list(neighbors) for neighbors in self.rotation],
            outer=self.outer_dart,
            center=self.center,
            rim=sorted(self.rim),
            family=self.family,
            manifest=manifest,
        )

    @classmethod
    def from_model(cls, model: GraphFile) -> "PlanarEmbedding":
        """ Build an embedding from the file model """
        return cls(
            model.rotation,
            outer=model.outer,
            center=model.center,
            rim=model.rim,
            family=model.family,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlanarEmbedding):
            return NotImplemented

        return (
            self.rotation == other.rotation
            and self.outer_face == other.outer_face
            and self.center == other.center
            and self.rim == other.rim
        )

    def __hash__(self) -> int:
        return hash((self.rotation, self.outer_face, self.center))

    def __repr__(self) -> str:
        return (
            f"PlanarEmbedding(V={self.num_vertices}, E={self.num_edges}, "
            f"F={self.num_faces}, family={self.family})"
        )


def distances(emb: PlanarEmbedding, v: int, cutoff: Optional[int] = None) -> Dict[int, int]:
    """ Graph distances from v, optionally only up to cutoff """
    return nx.single_source_shortest_path_length(emb.graph, v, cutoff=cutoff)


def rim_distance(emb: PlanarEmbedding, v: int) -> float:
    """
    Distance from v to the nearest vertex whose degree is truncated by the window.
    Balls up to this radius are exact.
    """
    if not emb.rim:
        return float("inf")

    lengths = distances(emb, v)
    return min((lengths[u] for u in emb.rim if u in lengths), default=float("inf"))


def boundary_distance(emb: PlanarEmbedding, v: int) -> float:
    """ Distance from v to the nearest vertex on the unbounded face """
    lengths = distances(emb, v)
    return min(
        (lengths[u] for u in emb.boundary_vertices if u in lengths),
        default=float("inf"),
    )


def ball(emb: PlanarEmbedding, v: int, r: int) -> Ball:
    """ The closed graph-metric ball of radius r around v """
    if not 0 <= v < emb.num_vertices:
        raise MalformedInputError(f"Vertex {v} is not in the embedding!")
    if r < 0:
        raise MalformedInputError(f"Radius must be nonnegative, not {r}!")

    return Ball(center=v, radius=r, members=sorted(distances(emb, v, cutoff=r)))


def faces(emb: PlanarEmbedding) -> List[List[int]]:
    """ The face orbits, each a list of darts in traversal order """
    return [list(orbit) for orbit in emb.faces]


def save(emb: PlanarEmbedding, stream: IO[str], manifest: Optional[RunManifest] = None):
    """ Write the embedding as JSON """
    stream.write(emb.to_model(manifest).json())


def load(stream: IO[str]) -> PlanarEmbedding:
    """ Read an embedding written by save, validating the rotation data """
    try:
        model = GraphFile.parse_raw(stream.read())
    except ValidationError as e:
        logging.warning("Rejected malformed graph file: %s", str(e))
        raise MalformedInputError(f"Malformed graph file: {e}") from e

    return PlanarEmbedding.from_model(model)
