"""
Generators for the standard graph families. Balls are grown by breadth-first
search over lattice offsets listed in geometric rotation order, so the center is
always vertex 0 and the rotation system is the one of the straight-line drawing.
"""
import math
from collections import deque
from typing import Callable, Dict, List, Sequence, Tuple

from peierls.graph.embedding import PlanarEmbedding
from peierls.models.graph import Family
from peierls.utils.errors import MalformedInputError

Point = Tuple[int, int]
Offsets = Callable[[Point], Sequence[Point]]
Placement = Callable[[Point], Tuple[float, float]]

# Compass order N, E, S, W
SQUARE_OFFSETS: Tuple[Point, ...] = ((0, 1), (1, 0), (0, -1), (-1, 0))

# Axial coordinates, counterclockwise from east
TRIANGULAR_OFFSETS: Tuple[Point, ...] = (
    (1, 0),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (0, -1),
    (1, -1),
)

# Honeycomb in units of (√3/2, 1/2); the two sublattices point opposite ways
HEX_UP_OFFSETS: Tuple[Point, ...] = ((0, 2), (-1, -1), (1, -1))
HEX_DOWN_OFFSETS: Tuple[Point, ...] = ((0, -2), (1, 1), (-1, 1))


def _lattice_ball(
    offsets: Offsets, place: Placement, radius: int, family: Family
) -> PlanarEmbedding:
    """ The induced subgraph on the graph-distance ball of the origin """
    if radius < 1:
        raise MalformedInputError(f"Radius must be at least 1, not {radius}!")

    index: Dict[Point, int] = {(0, 0): 0}
    points: List[Point] = [(0, 0)]
    depth = [0]
    queue = deque([(0, 0)])
    while queue:
        point = queue.popleft()
        if depth[index[point]] == radius:
            continue

        for dx, dy in offsets(point):
            step = (point[0] + dx, point[1] + dy)
            if step not in index:
                index[step] = len(points)
                points.append(step)
                depth.append(depth[index[point]] + 1)
                queue.append(step)

    rotation = []
    rim = []
    for point in points:
        lattice_neighbors = [(point[0] + dx, point[1] + dy) for dx, dy in offsets(point)]
        rotation.append([index[n] for n in lattice_neighbors if n in index])
        if any(n not in index for n in lattice_neighbors):
            rim.append(index[point])

    return PlanarEmbedding(
        rotation,
        center=0,
        rim=rim,
        family=family,
        positions=[place(point) for point in points],
    )


def make_grid_ball(radius: int) -> PlanarEmbedding:
    """ Z² restricted to the L¹ ball of the given radius; V = 2r² + 2r + 1 """
    return _lattice_ball(
        lambda point: SQUARE_OFFSETS,
        lambda point: (float(point[0]), float(point[1])),
        radius,
        Family.grid,
    )


def make_triangular_ball(radius: int) -> PlanarEmbedding:
    """ Triangular lattice ball; V = 3r² + 3r + 1 """
    return _lattice_ball(
        lambda point: TRIANGULAR_OFFSETS,
        lambda point: (point[0] + point[1] / 2, point[1] * math.sqrt(3) / 2),
        radius,
        Family.triangular,
    )


def make_hex_ball(radius: int) -> PlanarEmbedding:
    """
    Honeycomb lattice ball around a vertex. Balls of radius ≤ 2 are trees, the
    first hexagons close at radius 3.
    """
    return _lattice_ball(
        lambda point: HEX_UP_OFFSETS if point[1] % 3 == 0 else HEX_DOWN_OFFSETS,
        lambda point: (point[0] * math.sqrt(3) / 2, point[1] / 2),
        radius,
        Family.hex,
    )


def make_grid_box(width: int, height: int) -> PlanarEmbedding:
    """ The width × height rectangle of Z², vertex id = y * width + x """
    if width < 1 or height < 1 or width * height < 2:
        raise MalformedInputError(f"Box {width}x{height} is too small!")

    rotation = []
    rim = []
    for y in range(height):
        for x in range(width):
            neighbors = [(x + dx, y + dy) for dx, dy in SQUARE_OFFSETS]
            rotation.append(
                [
                    ny * width + nx
                    for nx, ny in neighbors
                    if 0 <= nx < width and 0 <= ny < height
                ]
            )
            if len(rotation[-1]) < len(SQUARE_OFFSETS):
                rim.append(y * width + x)

    return PlanarEmbedding(
        rotation,
        center=(height // 2) * width + width // 2,
        rim=rim,
        family=Family.box,
        positions=[(float(i % width), float(i // width)) for i in range(width * height)],
    )


def make_path(n: int) -> PlanarEmbedding:
    """
    A path on n vertices: a finite window of the bi-infinite line, whose
    isoperimetric dimension is 1.
    """
    if n < 2:
        raise MalformedInputError(f"A path needs at least 2 vertices, not {n}!")

    rotation = [[w for w in (v - 1, v + 1) if 0 <= w < n] for v in range(n)]
    return PlanarEmbedding(
        rotation,
        center=n // 2,
        rim=[0, n - 1],
        family=Family.path,
        positions=[(float(v), 0.0) for v in range(n)],
    )


def make_cycle(n: int) -> PlanarEmbedding:
    """ The cycle C_n drawn as a regular polygon """
    if n < 3:
        raise MalformedInputError(f"A cycle needs at least 3 vertices, not {n}!")

    return PlanarEmbedding(
        [[(v - 1) % n, (v + 1) % n] for v in range(n)],
        center=0,
        rim=[],
        family=Family.cycle,
        positions=[
            (math.cos(2 * math.pi * v / n), math.sin(2 * math.pi * v / n))
            for v in range(n)
        ],
    )


def make_family(
    family: Family, radius: int, width: int = 0, height: int = 0
) -> PlanarEmbedding:
    """
    Generate a member of a family. For paths and cycles the radius is the number
    of vertices beyond the center on each side; boxes use width and height,
    defaulting to a (2r + 1)-square.
    """
    if family is Family.grid:
        return make_grid_ball(radius)
    if family is Family.triangular:
        return make_triangular_ball(radius)
    if family is Family.hex:
        return make_hex_ball(radius)
    if family is Family.path:
        return make_path(2 * radius + 1)
    if family is Family.cycle:
        return make_cycle(max(2 * radius + 1, 3))
    if family is Family.box:
        return make_grid_box(width or 2 * radius + 1, height or 2 * radius + 1)

    raise MalformedInputError(f"Unknown family {family}!")
