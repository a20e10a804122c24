"""Modulus as the minimum of the Dirichlet integral, by piecewise-linear finite elements.

The energy of the discrete potential of (Q; a, b, c, d) is an upper bound for its modulus, and
the reciprocal energy of the rotated labeling (b, c, d, a) is a lower bound. Meshes of one
polygon are nested: the coarse mesh is graded toward the polygon corners and every further
level splits each triangle into four.
"""

import dataclasses
import json
import logging
import math
import pathlib
import typing as t
import warnings

import numpy as np
import scipy.sparse
import scipy.sparse.linalg
import shapely.geometry
import triangle

from .exceptions import MeshFailure, OutOfRange, SingularSystem, ToleranceNotReached
from .geometry import GEOMETRY_TOL, signed_area, validate
from .quadrilateral import Quadrilateral, SideLabel, to_point
from .sc_solver import Method, ModulusEstimate

__all__ = [
    'DEFAULT_LEVELS', 'DEFAULT_GRADING', 'DEFAULT_FEM_TOL', 'MAX_LEVELS', 'MarkedPolygon', 'Mesh',
    'BVPSolution', 'Bracket', 'triangulate', 'refine', 'solve_energy', 'modulus_bracket',
    'modulus_fem']

_LOG = logging.getLogger(__name__)

DEFAULT_LEVELS = 4

DEFAULT_GRADING = 2.0

DEFAULT_FEM_TOL = 1e-2

MAX_LEVELS = 5

INITIAL_H_DIVISOR = 8


class MarkedPolygon:
    """Simple counterclockwise polygon with four marked vertices a, b, c, d among its corners.

    Each side of the quadrilateral is the boundary polyline between consecutive marks.
    """

    @classmethod
    def from_quadrilateral(cls, q: Quadrilateral) -> 'MarkedPolygon':
        return cls(validate(q).vertices, (0, 1, 2, 3))

    def __init__(self, vertices: t.Sequence[complex], marks: t.Sequence[int]):
        self.vertices = tuple(to_point(_, f'vertex {i}') for i, _ in enumerate(vertices))
        n = len(self.vertices)
        if n < 3:
            raise ValueError(f'polygon needs at least 3 vertices, got {n}')
        if len(marks) != 4 or len(set(marks)) != 4 or not all(0 <= _ < n for _ in marks):
            raise ValueError(f'marks={repr(marks)} are not 4 distinct vertex indices of {n}')
        start = marks[0]
        # marks must appear in boundary order starting from mark a
        offsets = [(_ - start) % n for _ in marks]
        if offsets != sorted(offsets):
            raise ValueError(f'marks={repr(marks)} do not follow the boundary order')
        self.marks = tuple(marks)
        polygon = shapely.geometry.Polygon([(_.real, _.imag) for _ in self.vertices])
        if not polygon.is_valid or not polygon.exterior.is_simple:
            raise MeshFailure(f'polygon {self.vertices} is not simple')
        if signed_area(self.vertices) <= 0:
            raise MeshFailure(f'polygon {self.vertices} is not oriented counterclockwise')

    def edge_labels(self) -> t.List[SideLabel]:
        """Side label of every polygon edge (i, i + 1)."""
        n = len(self.vertices)
        labels = []
        for i in range(n):
            for label in SideLabel:
                start = self.marks[label.start]
                end = self.marks[label.end]
                if (i - start) % n < (end - start) % n:
                    labels.append(label)
                    break
        return labels

    def rotated(self) -> 'MarkedPolygon':
        """Same polygon labeled (b, c, d, a)."""
        return MarkedPolygon(self.vertices, self.marks[1:] + self.marks[:1])

    def diameter(self) -> float:
        return max(abs(p - q) for p in self.vertices for q in self.vertices)

    def __repr__(self):
        return f'{type(self).__name__}({self.vertices}, {self.marks})'


@dataclasses.dataclass
class Mesh:
    """Triangulation with boundary edges labeled by quadrilateral side."""

    points: np.ndarray
    triangles: np.ndarray
    boundary_edges: t.List[t.Tuple[int, int, SideLabel]]

    def areas(self) -> np.ndarray:
        p = self.points[self.triangles]
        u, v = p[:, 1] - p[:, 0], p[:, 2] - p[:, 0]
        return (u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]) / 2

    def diameters(self) -> np.ndarray:
        p = self.points[self.triangles]
        return np.max([np.linalg.norm(p[:, i] - p[:, (i + 1) % 3], axis=1) for i in range(3)],
                      axis=0)

    def relabeled(self, steps: int = 1) -> 'Mesh':
        """Same mesh with side labels of the rotated labeling."""
        return Mesh(self.points, self.triangles,
                    [(i, j, label.rotated(steps)) for i, j, label in self.boundary_edges])

    def side_nodes(self, label: SideLabel) -> np.ndarray:
        """Nodes on the closed side carrying label."""
        return np.unique([_ for i, j, side in self.boundary_edges if side == label
                          for _ in (i, j)]).astype(int)

    def to_dict(self) -> dict:
        return {
            'points': self.points.tolist(),
            'triangles': self.triangles.tolist(),
            'boundary_edges': [[int(i), int(j), str(label)] for i, j, label in self.boundary_edges]}

    def dump(self, path: pathlib.Path) -> None:
        with pathlib.Path(path).open('w') as mesh_file:
            json.dump(self.to_dict(), mesh_file)


@dataclasses.dataclass
class BVPSolution:
    """Discrete potential and its Dirichlet energy."""

    nodal_values: np.ndarray
    energy: float


@dataclasses.dataclass(frozen=True)
class Bracket:
    """Two-sided bound of a modulus with an extrapolated estimate inside."""

    lower: float
    upper: float
    estimate: float
    levels: int

    def __post_init__(self):
        if not 0 < self.lower <= self.estimate <= self.upper:
            raise OutOfRange(f'{repr(self)} is not an ordered positive bracket')

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def __contains__(self, value: float) -> bool:
        return self.lower <= value <= self.upper

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def _as_polygon(domain: t.Union[Quadrilateral, MarkedPolygon]) -> MarkedPolygon:
    if isinstance(domain, Quadrilateral):
        return MarkedPolygon.from_quadrilateral(domain)
    if isinstance(domain, MarkedPolygon):
        return domain
    raise TypeError(f'domain={repr(domain)} is of wrong type {type(domain)}')


def _coarse_triangles(polygon: MarkedPolygon) -> np.ndarray:
    n = len(polygon.vertices)
    data = {
        'vertices': np.array([[_.real, _.imag] for _ in polygon.vertices]),
        'segments': np.array([[i, (i + 1) % n] for i in range(n)])}
    result = triangle.triangulate(data, 'p')
    if len(result.get('vertices', [])) != n or 'triangles' not in result:
        raise MeshFailure(f'constrained triangulation of {repr(polygon)} added or lost vertices')
    triangles = np.asarray(result['triangles'], dtype=int)
    corners = data['vertices'][triangles]
    u, v = corners[:, 1] - corners[:, 0], corners[:, 2] - corners[:, 0]
    clockwise = u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0] < 0
    triangles[clockwise] = triangles[clockwise][:, ::-1]
    return triangles


def _graded(weights: np.ndarray, grading: float) -> np.ndarray:
    powered = weights ** grading
    return powered / powered.sum()


def triangulate(domain: t.Union[Quadrilateral, MarkedPolygon], target_h: float,
                grading: float = DEFAULT_GRADING) -> Mesh:
    """Coarse mesh: every constrained triangle is split into a lattice of n^2 triangles.

    Lattice points are placed at barycentric coordinates raised to the power grading and
    renormalized, which concentrates elements at the corners. The placement of points on an edge
    depends only on that edge, hence neighbouring triangles match.
    """
    polygon = _as_polygon(domain)
    if not target_h > 0:
        raise OutOfRange(f'target_h={repr(target_h)} is not positive')
    if not grading >= 1:
        raise OutOfRange(f'grading={repr(grading)} is less than 1')
    corners = np.array(polygon.vertices)
    coarse = _coarse_triangles(polygon)
    longest = max(abs(corners[i] - corners[j])
                  for tri in coarse for i, j in zip(tri, np.roll(tri, 1)))
    n = max(1, math.ceil(grading * longest / target_h))
    _LOG.debug('triangulating %s with %i coarse triangles, %i divisions', polygon, len(coarse), n)

    index: t.Dict[tuple, int] = {}
    points: t.List[complex] = []

    def node(ids: t.Sequence[int], numerators: t.Sequence[int]) -> int:
        key = tuple(sorted((int(i), int(k)) for i, k in zip(ids, numerators) if k > 0))
        if key not in index:
            weights = _graded(np.array([k for _, k in key], dtype=float) / n, grading)
            index[key] = len(points)
            points.append(complex(np.dot(weights, corners[[i for i, _ in key]])))
        return index[key]

    triangles = []
    for tri in coarse:
        lattice = {}
        for i in range(n + 1):
            for j in range(n + 1 - i):
                lattice[i, j] = node(tri, (n - i - j, i, j))
        for i in range(n):
            for j in range(n - i):
                triangles.append((lattice[i, j], lattice[i + 1, j], lattice[i, j + 1]))
                if i + j < n - 1:
                    triangles.append((lattice[i + 1, j], lattice[i + 1, j + 1], lattice[i, j + 1]))

    count = len(corners)
    boundary_edges = []
    for k, label in enumerate(polygon.edge_labels()):
        first, second = k, (k + 1) % count
        chain = [node((first, second), (n - m, m)) for m in range(n + 1)]
        boundary_edges.extend((i, j, label) for i, j in zip(chain, chain[1:]))

    mesh = Mesh(np.array([[_.real, _.imag] for _ in points]),
                np.array(triangles, dtype=int).reshape(-1, 3), boundary_edges)
    _check(mesh, polygon)
    return mesh


def _check(mesh: Mesh, polygon: MarkedPolygon) -> None:
    areas = mesh.areas()
    total = signed_area(polygon.vertices)
    if areas.min() <= GEOMETRY_TOL * total:
        raise MeshFailure(
            f'mesh of {repr(polygon)} has a degenerate or inverted triangle, area {areas.min()}')
    if abs(areas.sum() - total) > 1e-9 * total:
        raise MeshFailure(f'mesh area {areas.sum()} does not cover polygon area {total}')


def refine(mesh: Mesh) -> Mesh:
    """Split every triangle into four at its edge midpoints."""
    points = list(map(tuple, mesh.points))
    midpoints: t.Dict[t.Tuple[int, int], int] = {}

    def midpoint(i: int, j: int) -> int:
        key = (min(i, j), max(i, j))
        if key not in midpoints:
            midpoints[key] = len(points)
            points.append(tuple((mesh.points[i] + mesh.points[j]) / 2))
        return midpoints[key]

    triangles = []
    for p0, p1, p2 in mesh.triangles:
        m01, m12, m20 = midpoint(p0, p1), midpoint(p1, p2), midpoint(p2, p0)
        triangles.extend([(p0, m01, m20), (m01, p1, m12), (m20, m12, p2), (m01, m12, m20)])
    boundary_edges = []
    for i, j, label in mesh.boundary_edges:
        middle = midpoint(i, j)
        boundary_edges.extend([(i, middle, label), (middle, j, label)])
    return Mesh(np.array(points), np.array(triangles, dtype=int), boundary_edges)


def _stiffness(mesh: Mesh) -> scipy.sparse.csr_matrix:
    p = mesh.points[mesh.triangles]
    # edge opposite to local vertex k
    edges = np.stack([p[:, 2] - p[:, 1], p[:, 0] - p[:, 2], p[:, 1] - p[:, 0]], axis=1)
    areas = mesh.areas()
    local = np.einsum('tid,tjd->tij', edges, edges) / (4 * areas[:, None, None])
    rows = np.repeat(mesh.triangles, 3, axis=1).ravel()
    cols = np.tile(mesh.triangles, (1, 3)).ravel()
    size = len(mesh.points)
    return scipy.sparse.coo_matrix((local.ravel(), (rows, cols)), shape=(size, size)).tocsr()


def solve_energy(mesh: Mesh, stiffness: t.Optional[scipy.sparse.csr_matrix] = None) -> BVPSolution:
    """Minimize the discrete Dirichlet integral with values 1 on side BC and 0 on side DA."""
    if stiffness is None:
        stiffness = _stiffness(mesh)
    ones, zeros = mesh.side_nodes(SideLabel.BC), mesh.side_nodes(SideLabel.DA)
    if len(ones) == 0 or len(zeros) == 0:
        raise SingularSystem('mesh has no nodes on side BC or on side DA')
    if np.intersect1d(ones, zeros).size:
        raise SingularSystem('sides BC and DA of the mesh share nodes')
    values = np.zeros(len(mesh.points))
    values[ones] = 1.0
    fixed = np.zeros(len(mesh.points), dtype=bool)
    fixed[ones] = fixed[zeros] = True
    free = np.flatnonzero(~fixed)
    if free.size:
        system = stiffness[free][:, free].tocsc()
        rhs = -stiffness[free][:, fixed] @ values[fixed]
        with warnings.catch_warnings():
            warnings.simplefilter('error', scipy.sparse.linalg.MatrixRankWarning)
            try:
                solution = scipy.sparse.linalg.spsolve(system, rhs)
            except scipy.sparse.linalg.MatrixRankWarning as err:
                raise SingularSystem(f'stiffness matrix of {len(free)} free nodes is singular') \
                    from err
        residual = np.linalg.norm(system @ solution - rhs)
        if not np.isfinite(solution).all() or residual > 1e-10 * max(1.0, np.linalg.norm(rhs)):
            raise SingularSystem(f'linear solve failed with residual {residual}')
        values[free] = solution
    energy = float(values @ (stiffness @ values))
    if values.min() < -1e-12 or values.max() > 1 + 1e-12:
        _LOG.debug('discrete maximum principle violated: values in [%g, %g]',
                   values.min(), values.max())
    return BVPSolution(values, energy)


@dataclasses.dataclass
class _Level:
    mesh: Mesh
    direct: float
    rotated: float


def _levels(polygon: MarkedPolygon, grading: float, target_h: t.Optional[float]
            ) -> t.Iterator[_Level]:
    """Energies of the direct and rotated labelings on successively refined nested meshes."""
    if target_h is None:
        target_h = polygon.diameter() / INITIAL_H_DIVISOR
    mesh = triangulate(polygon, target_h, grading)
    while True:
        stiffness = _stiffness(mesh)
        direct = solve_energy(mesh, stiffness).energy
        rotated = solve_energy(mesh.relabeled(), stiffness).energy
        _LOG.debug('%i triangles: energies %.12g and %.12g', len(mesh.triangles), direct, rotated)
        yield _Level(mesh, direct, rotated)
        mesh = refine(mesh)


def _extrapolate(energies: t.Sequence[float]) -> float:
    """Richardson extrapolation with the order observed on the last three levels."""
    if len(energies) < 2:
        return energies[-1]
    last, previous = energies[-1], energies[-2]
    difference = previous - last
    if abs(difference) <= 1e-14 * abs(last):
        return last
    order = 2.0
    if len(energies) >= 3:
        ratio = (energies[-3] - previous) / difference
        if math.isfinite(ratio) and ratio > 1:
            order = math.log2(ratio)
    return last - difference / (2 ** order - 1)


def _bracket(levels: t.Sequence[_Level]) -> Bracket:
    upper = levels[-1].direct
    # equal up to rounding when the discrete potentials are exact
    lower = min(1 / levels[-1].rotated, upper)
    estimate = min(max(_extrapolate([_.direct for _ in levels]), lower), upper)
    return Bracket(lower, upper, estimate, len(levels))


def modulus_bracket(domain: t.Union[Quadrilateral, MarkedPolygon], levels: int = DEFAULT_LEVELS,
                    grading: float = DEFAULT_GRADING, target_h: t.Optional[float] = None,
                    mesh_dump: t.Optional[pathlib.Path] = None) -> Bracket:
    """Bracket from the finest of levels nested meshes.

    A reflex corner slows the narrowing: with the angle of about 1.4 pi in
    (0, 2, 1 + 0.4i, 1 + 2i) four levels leave a width of about 1e-2 and five about 6e-3.
    """
    if levels < 2:
        raise OutOfRange(f'levels={repr(levels)} must be at least 2')
    computed = []
    for level in _levels(_as_polygon(domain), grading, target_h):
        computed.append(level)
        if len(computed) == levels:
            break
    if mesh_dump is not None:
        computed[-1].mesh.dump(mesh_dump)
    return _bracket(computed)


def modulus_fem(domain: t.Union[Quadrilateral, MarkedPolygon], tol: float = DEFAULT_FEM_TOL,
                max_levels: int = MAX_LEVELS, grading: float = DEFAULT_GRADING,
                mesh_dump: t.Optional[pathlib.Path] = None) -> ModulusEstimate:
    """Refine until the bracket is narrower than tol."""
    computed = []
    bracket = None
    for level in _levels(_as_polygon(domain), grading, None):
        computed.append(level)
        if len(computed) < 2:
            continue
        bracket = _bracket(computed)
        if bracket.width < tol or len(computed) >= max_levels:
            break
    assert bracket is not None
    if mesh_dump is not None:
        computed[-1].mesh.dump(mesh_dump)
    if bracket.width >= tol:
        raise ToleranceNotReached(
            f'bracket width {bracket.width} after {bracket.levels} levels exceeds tol={tol}',
            bracket)
    err = max(bracket.estimate - bracket.lower, bracket.upper - bracket.estimate)
    return ModulusEstimate(bracket.estimate, Method.FEM, err, bracket=bracket)
