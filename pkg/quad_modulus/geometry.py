"""Plane geometry of quadrilaterals: validity, angles, area and monotonicity regions."""

import cmath
import dataclasses
import enum
import logging
import math
import typing as t

import shapely.geometry

from .exceptions import (
    DegenerateVertices, InvalidTarget, NegativeOrientation, NotAdmissible, OutOfRange,
    SelfIntersecting)
from .quadrilateral import MotionClass, Quadrilateral, SideLabel, Vertex, cross, dot, to_point

__all__ = [
    'GEOMETRY_TOL', 'validate', 'is_valid', 'signed_area', 'area', 'interior_angles', 'is_convex',
    'classify_vertex_motion', 'tangency_phi0', 'PolarizationCase', 'PolarizationFrame',
    'polarization_admissible', 'to_shapely']

_LOG = logging.getLogger(__name__)

GEOMETRY_TOL = 1e-12


def _scale(points: t.Sequence[complex]) -> float:
    return max(max(abs(p - q) for p in points for q in points), 1.0)


def to_shapely(points: t.Sequence[complex]) -> shapely.geometry.Polygon:
    return shapely.geometry.Polygon([(_.real, _.imag) for _ in points])


def signed_area(points: t.Sequence[complex]) -> float:
    """Shoelace sum over a closed polygon, positive for counterclockwise order."""
    return sum(cross(p, q) for p, q in zip(points, list(points[1:]) + [points[0]])) / 2


def validate(q: Quadrilateral) -> Quadrilateral:
    """Return q if it is a simple positively oriented polygon with distinct vertices.

    Orientation is never repaired: the modulus depends on the labeling.
    """
    if not isinstance(q, Quadrilateral):
        raise TypeError(f'q={repr(q)} is of wrong type {type(q)}')
    vertices = q.vertices
    tol = GEOMETRY_TOL * _scale(vertices)
    for i in range(4):
        for j in range(i + 1, 4):
            if abs(vertices[i] - vertices[j]) <= tol:
                raise DegenerateVertices(
                    f'vertices {Vertex(i)} and {Vertex(j)} coincide in {repr(q)}')
    ring = shapely.geometry.LinearRing([(_.real, _.imag) for _ in vertices])
    if not ring.is_simple:
        raise SelfIntersecting(f'boundary of {repr(q)} intersects itself')
    for i, point in enumerate(vertices):
        for side in (SideLabel((i + 1) % 4), SideLabel((i + 2) % 4)):
            segment = shapely.geometry.LineString(
                [(_.real, _.imag) for _ in (vertices[side.start], vertices[side.end])])
            if shapely.geometry.Point(point.real, point.imag).distance(segment) <= tol:
                raise SelfIntersecting(f'vertex {Vertex(i)} touches side {side} of {repr(q)}')
    area_ = signed_area(vertices)
    if area_ <= tol * _scale(vertices):
        raise NegativeOrientation(
            f'{repr(q)} is oriented clockwise (signed area {area_}), reverse it to (d, c, b, a)')
    return q


def is_valid(q: Quadrilateral) -> bool:
    try:
        validate(q)
    except ValueError:
        return False
    return True


def area(q: Quadrilateral) -> float:
    return signed_area(validate(q).vertices)


def _angle_at(prev: complex, point: complex, next_: complex) -> float:
    """Interior angle at point of a counterclockwise polygon, in (0, 2*pi)."""
    angle = cmath.phase((prev - point) / (next_ - point))
    if angle <= 0:
        angle += 2 * math.pi
    return angle


def interior_angles(q: Quadrilateral) -> t.Tuple[float, float, float, float]:
    vertices = validate(q).vertices
    return tuple(  # type: ignore
        _angle_at(vertices[i - 1], vertices[i], vertices[(i + 1) % 4]) for i in range(4))


def is_convex(q: Quadrilateral) -> bool:
    """True when no interior angle exceeds pi (straight angles allowed)."""
    return all(angle <= math.pi + GEOMETRY_TOL for angle in interior_angles(q))


def _side_sign(side: SideLabel) -> MotionClass:
    """Moving a vertex onto or beyond side (a,b) or (c,d) enlarges the modulus."""
    return MotionClass.Increase if side in (SideLabel.AB, SideLabel.CD) else MotionClass.Decrease


def _slides_along(q: Quadrilateral, vertex: Vertex, side: SideLabel, target: complex,
                  tol: float) -> bool:
    """Target lies on the open side, the angle at vertex is at most pi and the new side fits."""
    vertices = q.vertices
    point = vertices[vertex]
    other = vertices[side.end] if side.start == vertex else vertices[side.start]
    direction = other - point
    offset = target - point
    if abs(cross(direction, offset)) > tol * abs(direction):
        return False
    position = (offset / direction).real
    if not 0 < position < 1:
        return False
    if interior_angles(q)[vertex] > math.pi + GEOMETRY_TOL:
        return False
    # the neighbour of vertex that does not lie on the side
    far = vertices[(vertex - 1) % 4] if side.start == vertex else vertices[(vertex + 1) % 4]
    segment = shapely.geometry.LineString([(far.real, far.imag), (target.real, target.imag)])
    return to_shapely(vertices).buffer(tol).covers(segment)


def _beyond_side(q: Quadrilateral, side: SideLabel, target: complex, tol: float) -> bool:
    """Target lies in the closed convex set cut off by side and extensions of its neighbours."""
    vertices = q.vertices
    k = int(side)
    start, end = vertices[k], vertices[(k + 1) % 4]
    before, after = vertices[k - 1], vertices[(k + 2) % 4]
    return (cross(end - start, target - start) <= tol * abs(end - start)
            and cross(start - before, target - before) >= -tol * abs(start - before)
            and cross(after - end, target - end) >= -tol * abs(after - end))


def classify_vertex_motion(
        q: Quadrilateral, vertex: t.Union[Vertex, str], target: complex) -> MotionClass:
    """Certified sign of the modulus change when vertex moves to target.

    A vertex sliding along one of its sides, or moving into the region beyond that side
    (convex quadrilaterals only), increases the modulus for sides (a,b), (c,d) and decreases
    it for sides (b,c), (d,a). Any other motion is Indeterminate.
    """
    validate(q)
    if isinstance(vertex, str):
        vertex = Vertex.from_str(vertex)
    target = to_point(target, 'target')
    tol = GEOMETRY_TOL * _scale(q.vertices)
    for point in q.vertices:
        if abs(target - point) <= tol:
            raise InvalidTarget(f'target={repr(target)} coincides with a vertex of {repr(q)}')
    sides = (SideLabel(vertex), SideLabel((vertex - 1) % 4))
    for side in sides:
        if _slides_along(q, vertex, side, target, tol):
            _LOG.debug('%s slides along side %s to %s', vertex, side, target)
            return _side_sign(side)
    if is_convex(q):
        for side in sides:
            if _beyond_side(q, side, target, tol):
                _LOG.debug('%s moves beyond side %s to %s', vertex, side, target)
                return _side_sign(side)
    return MotionClass.Indeterminate


def tangency_phi0(r: float, b: complex) -> float:
    """Angle at which the circle |z - 1| = r touches the tangent line through b nearest to 1 + r.

    Moving vertex a = 1 + r exp(i phi) of (a, b, 0, 1) increases the modulus for phi in [0, phi0].
    """
    b = to_point(b, 'b')
    if not 0 < r < 1:
        raise OutOfRange(f'r={repr(r)} is not in (0, 1)')
    if b.imag <= 0 or b.real >= 1 + r or abs(b - 1) <= r:
        raise OutOfRange(f'b={repr(b)} violates Im b > 0, Re b < 1 + r, |b - 1| > r for r={r}')
    psi = cmath.phase(b - 1)
    phi0 = psi - math.acos(r / abs(b - 1))
    assert 0 < phi0 < math.pi, phi0
    return phi0


@enum.unique
class PolarizationCase(enum.Enum):
    """Shape of the pair of lines carrying sides (a,b) and (c,d)."""

    Ray = 'ray'
    Parallel = 'parallel'


@dataclasses.dataclass(frozen=True)
class PolarizationFrame:
    """Isometry into the frame where the mirror axis is the real line.

    In the frame a and b lie below the axis, c and d above it. When mirrored is set the frame
    includes a reflection; the hypotheses then certify the reversed-labeling inequality.
    """

    case: PolarizationCase
    origin: complex
    direction: complex
    mirrored: bool
    variant: int
    half_angle: float

    def to_frame(self, point: complex) -> complex:
        image = (point - self.origin) * self.direction.conjugate()
        return image.conjugate() if self.mirrored else image

    def from_frame(self, image: complex) -> complex:
        if self.mirrored:
            image = image.conjugate()
        return image * self.direction + self.origin

    def reflect(self, point: complex) -> complex:
        """Mirror image of point in the axis."""
        return self.from_frame(self.to_frame(point).conjugate())


def _hypothesis_variant(a: complex, b: complex, c: complex, d: complex, tol: float) -> int:
    """1 for Re a <= Re d and Re c < Re b, 2 for the variant with strictness swapped, else 0."""
    if a.real <= d.real + tol and c.real < b.real - tol:
        return 1
    if a.real < d.real - tol and c.real <= b.real + tol:
        return 2
    return 0


def _mirror_axis(q: Quadrilateral, tol: float
                 ) -> t.Tuple[PolarizationCase, complex, complex, float]:
    a, b, c, d = q.vertices
    u, v = b - a, c - d
    if abs(cross(u, v)) <= tol * abs(u) * abs(v):
        if dot(u, v) <= 0:
            raise NotAdmissible(f'sides (a,b) and (d,c) of {repr(q)} point in opposite directions')
        direction = u / abs(u)
        # midline between the two parallel lines
        normal = direction * 1j
        offset = (dot(normal, d) - dot(normal, a)) / 2
        if abs(offset) <= tol:
            raise NotAdmissible(f'sides (a,b) and (c,d) of {repr(q)} lie on one line')
        origin = a + normal * offset
        return PolarizationCase.Parallel, origin, direction, 0.0
    # intersection of lines a + s u and d + r v
    s = cross(d - a, v) / cross(u, v)
    origin = a + s * u
    rays = []
    for near, far in ((a, b), (d, c)):
        p, q_ = near - origin, far - origin
        if abs(p) <= tol or abs(q_) <= tol:
            raise NotAdmissible(f'a vertex of {repr(q)} lies at the apex {origin}')
        if dot(p, q_) <= 0:
            raise NotAdmissible(f'{near} and {far} lie on opposite rays from {origin}')
        rays.append(p / abs(p))
    bisector = rays[0] + rays[1]
    if abs(bisector) <= tol:
        raise NotAdmissible(f'rays of {repr(q)} are opposite, no mirror axis')
    direction = bisector / abs(bisector)
    half_angle = abs(cmath.phase(rays[1] / direction))
    return PolarizationCase.Ray, origin, direction, half_angle


def polarization_admissible(q: Quadrilateral) -> PolarizationFrame:
    """Find a frame in which q satisfies the hypotheses of the polarization inequality.

    Sides (a,b) and (c,d) must lie on rays from a common apex that are mirror images of each
    other, or on two parallel lines. The frame is oriented so that a and b lie below the axis;
    both the plain and the reflected frame are tried.
    """
    validate(q)
    tol = GEOMETRY_TOL * _scale(q.vertices)
    case, origin, direction, half_angle = _mirror_axis(q, tol)
    tried = []
    for sign in (1, -1):
        for mirrored in (False, True):
            frame = PolarizationFrame(case, origin, sign * direction, mirrored, 0, half_angle)
            a, b, c, d = [frame.to_frame(_) for _ in q.vertices]
            if not (a.imag < 0 and b.imag < 0 and c.imag > 0 and d.imag > 0):
                continue
            variant = _hypothesis_variant(a, b, c, d, tol)
            tried.append((a, b, c, d))
            if variant:
                _LOG.debug('%s is admissible for polarization in %s frame, variant %i',
                           q, case.value, variant)
                return dataclasses.replace(frame, variant=variant)
    raise NotAdmissible(
        f'neither Re a <= Re d, Re c < Re b nor its strict variant holds for {repr(q)}'
        f' in frames {tried}')
