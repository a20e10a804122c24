"""Quadrilateral value type and its JSON form."""

import cmath
import collections.abc
import enum
import logging
import math
import numbers
import typing as t

from .exceptions import InputError

__all__ = ['Vertex', 'SideLabel', 'MotionClass', 'Quadrilateral', 'to_point', 'cross', 'dot']

_LOG = logging.getLogger(__name__)

PointLike = t.Union[complex, float, int, t.Sequence[float]]


@enum.unique
class Vertex(enum.IntEnum):
    """Marked vertices of a quadrilateral, in boundary order."""

    A = 0
    B = 1
    C = 2
    D = 3

    @classmethod
    def from_str(cls, name: str) -> 'Vertex':
        try:
            return cls[name.upper()]
        except KeyError as err:
            raise ValueError(f'vertex name {repr(name)} is not one of a, b, c, d') from err

    def __str__(self):
        return self.name.lower()


@enum.unique
class SideLabel(enum.IntEnum):
    """Sides of a quadrilateral; BC carries potential one and DA potential zero."""

    AB = 0
    BC = 1
    CD = 2
    DA = 3

    @property
    def start(self) -> Vertex:
        return Vertex(self.value)

    @property
    def end(self) -> Vertex:
        return Vertex((self.value + 1) % 4)

    def rotated(self, steps: int = 1) -> 'SideLabel':
        """Label of the same side when the labeling is rotated to (b, c, d, a)."""
        return SideLabel((self.value - steps) % 4)

    def __str__(self):
        return self.name


@enum.unique
class MotionClass(enum.Enum):
    """Certified effect of a vertex motion on the modulus."""

    Increase = '+'
    Decrease = '-'
    Indeterminate = '0'

    def opposite(self) -> 'MotionClass':
        if self is MotionClass.Increase:
            return MotionClass.Decrease
        if self is MotionClass.Decrease:
            return MotionClass.Increase
        return self


def to_point(value: PointLike, name: str = 'point') -> complex:
    """Convert complex number or [x, y] pair into a finite complex point."""
    if isinstance(value, numbers.Number) and not isinstance(value, bool):
        point = complex(value)  # type: ignore
    elif isinstance(value, collections.abc.Sequence) and not isinstance(value, str):
        if len(value) != 2:
            raise InputError(name, f'expected [x, y] but got {repr(value)}')
        if not all(isinstance(_, numbers.Real) and not isinstance(_, bool) for _ in value):
            raise InputError(name, f'coordinates {repr(value)} are not real numbers')
        point = complex(float(value[0]), float(value[1]))
    else:
        raise TypeError(f'{name}={repr(value)} is of wrong type {type(value)}')
    if not cmath.isfinite(point):
        raise InputError(name, f'coordinates of {repr(value)} are not finite')
    return point


def cross(u: complex, v: complex) -> float:
    """Signed area of the parallelogram spanned by u and v."""
    return u.real * v.imag - u.imag * v.real


def dot(u: complex, v: complex) -> float:
    return u.real * v.real + u.imag * v.imag


class Quadrilateral(collections.abc.Hashable):
    """Four marked boundary points a, b, c, d of a polygonal domain, in this order.

    Construction checks only that the vertices are finite points. Whether they form a simple
    positively oriented polygon is checked by geometry.validate().
    """

    @classmethod
    def from_tuple(cls, vertices: t.Sequence[PointLike]):
        if len(vertices) != 4:
            raise ValueError(f'expected 4 vertices but got {len(vertices)} in {repr(vertices)}')
        return cls(*vertices)

    @classmethod
    def from_dict(cls, data: t.Mapping[str, t.Any]):
        """Create quadrilateral from {"a": [x, y], "b": ..., "c": ..., "d": ...}."""
        if not isinstance(data, collections.abc.Mapping):
            raise InputError('quad', f'expected a JSON object but got {type(data).__name__}')
        for key in data:
            if key not in ('a', 'b', 'c', 'd'):
                raise InputError(key, f'unexpected field in quadrilateral {repr(dict(data))}')
        vertices = []
        for vertex in Vertex:
            key = str(vertex)
            if key not in data:
                raise InputError(key, f'missing vertex {key}')
            vertices.append(to_point(data[key], key))
        return cls(*vertices)

    def __init__(self, a: PointLike, b: PointLike, c: PointLike, d: PointLike):
        self._vertices = tuple(
            to_point(value, str(vertex)) for value, vertex in zip((a, b, c, d), Vertex))

    @property
    def a(self) -> complex:
        return self._vertices[0]

    @property
    def b(self) -> complex:
        return self._vertices[1]

    @property
    def c(self) -> complex:
        return self._vertices[2]

    @property
    def d(self) -> complex:
        return self._vertices[3]

    @property
    def vertices(self) -> t.Tuple[complex, complex, complex, complex]:
        return self._vertices  # type: ignore

    def vertex(self, vertex: Vertex) -> complex:
        return self._vertices[vertex]

    def side(self, label: SideLabel) -> t.Tuple[complex, complex]:
        return self._vertices[label.start], self._vertices[label.end]

    def side_lengths(self) -> t.Tuple[float, float, float, float]:
        """Lengths of sides (a,b), (b,c), (c,d) and (d,a)."""
        return tuple(abs(end - start) for start, end in map(self.side, SideLabel))  # type: ignore

    def diameter(self) -> float:
        return max(abs(p - q) for p in self._vertices for q in self._vertices)

    def rotated(self, steps: int = 1) -> 'Quadrilateral':
        """Same polygon labeled (b, c, d, a); its modulus is the reciprocal one for odd steps."""
        steps %= 4
        return Quadrilateral(*(self._vertices[steps:] + self._vertices[:steps]))

    def mapped(self, function: t.Callable[[complex], complex]) -> 'Quadrilateral':
        """Apply a point map to every vertex."""
        return Quadrilateral(*[function(_) for _ in self._vertices])

    def mirrored(self) -> 'Quadrilateral':
        """Reflection in the real axis, relabeled (d, c, b, a) so that orientation is restored.

        The side roles are kept, hence the modulus is unchanged.
        """
        a, b, c, d = [_.conjugate() for _ in self._vertices]
        return Quadrilateral(d, c, b, a)

    def with_vertex(self, vertex: Vertex, point: PointLike) -> 'Quadrilateral':
        vertices = list(self._vertices)
        vertices[vertex] = to_point(point, str(vertex))
        return Quadrilateral(*vertices)

    def to_tuple(self) -> t.Tuple[complex, complex, complex, complex]:
        return self.vertices

    def to_dict(self) -> t.Dict[str, t.List[float]]:
        return {str(vertex): [point.real, point.imag]
                for vertex, point in zip(Vertex, self._vertices)}

    def isclose(self, other: 'Quadrilateral', abs_tol: float = 1e-12) -> bool:
        return all(math.isclose(abs(p - q), 0, abs_tol=abs_tol)
                   for p, q in zip(self._vertices, other.vertices))

    def __iter__(self) -> t.Iterator[complex]:
        return iter(self._vertices)

    def __repr__(self):
        return f'{type(self).__name__}({", ".join(repr(_) for _ in self._vertices)})'

    def __hash__(self):
        return hash(self._vertices)

    def __eq__(self, other):
        if not isinstance(other, Quadrilateral):
            return NotImplemented
        return self._vertices == other.vertices
