"""Families of quadrilaterals and transformations that do not increase the modulus."""

import cmath
import dataclasses
import enum
import logging
import math
import typing as t

import shapely.geometry

from .exceptions import Degenerate, InvalidConfig, OutOfRange
from .geometry import area, polarization_admissible, validate
from .quadrilateral import Quadrilateral, to_point

__all__ = [
    'TrapezoidSpec', 'WeightedFamily', 'RaySideSpec', 'Op63Variant', 'polarize',
    'symmetrize_lambda', 'average', 'q1_quad', 'q2_quad', 'notch_quad', 'g_quad', 'op63_pair',
    'op65_triple', 'remark2_chain', 'slide_quad', 'cor2_quad', 'cor52_quad']

_LOG = logging.getLogger(__name__)


def polarize(q: Quadrilateral) -> Quadrilateral:
    """Reflect b and c in the mirror axis of q and swap them: (a, b, c, d) -> (a, c*, b*, d)."""
    frame = polarization_admissible(q)
    result = Quadrilateral(q.a, frame.reflect(q.c), frame.reflect(q.b), q.d)
    _LOG.debug('polarized %s into %s', q, result)
    return validate(result)


@dataclasses.dataclass(frozen=True)
class TrapezoidSpec:
    """Quadrilateral (1 + i alpha, 1 + i beta, i gamma, i delta) with vertical sides."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        if not self.alpha < self.beta:
            raise InvalidConfig(f'alpha={self.alpha} is not below beta={self.beta} in {self}')
        if not self.gamma > self.delta:
            raise InvalidConfig(f'gamma={self.gamma} is not above delta={self.delta} in {self}')
        validate(self.quadrilateral())

    def quadrilateral(self) -> Quadrilateral:
        return Quadrilateral(1 + 1j * self.alpha, 1 + 1j * self.beta, 1j * self.gamma,
                             1j * self.delta)

    def area(self) -> float:
        return ((self.beta - self.alpha) + (self.gamma - self.delta)) / 2

    def to_tuple(self) -> t.Tuple[float, float, float, float]:
        return dataclasses.astuple(self)  # type: ignore


def symmetrize_lambda(spec: TrapezoidSpec, lambda_: float) -> TrapezoidSpec:
    """Continuous symmetrization; lambda_ = 1 gives the trapezoid symmetric in the real axis."""
    if not 0 <= lambda_ <= 1:
        raise OutOfRange(f'lambda_={repr(lambda_)} is not in [0, 1]')
    right = lambda_ * (spec.alpha + spec.beta) / 2
    left = lambda_ * (spec.gamma + spec.delta) / 2
    return TrapezoidSpec(spec.alpha - right, spec.beta - right, spec.gamma - left,
                         spec.delta - left)


@dataclasses.dataclass(frozen=True)
class WeightedFamily:
    """Trapezoids with positive weights summing to one."""

    specs: t.Tuple[TrapezoidSpec, ...]
    weights: t.Tuple[float, ...]

    def __post_init__(self):
        if not self.specs:
            raise InvalidConfig('weighted family needs at least one trapezoid')
        if len(self.specs) != len(self.weights):
            raise InvalidConfig(
                f'{len(self.specs)} trapezoids but {len(self.weights)} weights in {self}')
        if not all(_ > 0 for _ in self.weights):
            raise InvalidConfig(f'weights {self.weights} are not all positive')
        if abs(math.fsum(self.weights) - 1) > 1e-12:
            raise InvalidConfig(f'weights {self.weights} do not sum to 1')


def average(family: WeightedFamily) -> TrapezoidSpec:
    """Linear averaging: weighted mean of the vertex parameters."""
    return TrapezoidSpec(*[
        math.fsum(weight * value for weight, value in zip(family.weights, values))
        for values in zip(*[spec.to_tuple() for spec in family.specs])])


def q1_quad(y: float, beta: float, gamma: float) -> Quadrilateral:
    """Quadrilateral (1 + iy, 1 + i beta, i gamma, -iy) of the diagonal-rotation family."""
    if not 0 < gamma <= beta:
        raise OutOfRange(f'gamma={repr(gamma)}, beta={repr(beta)} violate 0 < gamma <= beta')
    if y in (-gamma, beta):
        raise Degenerate(f'y={repr(y)} collapses two vertices for beta={beta}, gamma={gamma}')
    if not -gamma < y < beta:
        raise OutOfRange(f'y={repr(y)} is not in ({-gamma}, {beta})')
    return TrapezoidSpec(y, beta, gamma, -y).quadrilateral()


@dataclasses.dataclass(frozen=True)
class RaySideSpec:
    """Rays at angles -phi and phi carrying sides (a,b) and (c,d), with b, c fixed."""

    phi: float
    r1: float
    r2: float

    def __post_init__(self):
        if not 0 < self.phi < math.pi / 2:
            raise InvalidConfig(f'phi={self.phi} is not in (0, pi/2)')
        if not 1 / math.cos(self.phi) < self.r1 <= self.r2:
            raise InvalidConfig(f'{self} violates 1/cos(phi) < r1 <= r2')

    def partner(self, r: float) -> float:
        """Radius of d such that side (d,a) passes through 1; an involution."""
        return 1 / (2 * math.cos(self.phi) - 1 / r)

    @property
    def inverse_range(self) -> t.Tuple[float, float]:
        """Open interval of admissible 1/r."""
        return 1 / self.r2, 2 * math.cos(self.phi) - 1 / self.r1


def q2_quad(r: float, spec: RaySideSpec) -> Quadrilateral:
    """Quadrilateral (r e^{-i phi}, r2 e^{-i phi}, r1 e^{i phi}, r* e^{i phi})."""
    low, high = spec.inverse_range
    if not r > 0 or not low < 1 / r < high:
        raise OutOfRange(f'1/r={1 / r if r else math.inf} is not in ({low}, {high}) for {spec}')
    lower, upper = cmath.exp(-1j * spec.phi), cmath.exp(1j * spec.phi)
    return validate(Quadrilateral(r * lower, spec.r2 * lower, spec.r1 * upper,
                                  spec.partner(r) * upper))


def notch_quad(modulus: float, phi: float, h: float) -> Quadrilateral:
    """Rectangle (M, M + i, i, 0) with the vertex at 0 moved to h e^{i phi}."""
    if not modulus > 0:
        raise OutOfRange(f'modulus={repr(modulus)} is not positive')
    if not 0 < phi <= math.pi / 2:
        raise OutOfRange(f'phi={repr(phi)} is not in (0, pi/2]')
    if not 0 <= h < min(modulus, 1) / 2:
        raise OutOfRange(f'h={repr(h)} is not in [0, {min(modulus, 1) / 2})')
    return validate(Quadrilateral(modulus, modulus + 1j, 1j, h * cmath.exp(1j * phi)))


def g_quad(t_: float, h: float, k: float) -> Quadrilateral:
    """Trapezoid (1 + i(t + 2k), ih, -ih, 1 + it) with area h + k."""
    if not (h > 0 and k > 0):
        raise OutOfRange(f'h={repr(h)} and k={repr(k)} must be positive')
    return validate(Quadrilateral(1 + 1j * (t_ + 2 * k), 1j * h, -1j * h, 1 + 1j * t_))


@enum.unique
class Op63Variant(enum.Enum):
    """How the offset t of the comparison trapezoid is chosen."""

    A = 'a'
    B = 'b'


def op63_pair(a: complex, b: complex, variant: t.Union[Op63Variant, str]
              ) -> t.Tuple[Quadrilateral, Quadrilateral]:
    """Quadrilateral (a, b, 0, 1) and the trapezoid (t + ik, ih, -ih, t - ik).

    Here 2h = |b| and 2k = |a - 1|. Variant A chooses t so that the areas agree, variant B takes
    t as the distance between segments [0, b] and [1, a].
    """
    a, b = to_point(a, 'a'), to_point(b, 'b')
    if isinstance(variant, str):
        variant = Op63Variant(variant.lower())
    if a.imag <= 0 or b.imag <= 0:
        raise InvalidConfig(f'a={a} and b={b} must lie in the upper half-plane')
    if cmath.phase(b) <= cmath.phase(a):
        raise InvalidConfig(f'arg b={cmath.phase(b)} is not greater than arg a={cmath.phase(a)}')
    q = Quadrilateral(a, b, 0, 1)
    try:
        validate(q)
    except ValueError as err:
        raise InvalidConfig(f'{q} is not a valid quadrilateral') from err
    h, k = abs(b) / 2, abs(a - 1) / 2
    if variant is Op63Variant.A:
        t_ = 2 * area(q) / (abs(b) + abs(a - 1))
    else:
        t_ = shapely.geometry.LineString([(0, 0), (b.real, b.imag)]).distance(
            shapely.geometry.LineString([(1, 0), (a.real, a.imag)]))
    if not t_ > 0:
        raise InvalidConfig(f'segments [0, b] and [1, a] intersect for a={a}, b={b}')
    comparison = Quadrilateral(t_ + 1j * k, 1j * h, -1j * h, t_ - 1j * k)
    try:
        validate(comparison)
    except ValueError as err:
        raise InvalidConfig(f'comparison trapezoid {comparison} is not valid') from err
    return q, comparison


def op65_triple(alpha: float, beta: float, r: float, s: float
                ) -> t.Tuple[Quadrilateral, Quadrilateral, Quadrilateral]:
    """(A, B, 0, 1) with the parallelograms (A, A - 1, 0, 1) and (A, B, 0, A - B)."""
    if not (0 < alpha < math.pi and 0 < beta < math.pi):
        raise InvalidConfig(f'alpha={alpha} and beta={beta} must lie in (0, pi)')
    if not (r > 0 and s > 0):
        raise InvalidConfig(f'r={r} and s={s} must be positive')
    vertex_a = 1 + r * cmath.exp(1j * alpha)
    vertex_b = s * cmath.exp(1j * beta)
    if cmath.phase(vertex_b) <= cmath.phase(vertex_a):
        raise InvalidConfig(f'arg B is not greater than arg A for A={vertex_a}, B={vertex_b}')
    quads = (Quadrilateral(vertex_a, vertex_b, 0, 1),
             Quadrilateral(vertex_a, vertex_a - 1, 0, 1),
             Quadrilateral(vertex_a, vertex_b, 0, vertex_a - vertex_b))
    for quad in quads:
        try:
            validate(quad)
        except ValueError as err:
            raise InvalidConfig(f'{quad} is not a valid quadrilateral') from err
    return quads


def remark2_chain(spec: TrapezoidSpec) -> t.List[Quadrilateral]:
    """Trapezoid, its symmetrization, the polarized parallelogram and the final rectangle."""
    symmetric = symmetrize_lambda(spec, 1.0)
    chain = [spec.quadrilateral(), symmetric.quadrilateral()]
    if math.isclose(symmetric.beta, symmetric.gamma, rel_tol=1e-14, abs_tol=1e-14):
        parallelogram = symmetric
    else:
        polarized = polarize(symmetric.quadrilateral())
        parallelogram = TrapezoidSpec(
            polarized.a.imag, polarized.b.imag, polarized.c.imag, polarized.d.imag)
    chain.append(parallelogram.quadrilateral())
    chain.append(symmetrize_lambda(parallelogram, 1.0).quadrilateral())
    return chain


def slide_quad(apex: complex, t_: float) -> Quadrilateral:
    """Triangle (0, 1, apex) with marked point b = t_ sliding on its side from 0 to 1.

    The marked points are a = 0, b = t_, c = 1 and d = apex, so the angle at b is straight.
    """
    apex = to_point(apex, 'apex')
    if not 0 < t_ < 1:
        raise OutOfRange(f't_={repr(t_)} is not in (0, 1)')
    if apex.imag <= 0:
        raise OutOfRange(f'apex={repr(apex)} must lie in the upper half-plane')
    return validate(Quadrilateral(0, t_, 1, apex))


def cor2_quad(phi: float, r: float, b: complex) -> Quadrilateral:
    """(1 + r e^{i phi}, b, 0, 1): vertex a rotating on the circle |z - 1| = r."""
    return validate(Quadrilateral(1 + r * cmath.exp(1j * phi), to_point(b, 'b'), 0, 1))


def cor52_quad(y: float, alpha: float, gamma: float, delta: float) -> Quadrilateral:
    """(1 + i alpha, 1 + iy, i gamma, i delta) with y above alpha."""
    if not y > alpha:
        raise OutOfRange(f'y={repr(y)} is not above alpha={repr(alpha)}')
    return TrapezoidSpec(alpha, y, gamma, delta).quadrilateral()
