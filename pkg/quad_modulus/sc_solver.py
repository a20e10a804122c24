"""Conformal modulus by the Schwarz-Christoffel parameter problem.

The quadrilateral is the image of the upper half-plane with prevertices 0, 1, x3 = 1 + delta
and infinity for a, b, c and d. The gap delta is found so that the side-length ratio |bc|/|ab|
is reproduced, and the modulus follows from the cross-ratio x3 / (x3 - 1) = 1 + 1 / delta.
A straight or reflex angle at d is moved away from infinity by solving for (b, c, d, a), whose
cross-ratio 1 + delta gives the modulus of (a, b, c, d) directly.

Side integrals are evaluated in coordinates local to each singular endpoint with delta kept
apart from 1, so that strongly crowded prevertices do not cancel out.
"""

import dataclasses
import enum
import logging
import math
import typing as t

import numpy as np
import scipy.optimize

from .exceptions import ClosureFailure, NoBracket, NonIntegrable, OutOfRange
from .geometry import interior_angles, validate
from .quadrilateral import Quadrilateral
from .special_functions import gauss_jacobi_rule, modulus_from_crossratio_excess

__all__ = [
    'DEFAULT_TOL', 'DEFAULT_RULE_SIZE', 'FLAG_RANGE', 'LOG_GAP_RANGE', 'LOG_GAP_LIMIT', 'Method',
    'SCProblem', 'SCSolution', 'ModulusEstimate', 'side_integral', 'solve_prevertex', 'modulus_sc']

_LOG = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8

DEFAULT_RULE_SIZE = 24

FLAG_RANGE = (1e-3, 1e3)

LOG_GAP_RANGE = (-40.0, 40.0)
"""Initial bracket of log(gap), widened up to LOG_GAP_LIMIT when the root lies outside."""

LOG_GAP_LIMIT = 700.0

_ROOT_MAX_ITERATIONS = 200

_CONVEX_LIMIT = 0.999
"""Largest angle at d, as a multiple of pi, for which d keeps the prevertex at infinity."""

_RESOLUTION = 1e-12


@enum.unique
class Method(enum.Enum):
    """Numerical method behind a modulus value."""

    SC = 'sc'
    FEM = 'fem'
    Both = 'both'

    @classmethod
    def from_str(cls, name: str) -> 'Method':
        for method in cls:
            if method.value == name.lower():
                return method
        raise ValueError(f'method {repr(name)} is not one of {[_.value for _ in cls]}')


@dataclasses.dataclass(frozen=True)
class SCProblem:
    """Interior angles as multiples of pi and side lengths of a quadrilateral."""

    angles: t.Tuple[float, float, float, float]
    side_lengths: t.Tuple[float, float, float, float]

    @classmethod
    def from_quadrilateral(cls, q: Quadrilateral) -> 'SCProblem':
        angles = tuple(_ / math.pi for _ in interior_angles(q))
        return cls(angles, q.side_lengths())  # type: ignore

    def __post_init__(self):
        if not all(0 < _ < 2 for _ in self.angles):
            raise NonIntegrable(f'angles {self.angles} are not all in (0, 2) in {repr(self)}')
        if abs(sum(self.angles) - 2) > 1e-12:
            raise OutOfRange(f'angles {self.angles} do not sum to 2 in {repr(self)}')
        if not all(_ > 0 for _ in self.side_lengths):
            raise OutOfRange(f'side lengths {self.side_lengths} are not positive')

    @property
    def exponents(self) -> t.Tuple[float, float, float, float]:
        return tuple(_ - 1 for _ in self.angles)  # type: ignore

    def rotated(self) -> 'SCProblem':
        """Same polygon labeled (b, c, d, a)."""
        return SCProblem(self.angles[1:] + self.angles[:1],
                         self.side_lengths[1:] + self.side_lengths[:1])


@dataclasses.dataclass(frozen=True)
class SCSolution:
    """Prevertices (0, 1, 1 + gap, infinity) solving the parameter problem.

    When rotated is set, the problem was solved for the labeling (b, c, d, a), so that a has
    the prevertex at infinity and the prevertices of (a, b, c, d) are (infinity, 0, 1, 1 + gap).
    """

    gap: float
    closure_residual: float
    modulus: float
    rotated: bool = False

    @property
    def x3(self) -> float:
        return 1 + self.gap

    @property
    def prevertices(self) -> t.Tuple[float, float, float, float]:
        if self.rotated:
            return math.inf, 0.0, 1.0, self.x3
        return 0.0, 1.0, self.x3, math.inf

    @property
    def cross_ratio(self) -> float:
        return self.x3 if self.rotated else 1 + 1 / self.gap


@dataclasses.dataclass(frozen=True)
class ModulusEstimate:
    """Modulus value with the method that produced it and its estimated absolute error."""

    value: float
    method: Method
    err: float
    flagged: bool = False
    bracket: t.Optional[t.Any] = None

    def __post_init__(self):
        if not self.value > 0:
            raise OutOfRange(f'modulus value {repr(self.value)} is not positive')
        if not self.err >= 0:
            raise OutOfRange(f'error estimate {repr(self.err)} is negative')

    def to_dict(self) -> dict:
        data = {'value': self.value, 'err': self.err, 'method': self.method.value}
        if self.bracket is not None:
            data['bracket'] = self.bracket.to_dict()
        return data


Smooth = t.Callable[[np.ndarray], np.ndarray]


def _half_integral(smooth: Smooth, exponent: float, length: float, near: float,
                   rule_size: int) -> float:
    """Integral of u^exponent * smooth(u) over (0, length).

    Parameter near is the distance from u = 0 to the closest singularity of smooth. The first
    piece [0, min(near, length)] uses the Gauss-Jacobi rule, further pieces double in length
    and use Gauss-Legendre, so each piece stays at least its own length away from it.
    """
    singular = gauss_jacobi_rule(rule_size, 0.0, exponent)
    regular = gauss_jacobi_rule(rule_size, 0.0, 0.0)
    first = min(near, length)
    u = first / 2 * (1 + singular.nodes)
    total = (first / 2) ** (exponent + 1) * float(np.dot(singular.weights, smooth(u)))
    low = first
    while low < length:
        high = min(2 * low, length)
        u = low + (high - low) / 2 * (1 + regular.nodes)
        total += (high - low) / 2 * float(np.dot(regular.weights, u ** exponent * smooth(u)))
        low = high
    return total


def _side_integral(exponents: t.Sequence[float], gap: float, which: int, rule_size: int) -> float:
    e_a, e_b, e_c, e_d = exponents
    if not all(_ > -1 for _ in exponents):
        raise NonIntegrable(f'exponents {tuple(exponents)} must all be greater than -1')
    if which == 0:
        # (0, 1): halves measured from a and from b
        left = _half_integral(
            lambda u: (1 - u) ** e_b * (1 + gap - u) ** e_c, e_a, 0.5, math.inf, rule_size)
        right = _half_integral(
            lambda u: (1 - u) ** e_a * (gap + u) ** e_c, e_b, 0.5, gap, rule_size)
        return left + right
    if which == 1:
        # (1, 1 + gap): halves measured from b and from c
        left = _half_integral(
            lambda u: (1 + u) ** e_a * (gap - u) ** e_c, e_b, gap / 2, 1.0, rule_size)
        right = _half_integral(
            lambda u: (1 + gap - u) ** e_a * (gap - u) ** e_b, e_c, gap / 2, math.inf, rule_size)
        return left + right
    if which == 2:
        # (x3, infinity) mapped onto s in (0, 1) by t = x3 + s / (1 - s)
        near_left = gap / (1 - gap) if gap < 1 else math.inf
        left = _half_integral(
            lambda u: (1 - u) ** e_d * (1 + gap - gap * u) ** e_a * (gap * (1 - u) + u) ** e_b,
            e_c, 0.5, near_left, rule_size)
        right = _half_integral(
            lambda u: (1 - u) ** e_c * (1 + gap * u) ** e_a * (1 - u * (1 - gap)) ** e_b,
            e_d, 0.5, 1 / gap, rule_size)
        return left + right
    raise ValueError(f'interval index which={repr(which)} is not one of 0, 1, 2')


def side_integral(angles: t.Sequence[float], x3: float, which: int,
                  rule_size: int = DEFAULT_RULE_SIZE) -> float:
    """Unnormalized image length of prevertex interval (0, 1), (1, x3) or (x3, inf).

    Angles are interior angles as multiples of pi, which selects the interval by index.
    """
    if not x3 > 1:
        raise OutOfRange(f'x3={repr(x3)} is not greater than 1')
    exponents = [_ - 1 for _ in angles]
    return _side_integral(exponents, x3 - 1, which, rule_size)


class _RatioFunction:
    """Logarithmic mismatch of |bc|/|ab| as a function of s = log(gap)."""

    def __init__(self, problem: SCProblem, rule_size: int):
        self.exponents = problem.exponents
        self.rule_size = rule_size
        lengths = problem.side_lengths
        self.target = math.log(lengths[1] / lengths[0])
        self.evaluations = 0

    def __call__(self, s: float) -> float:
        self.evaluations += 1
        gap = math.exp(s)
        ab = _side_integral(self.exponents, gap, 0, self.rule_size)
        bc = _side_integral(self.exponents, gap, 1, self.rule_size)
        ratio = bc / ab
        if not 0 < ratio < math.inf:
            raise NoBracket(f'side ratio {ratio} at s={s} is out of floating-point range')
        return math.log(ratio) - self.target


def _find_log_gap(function: _RatioFunction) -> float:
    """Root of the mismatch, widening the initial bracket on the side where the root must lie.

    The mismatch is monotone in s, rising or falling depending on the angles.
    """
    low, high = LOG_GAP_RANGE
    f_low, f_high = function(low), function(high)
    sign = 1.0 if f_high >= f_low else -1.0
    while sign * f_low >= 0 and low > -LOG_GAP_LIMIT:
        high, f_high = low, f_low
        low = max(2 * low, -LOG_GAP_LIMIT)
        f_low = function(low)
    while sign * f_high <= 0 and high < LOG_GAP_LIMIT:
        low, f_low = high, f_high
        high = min(2 * high, LOG_GAP_LIMIT)
        f_high = function(high)
    if not f_low * f_high < 0:
        raise NoBracket(
            f'side ratio mismatch does not change sign on s in ({low}, {high}):'
            f' f({low})={f_low}, f({high})={f_high}')
    s, result = scipy.optimize.brentq(
        function, low, high, xtol=1e-14, maxiter=_ROOT_MAX_ITERATIONS, full_output=True,
        disp=False)
    if not result.converged:
        raise NoBracket(f'root search on s in ({low}, {high}) stopped: {result.flag}')
    _LOG.debug('log gap %.17g after %i iterations', s, result.iterations)
    return s


def _solve(problem: SCProblem, tol: float, rule_size: int) -> SCSolution:
    # with a straight or reflex angle at infinity |bc|/|ab| hardly depends on the gap
    rotated = problem.angles[3] > _CONVEX_LIMIT
    if rotated:
        problem = problem.rotated()
    function = _RatioFunction(problem, rule_size)
    gap = math.exp(_find_log_gap(function))
    ab = _side_integral(problem.exponents, gap, 0, rule_size)
    cd = _side_integral(problem.exponents, gap, 2, rule_size)
    lengths = problem.side_lengths
    expected = lengths[2] / lengths[0]
    residual = abs(cd / ab - expected) / expected
    # the rotated labeling has the reciprocal modulus
    excess = gap if rotated else 1 / gap
    solution = SCSolution(gap, residual, modulus_from_crossratio_excess(excess), rotated)
    _LOG.debug('solved %s with %i evaluations: %s', problem, function.evaluations, solution)
    if residual > 100 * tol:
        raise ClosureFailure(
            f'closure residual {residual} exceeds {100 * tol} for {repr(problem)}', solution)
    return solution


def solve_prevertex(q: Quadrilateral, tol: float = DEFAULT_TOL,
                    rule_size: int = DEFAULT_RULE_SIZE) -> SCSolution:
    """Solve the parameter problem with a at 0, b at 1 and d at infinity.

    If the angle at d is straight or reflex, b is at 0, c at 1 and a at infinity instead.
    """
    return _solve(SCProblem.from_quadrilateral(validate(q)), tol, rule_size)


def modulus_sc(q: Quadrilateral, tol: float = DEFAULT_TOL,
               rule_size: int = DEFAULT_RULE_SIZE) -> ModulusEstimate:
    """Modulus with error taken from doubling the quadrature rule and from the closure residual."""
    problem = SCProblem.from_quadrilateral(validate(q))
    coarse = _solve(problem, tol, rule_size)
    fine = _solve(problem, tol, 2 * rule_size)
    value = fine.modulus
    err = max(abs(fine.modulus - coarse.modulus), value * fine.closure_residual,
              _RESOLUTION * value)
    flagged = not FLAG_RANGE[0] <= value <= FLAG_RANGE[1]
    if flagged:
        _LOG.warning('modulus %g of %s is outside of %s, accuracy may suffer',
                     value, q, FLAG_RANGE)
    return ModulusEstimate(value, Method.SC, err, flagged=flagged)
