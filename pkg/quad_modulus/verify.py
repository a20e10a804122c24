"""Seeded numerical verification of modulus inequalities, with sweeps and region maps.

Every check draws its configurations from a per-sample random generator spawned from the run
seed, so that a report depends only on the check id and the configuration. Inequalities are
decided against the error estimates of the moduli involved: a sample passes a strict
inequality only when the margin exceeds the margin multiplier times the combined error.
"""

import cmath
import concurrent.futures
import dataclasses
import logging
import math
import threading
import time
import typing as t

import numpy as np

from .exceptions import (
    InvalidConfig, OutOfRange, SolverDisagreement, UnknownCheck, UnknownFamily)
from .geometry import classify_vertex_motion, is_convex, tangency_phi0, validate
from .pde_oracle import DEFAULT_LEVELS, Bracket, MarkedPolygon, modulus_bracket
from .quadrilateral import MotionClass, Quadrilateral, SideLabel, Vertex, to_point
from .report import (
    CheckConfig, Failure, Outcome, RegionMapGrid, RegionProbe, Report, SweepRow, SweepTable)
from .sc_solver import DEFAULT_TOL, Method, ModulusEstimate, modulus_sc
from .transforms import (
    RaySideSpec, TrapezoidSpec, WeightedFamily, average, cor2_quad, cor52_quad, g_quad,
    notch_quad, op63_pair, op65_triple, polarize, q1_quad, q2_quad, remark2_chain, slide_quad,
    symmetrize_lambda)

__all__ = [
    'CHECK_IDS', 'PROBLEM_IDS', 'FAMILIES', 'DEFAULT_H_SEQ', 'Comparison', 'Evaluator',
    'verify', 'verify_all', 'explore', 'slope_2_3', 'region_map', 'sweep']

_LOG = logging.getLogger(__name__)

MAX_DRAWS = 200
"""Rejected draws allowed per sample before the sample is skipped."""

DEFAULT_H_SEQ = (0.04, 0.02, 0.01, 0.005)

PROP2_LEVELS = 4


def _xy(point: complex) -> t.List[float]:
    return [point.real, point.imag]


@dataclasses.dataclass(frozen=True)
class Comparison:
    """Claim lhs > rhs (strict) or lhs >= rhs (weak) for values with a combined error budget.

    A certified comparison holds two-sided bounds: lhs and rhs are bracket midpoints and budget
    is the half-width, so it is not widened by the margin multiplier.
    """

    lhs: float
    rhs: float
    budget: float
    strict: bool = True
    certified: bool = False
    label: str = ''

    @classmethod
    def of(cls, lhs: ModulusEstimate, rhs: ModulusEstimate, strict: bool = True,
           label: str = '') -> 'Comparison':
        return cls(lhs.value, rhs.value, lhs.err + rhs.err, strict=strict, label=label)

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs

    def outcome(self, multiplier: float) -> Outcome:
        threshold = self.budget if self.certified else multiplier * self.budget
        if self.margin < -threshold:
            return Outcome.Fail
        if not self.strict or self.margin > threshold:
            return Outcome.Pass
        return Outcome.Inconclusive


def _decreasing(values: t.Sequence[ModulusEstimate], strict: bool = True,
                label: str = 'decrease') -> t.List[Comparison]:
    return [Comparison.of(left, right, strict, f'{label} at {i}')
            for i, (left, right) in enumerate(zip(values, values[1:]))]


def _increasing(values: t.Sequence[ModulusEstimate], strict: bool = True) -> t.List[Comparison]:
    return [Comparison.of(right, left, strict, f'increase at {i}')
            for i, (left, right) in enumerate(zip(values, values[1:]))]


def _convex(values: t.Sequence[ModulusEstimate]) -> t.List[Comparison]:
    """Nonnegative second differences on a uniform grid."""
    comparisons = []
    for i in range(1, len(values) - 1):
        left, middle, right = values[i - 1], values[i], values[i + 1]
        comparisons.append(Comparison(
            left.value + right.value, 2 * middle.value, left.err + 2 * middle.err + right.err,
            strict=False, label=f'convexity at {i}'))
    return comparisons


def _interior(low: float, high: float, count: int) -> np.ndarray:
    """count points strictly inside (low, high), evenly spaced."""
    return low + (high - low) * np.arange(1, count + 1) / (count + 1)


class Evaluator:
    """Cached modulus evaluation by the configured method.

    With Method.Both the Schwarz-Christoffel value is returned, after checking that it lies
    inside the finite-element bracket.
    """

    def __init__(self, method: Method = Method.SC, tol: float = DEFAULT_TOL,
                 levels: int = DEFAULT_LEVELS):
        self.method = method
        self.tol = tol
        self.levels = levels
        self._cache: t.Dict[t.Hashable, t.Any] = {}
        self._lock = threading.Lock()

    def _cached(self, key: t.Hashable, compute: t.Callable[[], t.Any]) -> t.Any:
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = compute()
        with self._lock:
            self._cache.setdefault(key, value)
        return value

    def __call__(self, q: Quadrilateral) -> ModulusEstimate:
        return self._cached(('modulus', q.vertices), lambda: self._evaluate(q))

    def bracket(self, domain: t.Union[Quadrilateral, MarkedPolygon],
                levels: t.Optional[int] = None) -> Bracket:
        levels = self.levels if levels is None else levels
        if isinstance(domain, Quadrilateral):
            key: t.Hashable = ('bracket', domain.vertices, (0, 1, 2, 3), levels)
        else:
            key = ('bracket', domain.vertices, domain.marks, levels)
        return self._cached(key, lambda: modulus_bracket(domain, levels=levels))

    def _evaluate(self, q: Quadrilateral) -> ModulusEstimate:
        if self.method is Method.SC:
            return modulus_sc(q, self.tol)
        bracket = self.bracket(q)
        if self.method is Method.FEM:
            err = max(bracket.estimate - bracket.lower, bracket.upper - bracket.estimate)
            return ModulusEstimate(bracket.estimate, Method.FEM, err, bracket=bracket)
        estimate = modulus_sc(q, self.tol)
        if not bracket.lower - estimate.err <= estimate.value <= bracket.upper + estimate.err:
            raise SolverDisagreement(
                f'modulus {estimate.value} of {repr(q)} is outside of {repr(bracket)}')
        return dataclasses.replace(estimate, method=Method.Both, bracket=bracket)


Builder = t.Callable[[np.random.Generator], t.Any]


class SampleContext:
    """Random generator and evaluator of one sample, counting rejected draws."""

    def __init__(self, rng: np.random.Generator, evaluate: Evaluator, max_draws: int):
        self.rng = rng
        self.evaluate = evaluate
        self.max_draws = max_draws
        self.rejections = 0

    def draw(self, build: Builder) -> t.Any:
        """Call build until it returns a configuration instead of raising ValueError."""
        last: t.Optional[ValueError] = None
        for _ in range(self.max_draws):
            try:
                return build(self.rng)
            except ValueError as err:
                self.rejections += 1
                last = err
        raise InvalidConfig(f'no valid configuration in {self.max_draws} draws: {last}')

    def uniform(self, low: float, high: float) -> float:
        return float(self.rng.uniform(low, high))


@dataclasses.dataclass
class Sample:
    input: t.Dict[str, t.Any]
    comparisons: t.List[Comparison]


SampleFunction = t.Callable[[SampleContext], Sample]

_CHECKS: t.Dict[str, SampleFunction] = {}

_PROBLEMS: t.Dict[str, SampleFunction] = {}


def _register(registry: t.Dict[str, SampleFunction], name: str):
    def decorator(function: SampleFunction) -> SampleFunction:
        registry[name] = function
        return function
    return decorator


@_register(_CHECKS, 'prop1')
def _prop1(ctx: SampleContext) -> Sample:
    apex = ctx.draw(lambda rng: complex(rng.uniform(-0.5, 1.5), rng.uniform(0.3, 1.5)))
    values = [ctx.evaluate(slide_quad(apex, _)) for _ in np.linspace(0.15, 0.85, 9)]
    # a similar copy of the same domain with the same marked points
    first = slide_quad(apex, 0.15)
    moved = ctx.evaluate(first.mapped(lambda z: (0.5 + 1.5j) * z - 2))
    same = Comparison(0.0, abs(moved.value - values[0].value), moved.err + values[0].err,
                      strict=False, label='equal for the same domain')
    return Sample({'apex': _xy(apex)}, _decreasing(values) + [same])


def _certified(lhs: t.Union[float, Bracket], rhs: t.Union[float, Bracket],
               label: str) -> Comparison:
    def interval(value):
        if isinstance(value, Bracket):
            return (value.lower + value.upper) / 2, value.width / 2
        return value, 0.0
    (left, left_err), (right, right_err) = interval(lhs), interval(rhs)
    return Comparison(left, right, left_err + right_err, certified=True, label=label)


@_register(_CHECKS, 'prop2')
def _prop2(ctx: SampleContext) -> Sample:
    width = ctx.uniform(0.5, 2.0)
    extent = ctx.uniform(0.2, 0.8) * width
    depth = ctx.uniform(0.2, 0.6)
    low = ctx.uniform(0.1, 0.4)
    high = low + ctx.uniform(0.2, 0.5)
    bulge = ctx.uniform(0.2, 0.6)
    modulus = 1 / width
    # rectangle (0, w, w + i, i) extended below its side (a,b)
    extended = MarkedPolygon(
        [0, -1j * depth, extent - 1j * depth, extent, width, width + 1j, 1j], (0, 4, 5, 6))
    # the same rectangle extended beyond its side (b,c)
    bumped = MarkedPolygon(
        [0, width, width + 1j * low, width + bulge + 1j * low, width + bulge + 1j * high,
         width + 1j * high, width + 1j, 1j], (0, 1, 6, 7))
    return Sample(
        {'width': width, 'extent': extent, 'depth': depth, 'low': low, 'high': high,
         'bulge': bulge},
        [_certified(ctx.evaluate.bracket(extended, PROP2_LEVELS), modulus, 'extension of (a,b)'),
         _certified(modulus, ctx.evaluate.bracket(bumped, PROP2_LEVELS), 'extension of (b,c)')])


def _random_convex(rng: np.random.Generator) -> Quadrilateral:
    noise = rng.uniform(-0.25, 0.25, 4) + 1j * rng.uniform(-0.25, 0.25, 4)
    q = validate(Quadrilateral(*(np.array([0, 1, 1 + 1j, 1j]) + noise)))
    if not is_convex(q):
        raise InvalidConfig(f'{repr(q)} is not convex')
    return q


def _th21_motion(rng: np.random.Generator) -> t.Tuple[Quadrilateral, Vertex, complex, MotionClass]:
    q = _random_convex(rng)
    vertex = Vertex(int(rng.integers(4)))
    side = SideLabel(vertex) if rng.random() < 0.5 else SideLabel((vertex - 1) % 4)
    point = q.vertex(vertex)
    other = q.vertex(side.end) if side.start == vertex else q.vertex(side.start)
    start, end = q.side(side)
    target = point + rng.uniform(0.1, 0.6) * (other - point)
    if rng.random() < 0.5:
        outward = -1j * (end - start) / abs(end - start)
        target += rng.uniform(0.05, 0.3) * abs(other - point) * outward
    sign = classify_vertex_motion(q, vertex, target)
    if sign is MotionClass.Indeterminate:
        raise InvalidConfig(f'motion of {vertex} to {target} in {repr(q)} is not certified')
    validate(q.with_vertex(vertex, target))
    return q, vertex, target, sign


@_register(_CHECKS, 'th2.1')
def _th21(ctx: SampleContext) -> Sample:
    q, vertex, target, sign = ctx.draw(_th21_motion)
    before = ctx.evaluate(q)
    after = ctx.evaluate(q.with_vertex(vertex, target))
    if sign is MotionClass.Increase:
        comparison = Comparison.of(after, before, label='increase')
    else:
        comparison = Comparison.of(before, after, label='decrease')
    return Sample({'quad': q.to_dict(), 'vertex': str(vertex), 'target': _xy(target),
                   'sign': sign.value}, [comparison])


def _cor2_config(rng: np.random.Generator) -> t.Tuple[float, complex, float]:
    r = rng.uniform(0.2, 0.8)
    b = complex(rng.uniform(-1.5, 1 + r), rng.uniform(0.2, 2.0))
    phi0 = tangency_phi0(r, b)
    for phi in np.linspace(0, phi0, 9):
        cor2_quad(phi, r, b)
    return r, b, phi0


@_register(_CHECKS, 'cor2')
def _cor2(ctx: SampleContext) -> Sample:
    r, b, phi0 = ctx.draw(_cor2_config)
    values = [ctx.evaluate(cor2_quad(_, r, b)) for _ in np.linspace(0, phi0, 9)]
    return Sample({'r': r, 'b': _xy(b), 'phi0': phi0}, _increasing(values))


def _canonical_polarization(rng: np.random.Generator) -> Quadrilateral:
    if rng.random() < 0.5:
        h = rng.uniform(0.3, 1.0)
        x_a = rng.uniform(-2.0, -0.5)
        x_d = x_a + rng.uniform(0.2, 1.0)
        x_b = rng.uniform(1.0, 2.5)
        x_c = x_b - rng.uniform(0.2, 1.0)
        if not x_d < x_c - 0.2:
            raise InvalidConfig(f'upper side ({x_c}, {x_d}) is too short')
        return Quadrilateral(x_a - 1j * h, x_b - 1j * h, x_c + 1j * h, x_d + 1j * h)
    theta = rng.uniform(0.15, 1.0)
    r_a = rng.uniform(0.5, 1.5)
    r_d = r_a + rng.uniform(0.2, 1.0)
    r_b = r_d + rng.uniform(0.6, 1.5)
    r_c = rng.uniform(r_d + 0.2, r_b - 0.2)
    lower, upper = cmath.exp(-1j * theta), cmath.exp(1j * theta)
    return Quadrilateral(r_a * lower, r_b * lower, r_c * upper, r_d * upper)


def _th31_config(rng: np.random.Generator) -> t.Tuple[Quadrilateral, Quadrilateral]:
    q = _canonical_polarization(rng)
    rotation = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
    shift = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    q = validate(q.mapped(lambda z: rotation * z + shift))
    if rng.random() < 0.5:
        q = validate(q.mirrored())
    return q, polarize(q)


@_register(_CHECKS, 'th3.1')
def _th31(ctx: SampleContext) -> Sample:
    q, polarized = ctx.draw(_th31_config)
    return Sample({'quad': q.to_dict(), 'polarized': polarized.to_dict()},
                  [Comparison.of(ctx.evaluate(q), ctx.evaluate(polarized))])


def _trapezoid(rng: np.random.Generator) -> TrapezoidSpec:
    alpha = rng.uniform(-2.0, 1.0)
    delta = rng.uniform(-2.0, 1.0)
    return TrapezoidSpec(alpha, alpha + rng.uniform(0.3, 2.0), delta + rng.uniform(0.3, 2.0),
                         delta)


def _lambda_values(ctx: SampleContext, spec: TrapezoidSpec) -> t.List[ModulusEstimate]:
    return [ctx.evaluate(symmetrize_lambda(spec, _).quadrilateral())
            for _ in np.linspace(0, 1, 11)]


@_register(_CHECKS, 'th4.1')
def _th41(ctx: SampleContext) -> Sample:
    spec = ctx.draw(_trapezoid)
    values = _lambda_values(ctx, spec)
    return Sample({'spec': list(spec.to_tuple())}, _decreasing(values, strict=False))


@_register(_CHECKS, 'remark2')
def _remark2(ctx: SampleContext) -> Sample:
    spec = ctx.draw(_trapezoid)
    values = [ctx.evaluate(_) for _ in remark2_chain(spec)]
    final = values[-1]
    rectangle = Comparison(1e-6, abs(final.value - 1 / spec.area()), final.err, strict=False,
                           label='rectangle of equal area')
    return Sample({'spec': list(spec.to_tuple())},
                  _decreasing(values, strict=False, label='chain') + [rectangle])


def _parallelogram(rng: np.random.Generator) -> TrapezoidSpec:
    alpha = rng.uniform(-2.0, 1.0)
    delta = rng.uniform(-2.0, 1.0)
    length = rng.uniform(0.3, 2.0)
    return TrapezoidSpec(alpha, alpha + length, delta + length, delta)


@_register(_CHECKS, 'reich')
def _reich(ctx: SampleContext) -> Sample:
    spec = ctx.draw(_parallelogram)
    return Sample({'spec': list(spec.to_tuple())}, _convex(_lambda_values(ctx, spec)))


def _weighted_family(rng: np.random.Generator) -> WeightedFamily:
    count = int(rng.choice([2, 3]))
    weights = rng.dirichlet(np.ones(count))
    if weights.min() < 0.05:
        raise InvalidConfig(f'weights {weights} are too uneven')
    weights = tuple(float(_) for _ in weights[:-1]) + (1 - math.fsum(weights[:-1]),)
    return WeightedFamily(tuple(_trapezoid(rng) for _ in range(count)), weights)


@_register(_CHECKS, 'th5.1')
def _th51(ctx: SampleContext) -> Sample:
    family = ctx.draw(_weighted_family)
    values = [ctx.evaluate(_.quadrilateral()) for _ in family.specs]
    averaged = ctx.evaluate(average(family).quadrilateral())
    mean = math.fsum(w * _.value for w, _ in zip(family.weights, values))
    budget = averaged.err + math.fsum(w * _.err for w, _ in zip(family.weights, values))
    return Sample(
        {'specs': [list(_.to_tuple()) for _ in family.specs], 'weights': list(family.weights)},
        [Comparison(mean, averaged.value, budget, strict=False, label='average')])


def _cor52_config(rng: np.random.Generator) -> t.Tuple[float, float, float]:
    alpha = rng.uniform(-1.0, 1.0)
    delta = rng.uniform(-1.5, 0.5)
    gamma = delta + rng.uniform(0.3, 2.0)
    for y in alpha + np.linspace(0.1, 3.0, 9):
        validate(cor52_quad(y, alpha, gamma, delta))
    return alpha, gamma, delta


@_register(_CHECKS, 'cor5.2')
def _cor52(ctx: SampleContext) -> Sample:
    alpha, gamma, delta = ctx.draw(_cor52_config)
    values = [ctx.evaluate(cor52_quad(_, alpha, gamma, delta))
              for _ in alpha + np.linspace(0.1, 3.0, 9)]
    return Sample({'alpha': alpha, 'gamma': gamma, 'delta': delta},
                  _decreasing(values) + _convex(values))


@_register(_CHECKS, 'th5.3')
def _th53(ctx: SampleContext) -> Sample:
    beta = ctx.uniform(0.5, 2.0)
    symmetric = ctx.rng.random() < 0.25
    gamma = beta if symmetric else beta * ctx.uniform(0.3, 0.95)
    y = -gamma * ctx.uniform(0.1, 0.9)
    falling = [ctx.evaluate(q1_quad(_, beta, gamma)) for _ in _interior(-gamma, 0, 9)]
    lhs, rhs = ctx.evaluate(q1_quad(y, beta, gamma)), ctx.evaluate(q1_quad(-y, beta, gamma))
    # gamma = beta makes q1(y) and q1(-y) mirror images with equal moduli
    reflected = [Comparison.of(lhs, rhs, strict=not symmetric, label='reflection')]
    if symmetric:
        reflected.append(Comparison.of(rhs, lhs, strict=False, label='reflection'))
    convex = [ctx.evaluate(q1_quad(_, beta, gamma)) for _ in _interior(-gamma, beta, 9)]
    return Sample({'beta': beta, 'gamma': gamma, 'y': y},
                  _decreasing(falling) + reflected + _convex(convex))


@_register(_CHECKS, 'th5.4')
def _th54(ctx: SampleContext) -> Sample:
    phi = ctx.uniform(0.2, 1.2)
    r1 = ctx.uniform(1.05, 1.5) / math.cos(phi)
    spec = RaySideSpec(phi, r1, r1 * ctx.uniform(1.0, 1.5))
    low, high = spec.partner(spec.r1), 1 / math.cos(phi)
    margin = 0.05 * (high - low)
    falling = [ctx.evaluate(q2_quad(_, spec)) for _ in _interior(low + margin, high - margin, 9)]
    r = ctx.uniform(low + margin, high - margin)
    swapped = Comparison.of(ctx.evaluate(q2_quad(r, spec)),
                            ctx.evaluate(q2_quad(spec.partner(r), spec)), label='partner')
    convex = [ctx.evaluate(q2_quad(1 / _, spec)) for _ in _interior(*spec.inverse_range, 9)]
    return Sample({'phi': phi, 'r1': spec.r1, 'r2': spec.r2, 'r': r},
                  _decreasing(falling) + [swapped] + _convex(convex))


def _q61_config(rng: np.random.Generator) -> t.Tuple[Quadrilateral, Quadrilateral]:
    a = 1 + rng.uniform(0.3, 2.0) * cmath.exp(1j * rng.uniform(0.05, math.pi / 2 - 0.05))
    b = rng.uniform(0.3, 2.0) * cmath.exp(1j * rng.uniform(math.pi / 2 + 0.05, math.pi - 0.05))
    q = validate(Quadrilateral(a, b, 0, 1))
    return q, validate(Quadrilateral(1 + 1j * abs(a - 1), 1j * abs(b), 0, 1))


@_register(_CHECKS, 'q6.1')
def _q61(ctx: SampleContext) -> Sample:
    q, upright = ctx.draw(_q61_config)
    return Sample({'quad': q.to_dict()},
                  [Comparison.of(ctx.evaluate(upright), ctx.evaluate(q), strict=False)])


@_register(_CHECKS, 'q6.2')
def _q62(ctx: SampleContext) -> Sample:
    h, k = ctx.uniform(0.3, 2.0), ctx.uniform(0.3, 2.0)
    values = [ctx.evaluate(g_quad(_, h, k)) for _ in np.linspace(-3 * k, k, 9)]
    center = values[4]
    others = values[:4] + values[5:]
    largest = max(others, key=lambda _: _.value)
    return Sample({'h': h, 'k': k},
                  [Comparison.of(center, largest, label='maximum at t = -k')])


def _op63_sample(ctx: SampleContext, variant: str) -> Sample:
    a = 1 + ctx.uniform(0.3, 2.0) * cmath.exp(1j * ctx.uniform(0.1, math.pi - 0.1))
    b = ctx.uniform(0.3, 2.0) * cmath.exp(1j * ctx.uniform(0.1, math.pi - 0.1))
    q, comparison = ctx.draw(lambda _: op63_pair(a, b, variant))
    return Sample({'a': _xy(a), 'b': _xy(b), 'variant': variant},
                  [Comparison.of(ctx.evaluate(comparison), ctx.evaluate(q), strict=False)])


@_register(_PROBLEMS, 'op63a')
def _op63a(ctx: SampleContext) -> Sample:
    return _op63_sample(ctx, 'a')


@_register(_PROBLEMS, 'op63b')
def _op63b(ctx: SampleContext) -> Sample:
    return _op63_sample(ctx, 'b')


@_register(_PROBLEMS, 'op65')
def _op65(ctx: SampleContext) -> Sample:
    alpha, beta = ctx.uniform(0.1, math.pi - 0.1), ctx.uniform(0.1, math.pi - 0.1)
    r, s = ctx.uniform(0.3, 2.0), ctx.uniform(0.3, 2.0)
    quads = ctx.draw(lambda _: op65_triple(alpha, beta, r, s))
    c1, c2, c3 = [ctx.evaluate(_) for _ in quads]
    low = min(c2, c3, key=lambda _: _.value)
    high = max(c2, c3, key=lambda _: _.value)
    return Sample({'alpha': alpha, 'beta': beta, 'r': r, 's': s},
                  [Comparison.of(c1, low, strict=False, label='c1 >= min(c2, c3)'),
                   Comparison.of(high, c1, strict=False, label='max(c2, c3) >= c1')])


CHECK_IDS = ('prop1', 'prop2', 'th2.1', 'cor2', 'th3.1', 'th4.1', 'remark2', 'reich', 'th5.1',
             'cor5.2', 'th5.3', 'th5.4', 'q6.1', 'q6.2')
"""Every check, in the order of verify_all()."""

PROBLEM_IDS = ('op63a', 'op63b', 'op65')

assert set(CHECK_IDS) == set(_CHECKS) and set(PROBLEM_IDS) == set(_PROBLEMS)


@dataclasses.dataclass
class _SampleResult:
    index: int
    sample: t.Optional[Sample]
    rejections: int
    skipped: t.Optional[str] = None
    fault: t.Optional[str] = None


def _run(check_id: str, function: SampleFunction, cfg: CheckConfig, exploratory: bool) -> Report:
    start = time.perf_counter()
    evaluate = Evaluator(cfg.method)
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.samples)
    max_draws = 1 if exploratory else MAX_DRAWS

    def run_sample(index: int) -> _SampleResult:
        ctx = SampleContext(np.random.default_rng(seeds[index]), evaluate, max_draws)
        try:
            return _SampleResult(index, function(ctx), ctx.rejections)
        except InvalidConfig as err:
            _LOG.debug('%s sample %i skipped: %s', check_id, index, err)
            return _SampleResult(index, None, ctx.rejections, skipped=str(err))
        except ArithmeticError as err:
            _LOG.warning('%s sample %i solver fault: %s', check_id, index, err)
            return _SampleResult(index, None, ctx.rejections,
                                 fault=f'{type(err).__name__}: {err}')

    if cfg.workers > 1:
        with concurrent.futures.ThreadPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(run_sample, range(cfg.samples)))
    else:
        results = [run_sample(_) for _ in range(cfg.samples)]

    report = Report(check_id, cfg.seed, cfg.samples, exploratory=exploratory)
    for result in results:
        report.rejections += result.rejections
        if result.skipped is not None:
            report.skipped.append({'index': result.index, 'reason': result.skipped})
            continue
        if result.fault is not None:
            report.faults.append({'index': result.index, 'error': result.fault})
            continue
        assert result.sample is not None
        _tally(report, result.index, result.sample, cfg.margin)
    draws = report.rejections + cfg.samples
    if report.rejections > draws / 2:
        _LOG.warning('%s rejected %i of %i drawn configurations', check_id, report.rejections,
                     draws)
    report.runtime_ms = (time.perf_counter() - start) * 1000
    _LOG.info('%s: %s', check_id, report.summary)
    return report


def _tally(report: Report, index: int, sample: Sample, multiplier: float) -> None:
    outcomes = [_.outcome(multiplier) for _ in sample.comparisons]
    for comparison in sample.comparisons:
        report.worst_margin = min(report.worst_margin, comparison.margin)
        report.error_budget = max(report.error_budget, comparison.budget)
    if Outcome.Fail in outcomes:
        worst = min((_ for _, outcome in zip(sample.comparisons, outcomes)
                     if outcome is Outcome.Fail), key=lambda _: _.margin)
        report.failures.append(Failure(
            {'index': index, **sample.input, 'comparison': worst.label},
            worst.lhs, worst.rhs, worst.margin))
    elif Outcome.Inconclusive in outcomes:
        report.inconclusive += 1
    else:
        report.passes += 1
    _LOG.debug('%s sample %i: %s', report.check_id, index, outcomes)


def verify(check_id: str, cfg: t.Optional[CheckConfig] = None) -> Report:
    """Run one check with seeded sampling."""
    if check_id not in _CHECKS:
        raise UnknownCheck(f'check id {repr(check_id)} is not one of {CHECK_IDS}')
    return _run(check_id, _CHECKS[check_id], cfg or CheckConfig(), exploratory=False)


def verify_all(cfg: t.Optional[CheckConfig] = None) -> t.List[Report]:
    return [verify(_, cfg) for _ in CHECK_IDS]


def explore(problem: str, cfg: t.Optional[CheckConfig] = None) -> Report:
    """Sample an open problem; the report lists supported samples and candidate counterexamples."""
    if problem not in _PROBLEMS:
        raise UnknownCheck(f'problem {repr(problem)} is not one of {PROBLEM_IDS}')
    return _run(problem, _PROBLEMS[problem], cfg or CheckConfig(), exploratory=True)


def slope_2_3(modulus: float, phi: float, h_seq: t.Sequence[float] = DEFAULT_H_SEQ,
              evaluate: t.Optional[Evaluator] = None) -> t.Tuple[float, float]:
    """First-order coefficient of the modulus when the vertex at 0 of a rectangle moves inward.

    Difference quotients along h_seq are extrapolated to h = 0 by repeated Richardson
    elimination of the powers of h. The error is the change of the last extrapolation step
    plus the propagated modulus errors.
    """
    h_seq = [float(_) for _ in h_seq]
    if len(h_seq) < 3:
        raise OutOfRange(f'h_seq={h_seq} needs at least 3 values')
    if not all(_ > 0 for _ in h_seq) or any(x <= y for x, y in zip(h_seq, h_seq[1:])):
        raise OutOfRange(f'h_seq={h_seq} is not a decreasing sequence of positive values')
    evaluate = evaluate or Evaluator()
    estimates = [evaluate(notch_quad(modulus, phi, _)) for _ in h_seq]
    table = [(_.value - modulus) / h for _, h in zip(estimates, h_seq)]
    noise = max(_.err / h for _, h in zip(estimates, h_seq))
    diagonal = [table[-1]]
    for order in range(1, len(h_seq)):
        table = [(h_seq[i] * table[i + 1] - h_seq[i + order] * table[i])
                 / (h_seq[i] - h_seq[i + order]) for i in range(len(table) - 1)]
        diagonal.append(table[-1])
    slope = diagonal[-1]
    err = abs(diagonal[-1] - diagonal[-2]) + noise
    _LOG.debug('slope for M=%g, phi=%g: %.12g +- %.3g', modulus, phi, slope, err)
    return slope, err


def region_map(q: Quadrilateral, vertex: t.Union[Vertex, str], grid: int = 8,
               rho: float = 0.05, angles: t.Optional[t.Sequence[float]] = None,
               margin: float = 3.0, evaluate: t.Optional[Evaluator] = None) -> RegionMapGrid:
    """Sign of the modulus change for the vertex moved by rho in each probe direction.

    Probe directions are grid equally spaced angles unless angles are given.
    """
    if isinstance(vertex, str):
        vertex = Vertex.from_str(vertex)
    if not rho > 0:
        raise OutOfRange(f'rho={repr(rho)} is not positive')
    if angles is None:
        if grid < 1:
            raise OutOfRange(f'grid={repr(grid)} must be at least 1')
        angles = [2 * math.pi * _ / grid for _ in range(grid)]
    evaluate = evaluate or Evaluator()
    center = q.vertex(vertex)
    moved = []
    for angle in angles:
        target = center + rho * cmath.exp(1j * angle)
        try:
            moved.append(validate(q.with_vertex(vertex, target)))
        except ValueError as err:
            raise OutOfRange(
                f'rho={rho} moves {vertex} of {repr(q)} to invalid {target}: {err}') from err
    base = evaluate(q)
    probes = []
    for angle, quad in zip(angles, moved):
        estimate = evaluate(quad)
        change = estimate.value - base.value
        budget = estimate.err + base.err
        sign = 0 if abs(change) <= budget else int(math.copysign(1, change))
        probes.append(RegionProbe(quad.vertex(vertex), float(angle), rho, estimate.value,
                                  estimate.err, sign, abs(change) > margin * budget))
    return RegionMapGrid(str(vertex), center, rho, base.value, probes)


@dataclasses.dataclass(frozen=True)
class _Family:
    parameter_name: str
    required: t.Tuple[str, ...]
    grid: t.Callable[[t.Dict[str, t.Any], int], np.ndarray]
    build: t.Callable[[float, t.Dict[str, t.Any]], Quadrilateral]


def _spec(params) -> TrapezoidSpec:
    return TrapezoidSpec(params['alpha'], params['beta'], params['gamma'], params['delta'])


def _ray_spec(params) -> RaySideSpec:
    return RaySideSpec(params['phi'], params['r1'], params['r2'])


FAMILIES: t.Dict[str, _Family] = {
    'qlambda': _Family(
        'lambda', ('alpha', 'beta', 'gamma', 'delta'),
        lambda p, n: np.linspace(0, 1, n),
        lambda x, p: symmetrize_lambda(_spec(p), x).quadrilateral()),
    'q1': _Family(
        'y', ('beta', 'gamma'),
        lambda p, n: _interior(-p['gamma'], p['beta'], n),
        lambda x, p: q1_quad(x, p['beta'], p['gamma'])),
    'q2': _Family(
        'p', ('phi', 'r1', 'r2'),
        lambda p, n: _interior(*_ray_spec(p).inverse_range, n),
        lambda x, p: q2_quad(1 / x, _ray_spec(p))),
    'g': _Family(
        't', ('h', 'k'),
        lambda p, n: np.linspace(p.get('t_min', -3 * p['k']), p.get('t_max', p['k']), n),
        lambda x, p: g_quad(x, p['h'], p['k'])),
    'cor2': _Family(
        'phi', ('r', 'b'),
        lambda p, n: np.linspace(0, tangency_phi0(p['r'], to_point(p['b'], 'b')), n),
        lambda x, p: cor2_quad(x, p['r'], to_point(p['b'], 'b'))),
    'notch': _Family(
        'h', ('M', 'phi'),
        lambda p, n: np.linspace(0, p.get('h_max', min(p['M'], 1) / 4), n),
        lambda x, p: notch_quad(p['M'], p['phi'], x)),
    'cor5.2': _Family(
        'y', ('alpha', 'gamma', 'delta'),
        lambda p, n: p['alpha'] + p.get('span', 3.0) * np.arange(1, n + 1) / n,
        lambda x, p: cor52_quad(x, p['alpha'], p['gamma'], p['delta'])),
    'prop1': _Family(
        't', ('apex',),
        lambda p, n: _interior(0, 1, n),
        lambda x, p: slide_quad(to_point(p['apex'], 'apex'), x))}
"""Parameter name, required parameters, grid and quadrilateral of every sweep family."""


def sweep(family: str, params: t.Mapping[str, t.Any], grid: int = 11,
          evaluate: t.Optional[Evaluator] = None) -> SweepTable:
    """Modulus with its error along the parameter grid of a family."""
    if family not in FAMILIES:
        raise UnknownFamily(f'family {repr(family)} is not one of {tuple(FAMILIES)}')
    if grid < 2:
        raise OutOfRange(f'grid={repr(grid)} must be at least 2')
    definition = FAMILIES[family]
    params = dict(params)
    missing = [_ for _ in definition.required if _ not in params]
    if missing:
        raise InvalidConfig(f'family {family} needs parameters {missing}, got {sorted(params)}')
    evaluate = evaluate or Evaluator()
    rows = []
    for value in definition.grid(params, grid):
        estimate = evaluate(definition.build(float(value), params))
        rows.append(SweepRow(float(value), estimate.value, estimate.err))
    return SweepTable(family, definition.parameter_name, rows)
