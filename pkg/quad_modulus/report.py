"""Run configuration and result containers, with their JSON and CSV forms."""

import csv
import dataclasses
import enum
import io
import json
import logging
import pathlib
import typing as t

from .exceptions import InvalidConfig
from .sc_solver import Method

__all__ = [
    'DEFAULT_MARGIN', 'DEFAULT_SAMPLES', 'CheckConfig', 'Outcome', 'Failure', 'Report',
    'RegionProbe', 'RegionMapGrid', 'SweepRow', 'SweepTable', 'format_float', 'write_csv',
    'read_csv']

_LOG = logging.getLogger(__name__)

DEFAULT_MARGIN = 3.0

DEFAULT_SAMPLES = 10


def format_float(value: float) -> str:
    """Decimal form with 17 significant digits, which round-trips exactly."""
    return f'{value:.17g}'


@dataclasses.dataclass(frozen=True)
class CheckConfig:
    """Seeded sampling setup of a verification or exploration run."""

    seed: int = 0
    samples: int = DEFAULT_SAMPLES
    method: Method = Method.SC
    margin: float = DEFAULT_MARGIN
    workers: int = 1

    def __post_init__(self):
        if not isinstance(self.seed, int) or self.seed < 0:
            raise InvalidConfig(f'seed={repr(self.seed)} is not a non-negative integer')
        if not isinstance(self.samples, int) or self.samples < 1:
            raise InvalidConfig(f'samples={repr(self.samples)} must be at least 1')
        if not isinstance(self.method, Method):
            raise InvalidConfig(f'method={repr(self.method)} is not a Method')
        if not self.margin >= 1:
            raise InvalidConfig(f'margin={repr(self.margin)} must be at least 1')
        if not isinstance(self.workers, int) or self.workers < 1:
            raise InvalidConfig(f'workers={repr(self.workers)} must be at least 1')


@enum.unique
class Outcome(enum.Enum):
    """Verdict on one sample."""

    Pass = 'pass'
    Inconclusive = 'inconclusive'
    Fail = 'fail'
    Skipped = 'skipped'


@dataclasses.dataclass(frozen=True)
class Failure:
    """Sample whose inequality did not hold, with everything needed to reproduce it."""

    input: t.Dict[str, t.Any]
    lhs: float
    rhs: float
    margin: float

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclasses.dataclass
class Report:
    """Outcome of a check, or of an exploration when exploratory is set.

    Explorations never pass or fail: their counts are reported as supported samples and
    candidate counterexamples.
    """

    check_id: str
    seed: int
    samples: int
    passes: int = 0
    inconclusive: int = 0
    failures: t.List[Failure] = dataclasses.field(default_factory=list)
    skipped: t.List[t.Dict[str, t.Any]] = dataclasses.field(default_factory=list)
    faults: t.List[t.Dict[str, t.Any]] = dataclasses.field(default_factory=list)
    worst_margin: float = float('inf')
    error_budget: float = 0.0
    runtime_ms: float = 0.0
    rejections: int = 0
    exploratory: bool = False

    @property
    def ok(self) -> bool:
        return not self.failures and not self.faults

    @property
    def summary(self) -> str:
        if self.exploratory:
            if self.failures:
                return f'{len(self.failures)} candidate counterexample(s) in {self.samples} samples'
            return f'supported on {self.passes} samples'
        return (f'{self.passes} passed, {len(self.failures)} failed, {self.inconclusive}'
                f' inconclusive, {len(self.skipped)} skipped of {self.samples} samples')

    def to_dict(self, include_runtime: bool = True) -> dict:
        data: t.Dict[str, t.Any] = {'check_id': self.check_id, 'seed': self.seed,
                                    'samples': self.samples}
        failures = [_.to_dict() for _ in self.failures]
        if self.exploratory:
            data.update({'supported': self.passes, 'inconclusive': self.inconclusive,
                         'candidates': failures})
        else:
            data.update({'passes': self.passes, 'inconclusive': self.inconclusive,
                         'failures': failures})
        data.update({
            'skipped': self.skipped, 'faults': self.faults,
            'worst_margin': self.worst_margin if self.worst_margin != float('inf') else None,
            'error_budget': self.error_budget, 'rejections': self.rejections,
            'summary': self.summary})
        if include_runtime:
            data['runtime_ms'] = self.runtime_ms
        return data

    def to_json(self, include_runtime: bool = True) -> str:
        return json.dumps(self.to_dict(include_runtime), indent=2, sort_keys=False)


@dataclasses.dataclass(frozen=True)
class RegionProbe:
    """Modulus change when the center vertex moves to target."""

    target: complex
    angle: float
    radius: float
    modulus: float
    err: float
    sign: int
    certain: bool


@dataclasses.dataclass
class RegionMapGrid:
    """Signs of the modulus change around one vertex."""

    vertex: str
    center: complex
    rho: float
    base_modulus: float
    probes: t.List[RegionProbe]

    header = ('x', 'y', 'angle', 'radius', 'modulus', 'err', 'sign', 'certain')

    def rows(self) -> t.List[t.Tuple[t.Any, ...]]:
        return [(_.target.real, _.target.imag, _.angle, _.radius, _.modulus, _.err, _.sign,
                 int(_.certain)) for _ in self.probes]


@dataclasses.dataclass(frozen=True)
class SweepRow:
    parameter: float
    modulus: float
    err: float


@dataclasses.dataclass
class SweepTable:
    """Modulus along the parameter grid of a family."""

    family: str
    parameter_name: str
    rows: t.List[SweepRow]

    @property
    def header(self) -> t.Tuple[str, str, str]:
        return self.parameter_name, 'modulus', 'err'

    def values(self) -> t.List[float]:
        return [_.modulus for _ in self.rows]

    def tuples(self) -> t.List[t.Tuple[float, float, float]]:
        return [dataclasses.astuple(_) for _ in self.rows]  # type: ignore


def _cell(value: t.Any) -> str:
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def write_csv(header: t.Sequence[str], rows: t.Iterable[t.Sequence[t.Any]],
              path: t.Optional[pathlib.Path] = None) -> str:
    """Write rows with a header line; return the CSV text as well."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(_) for _ in row])
    text = buffer.getvalue()
    if path is not None:
        pathlib.Path(path).write_text(text)
        _LOG.info('wrote %s', path)
    return text


def read_csv(path: pathlib.Path) -> t.Tuple[t.List[str], t.List[t.List[float]]]:
    """Parse CSV written by write_csv into header and rows of floats."""
    with pathlib.Path(path).open(newline='') as csv_file:
        reader = csv.reader(csv_file)
        header = next(reader)
        return header, [[float(_) for _ in row] for row in reader]
