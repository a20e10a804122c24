"""Elliptic integrals, cross-ratios and Gauss-Jacobi quadrature."""

import cmath
import dataclasses
import functools
import logging
import math
import typing as t

import numpy as np
import scipy.special

from .exceptions import Degenerate, OutOfRange

__all__ = [
    'INFINITY', 'EllipticParam', 'QuadratureRule', 'agm', 'ell_K', 'cross_ratio',
    'modulus_from_crossratio', 'modulus_from_crossratio_excess', 'gauss_jacobi_rule']

_LOG = logging.getLogger(__name__)

INFINITY = complex(math.inf, 0)
"""Tag for the point at infinity in cross_ratio()."""

_AGM_MAX_ITERATIONS = 64


def agm(x: float, y: float) -> float:
    """Arithmetic-geometric mean of two positive numbers."""
    if x <= 0 or y <= 0:
        raise OutOfRange(f'agm({repr(x)}, {repr(y)}) requires positive arguments')
    for _ in range(_AGM_MAX_ITERATIONS):
        if abs(x - y) <= 2 * np.finfo(float).eps * x:
            break
        x, y = (x + y) / 2, math.sqrt(x * y)
    return (x + y) / 2


def ell_K(k: float, kprime: t.Optional[float] = None) -> float:
    """Complete elliptic integral of the first kind, K(k) = pi / (2 agm(1, k')).

    Pass kprime directly when k is close to 1, otherwise sqrt(1 - k^2) loses digits.
    """
    if kprime is None:
        if not 0 <= k < 1:
            raise OutOfRange(f'k={repr(k)} is not in [0, 1)')
        kprime = math.sqrt((1 - k) * (1 + k))
    if not 0 < kprime <= 1:
        raise OutOfRange(f'kprime={repr(kprime)} is not in (0, 1]')
    return math.pi / (2 * agm(1.0, kprime))


@dataclasses.dataclass(frozen=True)
class EllipticParam:
    """Elliptic modulus k with its complement kprime, both stored to full precision."""

    k: float
    kprime: float

    @classmethod
    def from_k(cls, k: float) -> 'EllipticParam':
        if not 0 < k < 1:
            raise OutOfRange(f'k={repr(k)} is not in (0, 1)')
        return cls(k, math.sqrt((1 - k) * (1 + k)))

    @classmethod
    def from_kprime(cls, kprime: float) -> 'EllipticParam':
        return cls.from_k(kprime).swapped()

    def __post_init__(self):
        if not (0 < self.k < 1 and 0 < self.kprime < 1):
            raise OutOfRange(f'k={repr(self.k)} or kprime={repr(self.kprime)} not in (0, 1)')
        if abs(self.k ** 2 + self.kprime ** 2 - 1) > 1e-14:
            raise OutOfRange(f'k^2 + kprime^2 != 1 for {repr(self)}')

    def swapped(self) -> 'EllipticParam':
        return EllipticParam(self.kprime, self.k)

    @property
    def K(self) -> float:  # pylint: disable = invalid-name
        return ell_K(self.k, self.kprime)

    @property
    def Kprime(self) -> float:  # pylint: disable = invalid-name
        return ell_K(self.kprime, self.k)


def cross_ratio(z1: complex, z2: complex, z3: complex, z4: complex) -> float:
    """Cross-ratio ((z1 - z3)(z2 - z4)) / ((z1 - z4)(z2 - z3)), one point may be INFINITY.

    The points are expected to lie on one circle or line, so that the result is real.
    """
    points = [complex(_) for _ in (z1, z2, z3, z4)]
    infinite = [i for i, point in enumerate(points) if cmath.isinf(point)]
    if len(infinite) > 1:
        raise Degenerate(f'more than one point at infinity in {points}')
    finite = [point for point in points if not cmath.isinf(point)]
    for i, p in enumerate(finite):
        for q in finite[i + 1:]:
            if p == q:
                raise Degenerate(f'point {repr(p)} repeats in {points}')
    p1, p2, p3, p4 = points
    if not infinite:
        value = ((p1 - p3) * (p2 - p4)) / ((p1 - p4) * (p2 - p3))
    else:
        value = {
            0: lambda: (p2 - p4) / (p2 - p3),
            1: lambda: (p1 - p3) / (p1 - p4),
            2: lambda: (p2 - p4) / (p1 - p4),
            3: lambda: (p1 - p3) / (p2 - p3)}[infinite[0]]()
    if abs(value.imag) > 1e-12 * max(abs(value), 1.0):
        raise Degenerate(f'points {points} are not concyclic, cross-ratio {value} is not real')
    return value.real


def modulus_from_crossratio_excess(excess: float) -> float:
    """Modulus for cross-ratio 1 + excess, accurate also when excess is tiny or huge."""
    if not excess > 0:
        raise OutOfRange(f'cross-ratio 1 + {repr(excess)} is not greater than 1')
    root = math.sqrt(1 + excess)
    # k = (root - 1) / (root + 1), written without cancellation on either side of excess = 1
    k = excess / (root + 1) ** 2 if excess < 1 else 1 - 2 / (root + 1)
    kprime = min(2 * math.sqrt(root) / (root + 1), 1.0)
    return ell_K(kprime, k) / (2 * ell_K(k, kprime))


def modulus_from_crossratio(cr: float) -> float:
    """Modulus of the upper half-plane with boundary points of cross-ratio cr.

    With k = (sqrt(cr) - 1) / (sqrt(cr) + 1) the result is K(k') / (2 K(k)).
    """
    if not cr > 1:
        raise OutOfRange(f'cross-ratio {repr(cr)} is not greater than 1')
    return modulus_from_crossratio_excess(cr - 1)


@dataclasses.dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule for weight (1 - t)^alpha_exp (1 + t)^beta_exp on (-1, 1)."""

    nodes: np.ndarray
    weights: np.ndarray
    exponents: t.Tuple[float, float]

    def integrate(self, function: t.Callable[[np.ndarray], np.ndarray]) -> float:
        return float(np.dot(self.weights, function(self.nodes)))

    def __len__(self):
        return len(self.nodes)


@functools.lru_cache(maxsize=256)
def gauss_jacobi_rule(n: int, alpha_exp: float, beta_exp: float) -> QuadratureRule:
    """Nodes and weights from the Golub-Welsch eigenvalue method (scipy.special.roots_jacobi)."""
    if n < 1:
        raise OutOfRange(f'rule size n={repr(n)} must be at least 1')
    if alpha_exp <= -1 or beta_exp <= -1:
        raise OutOfRange(f'exponents ({alpha_exp}, {beta_exp}) must be greater than -1')
    nodes, weights = scipy.special.roots_jacobi(n, alpha_exp, beta_exp)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(nodes, weights, (float(alpha_exp), float(beta_exp)))
