"""Errors raised by quad_modulus package.

Invalid input derives from ValueError, numerical trouble from ArithmeticError, and everything
derives from QuadModulusError.
"""

import typing as t


class QuadModulusError(Exception):
    """Base of all errors raised by quad_modulus."""


class DegenerateVertices(QuadModulusError, ValueError):
    """Two vertices of a quadrilateral coincide."""


class SelfIntersecting(QuadModulusError, ValueError):
    """Boundary polyline crosses or touches itself."""


class NegativeOrientation(QuadModulusError, ValueError):
    """Vertices are given clockwise."""


class InvalidTarget(QuadModulusError, ValueError):
    """Proposed vertex motion targets an existing vertex."""


class OutOfRange(QuadModulusError, ValueError):
    """Parameter lies outside of the admissible range of an operation."""


class NotAdmissible(QuadModulusError, ValueError):
    """Quadrilateral does not satisfy the hypotheses of the polarization inequality."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class Degenerate(QuadModulusError, ValueError):
    """Points or parameters collapse onto each other."""


class InvalidConfig(QuadModulusError, ValueError):
    """Configuration of a family, a check or a sampler is invalid."""


class UnknownCheck(QuadModulusError, KeyError):
    """No verification check is registered under the given name."""


class UnknownFamily(QuadModulusError, KeyError):
    """No sweep family is registered under the given name."""


class InputError(QuadModulusError, ValueError):
    """Malformed command-line input."""

    def __init__(self, field: str, message: str):
        super().__init__(f'{field}: {message}')
        self.field = field


class NonIntegrable(QuadModulusError, ArithmeticError):
    """Singular integrand with an exponent at or below -1."""


class NoBracket(QuadModulusError, ArithmeticError):
    """Side-ratio function does not straddle its target on the search interval."""


class ClosureFailure(QuadModulusError, ArithmeticError):
    """Prevertex solution fails to reproduce the fourth side."""

    def __init__(self, message: str, solution: t.Any = None):
        super().__init__(message)
        self.solution = solution


class MeshFailure(QuadModulusError, ArithmeticError):
    """Polygon cannot be triangulated into a valid mesh."""


class SingularSystem(QuadModulusError, ArithmeticError):
    """Finite-element system has no unique solution."""


class ToleranceNotReached(QuadModulusError, ArithmeticError):
    """Refinement stopped before the requested accuracy; carries the achieved bracket."""

    def __init__(self, message: str, bracket: t.Any = None):
        super().__init__(message)
        self.bracket = bracket


class SolverDisagreement(QuadModulusError, ArithmeticError):
    """Schwarz-Christoffel value lies outside of the finite-element bracket."""
