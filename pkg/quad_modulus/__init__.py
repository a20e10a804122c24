"""Initialization of quad_modulus package."""

__all__ = ['Quadrilateral', 'Vertex', 'SideLabel', 'MotionClass',
           'validate', 'classify_vertex_motion', 'polarization_admissible',
           'Method', 'ModulusEstimate', 'modulus_sc', 'Bracket', 'MarkedPolygon',
           'modulus_bracket', 'modulus_fem', 'polarize', 'CheckConfig', 'Report',
           'verify', 'explore', 'slope_2_3', 'region_map', 'sweep']

from .quadrilateral import Quadrilateral, Vertex, SideLabel, MotionClass
from .geometry import validate, classify_vertex_motion, polarization_admissible
from .sc_solver import Method, ModulusEstimate, modulus_sc
from .pde_oracle import Bracket, MarkedPolygon, modulus_bracket, modulus_fem
from .transforms import polarize
from .report import CheckConfig, Report
from .verify import verify, explore, slope_2_3, region_map, sweep
