"""Tests of the quadrilateral value type."""

import json
import logging
import unittest

import hypothesis
import hypothesis.strategies as st

from quad_modulus.exceptions import InputError
from quad_modulus.quadrilateral import MotionClass, Quadrilateral, SideLabel, Vertex, to_point
from .examples import BAD_QUAD_DICTS, GENERIC_QUADRILATERALS, KNOWN_MODULUS_CASES, UNIT_SQUARE

_LOG = logging.getLogger(__name__)

_COORDINATES = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)

_POINTS = st.builds(complex, _COORDINATES, _COORDINATES)


class Tests(unittest.TestCase):

    def test_vertex_from_str(self):
        for name, vertex in [('a', Vertex.A), ('B', Vertex.B), ('c', Vertex.C), ('D', Vertex.D)]:
            with self.subTest(name=name):
                self.assertIs(Vertex.from_str(name), vertex)
                self.assertEqual(str(vertex), name.lower())
        with self.assertRaises(ValueError):
            Vertex.from_str('e')

    def test_side_label(self):
        self.assertEqual(SideLabel.AB.start, Vertex.A)
        self.assertEqual(SideLabel.DA.end, Vertex.A)
        self.assertEqual(str(SideLabel.BC), 'BC')
        # in the labeling (b, c, d, a) the old side BC becomes the first side
        self.assertEqual(SideLabel.BC.rotated(), SideLabel.AB)
        self.assertEqual(SideLabel.AB.rotated(), SideLabel.DA)
        for label in SideLabel:
            self.assertEqual(label.rotated(4), label)

    def test_motion_class_opposite(self):
        self.assertIs(MotionClass.Increase.opposite(), MotionClass.Decrease)
        self.assertIs(MotionClass.Decrease.opposite(), MotionClass.Increase)
        self.assertIs(MotionClass.Indeterminate.opposite(), MotionClass.Indeterminate)

    def test_to_point(self):
        self.assertEqual(to_point(1), 1 + 0j)
        self.assertEqual(to_point([1.5, -2]), 1.5 - 2j)
        self.assertEqual(to_point((0, 1)), 1j)
        with self.assertRaises(InputError):
            to_point([1, 2, 3])
        with self.assertRaises(InputError):
            to_point(complex(float('nan'), 0))
        with self.assertRaises(TypeError):
            to_point(None)
        with self.assertRaises(TypeError):
            to_point('1, 2')

    def test_from_dict(self):
        q = Quadrilateral.from_dict({'a': [0, 0], 'b': [1, 0], 'c': [1, 1], 'd': [0, 1]})
        self.assertEqual(q, UNIT_SQUARE)
        for q, _ in KNOWN_MODULUS_CASES.values():
            with self.subTest(q=q):
                self.assertEqual(Quadrilateral.from_dict(q.to_dict()), q)
                text = json.dumps(q.to_dict())
                self.assertEqual(Quadrilateral.from_dict(json.loads(text)), q)

    def test_from_dict_bad(self):
        for description, (data, message) in BAD_QUAD_DICTS.items():
            with self.subTest(description=description):
                with self.assertRaises(InputError) as context:
                    Quadrilateral.from_dict(data)
                _LOG.debug('%s: %s', description, context.exception)
                self.assertIn(message, str(context.exception))

    def test_from_dict_missing_field_name(self):
        with self.assertRaises(InputError) as context:
            Quadrilateral.from_dict({'a': [0, 0], 'b': [1, 0], 'c': [1, 1]})
        self.assertEqual(context.exception.field, 'd')

    def test_from_tuple(self):
        self.assertEqual(Quadrilateral.from_tuple([0, 1, 1 + 1j, 1j]), UNIT_SQUARE)
        with self.assertRaises(ValueError):
            Quadrilateral.from_tuple([0, 1, 1j])

    def test_accessors(self):
        q = UNIT_SQUARE
        self.assertEqual((q.a, q.b, q.c, q.d), (0, 1, 1 + 1j, 1j))
        self.assertEqual(q.vertex(Vertex.C), 1 + 1j)
        self.assertEqual(q.side(SideLabel.DA), (1j, 0))
        self.assertEqual(q.side_lengths(), (1.0, 1.0, 1.0, 1.0))
        self.assertAlmostEqual(q.diameter(), 2 ** 0.5)
        self.assertEqual(list(q), [0, 1, 1 + 1j, 1j])

    def test_rotated(self):
        self.assertEqual(UNIT_SQUARE.rotated(), Quadrilateral(1, 1 + 1j, 1j, 0))
        self.assertEqual(UNIT_SQUARE.rotated(-1), Quadrilateral(1j, 0, 1, 1 + 1j))
        for q in GENERIC_QUADRILATERALS:
            with self.subTest(q=q):
                self.assertEqual(q.rotated(4), q)
                self.assertEqual(q.rotated().rotated().rotated(), q.rotated(3))

    def test_mirrored(self):
        q = Quadrilateral(0, 2, 1.5 + 1j, 0.3 + 0.8j)
        self.assertEqual(q.mirrored(), Quadrilateral(0.3 - 0.8j, 1.5 - 1j, 2, 0))
        self.assertEqual(q.mirrored().mirrored(), q)

    def test_with_vertex(self):
        moved = UNIT_SQUARE.with_vertex(Vertex.A, [0.1, 0.2])
        self.assertEqual(moved.a, 0.1 + 0.2j)
        self.assertEqual(moved.vertices[1:], UNIT_SQUARE.vertices[1:])
        self.assertEqual(UNIT_SQUARE.a, 0)

    def test_isclose_and_hash(self):
        nearly = UNIT_SQUARE.mapped(lambda z: z + 1e-14)
        self.assertTrue(UNIT_SQUARE.isclose(nearly))
        self.assertNotEqual(UNIT_SQUARE, nearly)
        self.assertEqual(hash(UNIT_SQUARE), hash(Quadrilateral(0, 1, 1 + 1j, 1j)))
        self.assertEqual(len({UNIT_SQUARE, Quadrilateral(0, 1, 1 + 1j, 1j)}), 1)
        self.assertNotEqual(UNIT_SQUARE, UNIT_SQUARE.vertices)

    def test_repr(self):
        self.assertEqual(repr(UNIT_SQUARE), 'Quadrilateral(0j, (1+0j), (1+1j), 1j)')

    @hypothesis.given(st.lists(_POINTS, min_size=4, max_size=4), st.integers(-8, 8))
    def test_rotations_compose(self, points, steps):
        q = Quadrilateral(*points)
        self.assertEqual(q.rotated(steps).rotated(-steps), q)
        self.assertEqual(Quadrilateral.from_dict(q.to_dict()), q)
