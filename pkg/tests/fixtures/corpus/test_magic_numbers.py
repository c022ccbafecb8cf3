import unittest

from geometry import area, ratio, origin

EXPECTED = 42


class IntegerLiteral(unittest.TestCase):
    def test_area(self):
        self.assertEqual(area(origin()), 42)


class FloatWithMessage(unittest.TestCase):
    def test_ratio(self):
        self.assertAlmostEqual(ratio(origin()), 0.5, msg="golden ratio approximation")


class NegativeLiteral(unittest.TestCase):
    def test_direction(self):
        self.assertEqual(origin().direction, -1)


class NestedInTuple(unittest.TestCase):
    def test_coordinates(self):
        self.assertEqual(origin().coords, (0, 0))


class NamedConstant(unittest.TestCase):
    def test_area(self):
        self.assertEqual(area(origin()), EXPECTED)


class StringLiteral(unittest.TestCase):
    def test_name(self):
        self.assertEqual(origin().name, "zero")


class BareAssertLiteral(unittest.TestCase):
    def test_area(self):
        assert area(origin()) == 42
