import unittest

from tree import Node


class SameOperands(unittest.TestCase):
    def test_value(self):
        result = Node().value
        self.assertEqual(result, result)


class ConstantTruth(unittest.TestCase):
    def test_value(self):
        Node().validate()
        self.assertTrue(True)


class SameOperandsSpacing(unittest.TestCase):
    def test_parent(self):
        obj = Node()
        self.assertIs(obj.parent ,  obj.parent)


class DifferentOperands(unittest.TestCase):
    def test_value(self):
        expected = Node().value
        self.assertEqual(Node().value, expected)


class TruthOfCall(unittest.TestCase):
    def test_value(self):
        self.assertTrue(Node().valid())


class FalseOfName(unittest.TestCase):
    def test_value(self):
        broken = Node().broken
        self.assertFalse(broken)
