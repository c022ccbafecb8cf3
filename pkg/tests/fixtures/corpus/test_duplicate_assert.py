import unittest

from inventory import Stock

APPLE = "apple"
PEAR = "pear"
PLACES = 3
DELTA = 0.5


class SameArgumentsDifferentMessages(unittest.TestCase):
    def test_add(self):
        stock = Stock()
        stock.add(APPLE)
        self.assertIn(APPLE, stock, "added once")
        stock.add(APPLE)
        self.assertIn(APPLE, stock, "added twice")


class SameArgumentsDifferentSpacing(unittest.TestCase):
    def test_add(self):
        stock = Stock()
        stock.add(APPLE)
        self.assertIn(APPLE, stock, "first")
        stock.remove(PEAR)
        self.assertIn( APPLE ,stock, "second")


class SameBareAsserts(unittest.TestCase):
    def test_add(self):
        stock = Stock()
        stock.add(APPLE)
        assert APPLE in stock, "first"
        stock.add(PEAR)
        assert APPLE in stock, "second"


class DistinctArguments(unittest.TestCase):
    def test_add(self):
        stock = Stock()
        stock.add(APPLE)
        stock.add(PEAR)
        self.assertIn(APPLE, stock, "apple stored")
        self.assertIn(PEAR, stock, "pear stored")


class SameAssertInTwoCases(unittest.TestCase):
    def test_add_apple(self):
        stock = Stock()
        stock.add(APPLE)
        self.assertIn(APPLE, stock)

    def test_add_apple_again(self):
        stock = Stock()
        stock.add(APPLE)
        self.assertIn(APPLE, stock)


class DistinctKeywords(unittest.TestCase):
    def test_weight(self):
        stock = Stock()
        self.assertAlmostEqual(stock.weight(APPLE), stock.weight(PEAR), places=PLACES, msg="close")
        self.assertAlmostEqual(stock.weight(APPLE), stock.weight(PEAR), delta=DELTA, msg="near")
