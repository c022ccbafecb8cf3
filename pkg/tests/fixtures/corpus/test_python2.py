import unittest


class LegacyTests(unittest.TestCase):
    def test_print(self):
        print "legacy"
        self.assertTrue(True)
