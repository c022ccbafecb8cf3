import unittest


class Helper(object):
    def test_like_name(self):
        return None


class BaseSuite(unittest.TestCase):
    def setUp(self):
        self.ready = True

    def assertOk(self, value):
        self.assertIsNotNone(value)
