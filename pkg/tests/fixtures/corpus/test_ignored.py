import sys
import unittest
from unittest import mock, skipUnless

import pytest

from network import fetch

URL = "https://example.org"


class SkipTests(unittest.TestCase):
    @unittest.skip("server is down")
    def test_fetch(self):
        self.assertIsNotNone(fetch(URL))


class SkipIfTests(unittest.TestCase):
    @unittest.skipIf(sys.platform == "win32", "no sockets on windows")
    def test_fetch(self):
        self.assertIsNotNone(fetch(URL))


class SkipUnlessTests(unittest.TestCase):
    @skipUnless(sys.platform.startswith("linux"), "linux only")
    def test_fetch(self):
        self.assertIsNotNone(fetch(URL))


@unittest.skip("whole suite disabled")
class SkippedSuite(unittest.TestCase):
    def test_fetch(self):
        self.assertIsNotNone(fetch(URL))

    def test_fetch_twice(self):
        self.assertIsNotNone(fetch(URL))


class ExpectedFailureTests(unittest.TestCase):
    @unittest.expectedFailure
    def test_fetch(self):
        self.assertIsNotNone(fetch(URL))


class PytestMarkTests(unittest.TestCase):
    @pytest.mark.skip(reason="not a unittest decorator")
    def test_fetch(self):
        self.assertIsNotNone(fetch(URL))


class PatchedTests(unittest.TestCase):
    @mock.patch("network.fetch")
    def test_fetch(self, fake):
        self.assertIsNotNone(fetch(URL))
