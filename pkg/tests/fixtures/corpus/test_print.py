import logging
import sys
import unittest
from pprint import pprint

from tree import Node

log = logging.getLogger(__name__)


class PrintResult(unittest.TestCase):
    def test_value(self):
        result = Node().value
        print(result)
        self.assertIsNotNone(result)


class PrintToStderr(unittest.TestCase):
    def test_value(self):
        result = Node().value
        print("value:", result, file=sys.stderr)
        self.assertIsNotNone(result)


class PrintInHelper(unittest.TestCase):
    def test_value(self):
        def show(value):
            print(value)

        result = Node().value
        show(result)
        self.assertIsNotNone(result)


class LoggerInstead(unittest.TestCase):
    def test_value(self):
        result = Node().value
        log.debug("value %s", result)
        self.assertIsNotNone(result)


class PrettyPrint(unittest.TestCase):
    def test_value(self):
        result = Node().value
        pprint(result)
        self.assertIsNotNone(result)


class PrinterMethod(unittest.TestCase):
    def test_value(self):
        result = Node().value
        result.printer.print()
        self.assertIsNotNone(result)
