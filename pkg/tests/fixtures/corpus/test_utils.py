"""Shared helpers for the suites in this corpus; defines no suites."""


def make_payload(name):
    return {"name": name}


class Recorder:
    def test_record(self):
        print("not a test suite")
