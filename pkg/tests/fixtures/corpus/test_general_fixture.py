import unittest

from store import Database, Logger


class FixtureAllUsed(unittest.TestCase):
    def setUp(self):
        self.db = Database()
        self.log = Logger()

    def test_write(self):
        self.db.write(self.log)
        self.assertTrue(self.db.dirty)


class FixturePartial(unittest.TestCase):
    def setUp(self):
        self.db = Database()
        self.log = Logger()

    def test_write(self):
        self.db.write(self.log)
        self.assertTrue(self.db.dirty)

    def test_read(self):
        self.db.read()
        self.assertTrue(self.db.dirty)


class FixtureMaverick(unittest.TestCase):
    def setUp(self):
        self.db = Database()

    def test_write(self):
        self.db.write()
        self.assertTrue(self.db.dirty)

    def test_ignores_db(self):
        db = Database()
        db.write()
        self.assertTrue(db.dirty)


class FixtureLocalsOnly(unittest.TestCase):
    def setUp(self):
        db = Database()
        db.reset()

    def test_write(self):
        db = Database()
        self.assertTrue(db.write())


class NoFixture(unittest.TestCase):
    def test_write(self):
        db = Database()
        self.assertTrue(db.write())


class ClassLevelFixture(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.db = Database()
        cls.log = Logger()

    def test_write(self):
        self.assertTrue(self.db.write())


class FixtureOverwritten(unittest.TestCase):
    def setUp(self):
        self.items = []

    def test_overwrites_field(self):
        self.items = [Database()]
        self.assertTrue(Database().write())
