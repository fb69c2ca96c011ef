from django.test import SimpleTestCase

from hqst.errors import DivergenceError, HqstError, IntegrationError, ParseError, ValidationError


class TestValidationError(SimpleTestCase):
    ERRORS = {'gamma1': 'Must be greater than 0.0, not -1.0.'}

    def test_errors_attribute(self):
        self.assertIs(ValidationError(self.ERRORS).errors, self.ERRORS)

    def test_repr(self):
        self.assertEqual(repr(ValidationError(self.ERRORS)),
                         "ValidationError({'gamma1': 'Must be greater than 0.0, not -1.0.'})")

    def test_str(self):
        self.assertEqual(str(ValidationError(self.ERRORS)),
                         "Validation failed: {'gamma1': 'Must be greater than 0.0, not -1.0.'}")


class TestParseError(SimpleTestCase):
    ERROR = 'scenario.ini:3: [link] k: the field is required.'

    def test_error_attribute(self):
        self.assertIs(ParseError(self.ERROR).error, self.ERROR)

    def test_repr(self):
        self.assertEqual(repr(ParseError(self.ERROR)), "ParseError('scenario.ini:3: [link] k: the field is required.')")

    def test_str(self):
        self.assertEqual(str(ParseError(self.ERROR)), 'scenario.ini:3: [link] k: the field is required.')


class TestDivergenceError(SimpleTestCase):
    ERROR = 'A trial never succeeds.'

    def test_base(self):
        self.assertIsInstance(DivergenceError(self.ERROR), HqstError)

    def test_repr(self):
        self.assertEqual(repr(DivergenceError(self.ERROR)), "DivergenceError('A trial never succeeds.')")

    def test_str(self):
        self.assertEqual(str(DivergenceError(self.ERROR)), 'A trial never succeeds.')


class TestIntegrationError(SimpleTestCase):
    def test_attributes(self):
        error = IntegrationError('Required step size is less than spacing between numbers.', 12.5)
        self.assertEqual(error.error, 'Required step size is less than spacing between numbers.')
        self.assertEqual(error.time, 12.5)

    def test_repr(self):
        self.assertEqual(repr(IntegrationError('Step size underflow.', 1.5)),
                         "IntegrationError('Step size underflow.', 1.5)")

    def test_str(self):
        self.assertEqual(str(IntegrationError('Step size underflow.', 1.5)), 'Step size underflow. (at t = 1.5)')
