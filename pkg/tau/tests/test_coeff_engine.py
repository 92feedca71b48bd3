import io
import math

from django.test import SimpleTestCase

from tau import constants
from tau.coeff_engine import (
    CoeffTable, PrimePower, Weight, coeff_at, coeff_prime_power, coeff_prime_power_poly, decimal_digits,
    decimal_string, delta_series, delta_series_direct, factorize, mordell_check, prime_coefficient, read_table,
    write_table,
)
from tau.exceptions import InvalidArgument, TableFormatError


class DeltaSeriesTests(SimpleTestCase):

    def test_first_coefficients(self):
        self.assertEqual(delta_series(4).values(), [1, -24, 252, -1472])

    def test_known_values(self):
        table = delta_series(12)
        self.assertEqual(table[5], 4830)
        self.assertEqual(table[6], -6048)
        self.assertEqual(table[7], -16744)
        self.assertEqual(table[12], -370944)

    def test_matches_direct_product(self):
        self.assertEqual(delta_series(200).values(), delta_series_direct(200).values())

    def test_limit_one(self):
        self.assertEqual(delta_series(1).values(), [1])

    def test_rejects_empty_series(self):
        with self.assertRaises(InvalidArgument):
            delta_series(0)

    def test_index_outside_table(self):
        table = delta_series(10)
        with self.assertRaises(InvalidArgument):
            table[0]
        with self.assertRaises(InvalidArgument):
            table[11]


class PrimePowerTests(SimpleTestCase):

    def test_lehmer_value(self):
        p, two_n = constants.lehmer_argument
        value = coeff_prime_power(prime_coefficient(p), PrimePower(p, two_n))
        self.assertEqual(value, -80561663527802406257321747)

    def test_recurrence_polynomial_and_series_agree(self):
        limit = 90_000
        table = delta_series(limit)
        for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]:
            for n in range(1, 11):
                pp = PrimePower(p, n)
                value = coeff_prime_power(table[p], pp)
                self.assertEqual(value, coeff_prime_power_poly(table[p], pp), (p, n))
                if pp.value <= limit:
                    self.assertEqual(value, table[pp.value], (p, n))

    def test_other_weight(self):
        # q + 216 q^2 - 3348 q^3 + 13888 q^4 + ..., the weight 16 eigenform
        self.assertEqual(coeff_prime_power(216, PrimePower(2, 2), Weight(16)), 13888)

    def test_rejects_non_prime(self):
        with self.assertRaises(InvalidArgument):
            PrimePower(4, 1)
        with self.assertRaises(InvalidArgument):
            PrimePower(5, 0)

    def test_rejects_odd_weight(self):
        with self.assertRaises(InvalidArgument):
            Weight(13)


class MultiplicativityTests(SimpleTestCase):

    def test_coeff_at_matches_series(self):
        table = delta_series(2000)
        for m in range(1, 2001):
            self.assertEqual(coeff_at(m), table[m], m)

    def test_multiplicative_on_coprime_arguments(self):
        limit = 10_000
        table = delta_series(limit)
        values = [None] + [coeff_at(m, table) for m in range(1, limit + 1)]
        for a in range(1, 101):
            for b in range(a, limit // a + 1):
                if math.gcd(a, b) == 1:
                    self.assertEqual(values[a * b], values[a] * values[b], (a, b))

    def test_coeff_at_twelve(self):
        self.assertEqual(coeff_at(12), -370944)

    def test_mordell_relation(self):
        table = delta_series(90_000)
        for m in range(1, 301):
            for n in range(1, 301):
                report = mordell_check(m, n, table)
                self.assertTrue(report.holds, (m, n))

    def test_mordell_needs_covering_table(self):
        with self.assertRaises(InvalidArgument):
            mordell_check(20, 20, delta_series(100))

    def test_factorize_with_large_primes(self):
        self.assertEqual(factorize(2 ** 10 * 3 ** 5 * 1000003), {2: 10, 3: 5, 1000003: 1})
        self.assertEqual(factorize(1000003 * 1000033), {1000003: 1, 1000033: 1})
        self.assertEqual(factorize(1), {})


class TableFormatTests(SimpleTestCase):

    def test_written_table_reads_back(self):
        stream = io.StringIO()
        write_table(delta_series(50), stream)
        stream.seek(0)
        table = read_table(stream)
        self.assertEqual(table.limit, 50)
        self.assertEqual(table.values(), delta_series(50).values())

    def test_bad_header(self):
        with self.assertRaises(TableFormatError):
            read_table(io.StringIO('1\t1\n'))

    def test_missing_entries(self):
        with self.assertRaises(TableFormatError):
            read_table(io.StringIO('# tau table weight=12 limit=3\n1\t1\n2\t-24\n'))

    def test_table_needs_tau_one(self):
        with self.assertRaises(InvalidArgument):
            CoeffTable(1, (0, 2))


class DecimalTests(SimpleTestCase):

    def test_past_the_int_string_guard(self):
        value = -(10 ** 5000)
        self.assertEqual(decimal_digits(value), 5001)
        self.assertEqual(len(decimal_string(value)), 5002)
