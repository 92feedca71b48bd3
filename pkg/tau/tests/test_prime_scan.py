import json
import os
import tempfile
from unittest import mock

from django.test import SimpleTestCase
from sympy import primerange

from tau import constants, prime_scan
from tau.coeff_engine import delta_series
from tau.exceptions import CheckpointMismatch, ConfigurationError, InvalidArgument
from tau.prime_scan import (
    Primality, ScanCheckpoint, is_probable_prime, iter_scan_batches, lehmer_check, nonvanishing_check, parity_check,
    run_scan, scan_prime_values, small_prime_exclusion, smallest_decade_exceeding, table1_audit, table1_reproduce,
    verify_case_I, verify_case_II,
)
from tau.reports import precision_context


class PrimalityTests(SimpleTestCase):

    def test_small_values(self):
        self.assertIs(is_probable_prime(2), Primality.PROVEN_PRIME)
        self.assertIs(is_probable_prime(0), Primality.COMPOSITE)
        self.assertIs(is_probable_prime(1), Primality.COMPOSITE)
        self.assertIs(is_probable_prime(561), Primality.COMPOSITE)

    def test_lehmer_value(self):
        self.assertIs(is_probable_prime(abs(constants.lehmer_value)), Primality.PROBABLE_PRIME)

    def test_strong_pseudoprime_to_small_bases(self):
        # strong pseudoprime to every prime base up to 31
        self.assertIs(is_probable_prime(3825123056546413051), Primality.COMPOSITE)

    def test_large_square(self):
        self.assertIs(is_probable_prime(abs(constants.lehmer_value) ** 2), Primality.COMPOSITE)

    def test_agrees_with_a_sieve(self):
        primes = set(primerange(2, 10 ** 6))
        for n in range(10 ** 6):
            self.assertEqual(is_probable_prime(n) is not Primality.COMPOSITE, n in primes, n)

    def test_rejects_negative(self):
        with self.assertRaises(InvalidArgument):
            is_probable_prime(-7)


class ScanTests(SimpleTestCase):

    def test_table_one_square_arguments(self):
        records = list(scan_prime_values(1000, [3]))
        self.assertEqual([record.p for record in records], [251, 677, 971, 983])
        self.assertEqual([record.digit_count for record in records], [26, 32, 33, 33])

    def test_table_one_fourth_powers(self):
        records = list(scan_prime_values(200, [5]))
        self.assertEqual([record.p for record in records], [47, 197])
        self.assertEqual([record.digit_count for record in records], [37, 50])

    def test_small_range_is_empty(self):
        self.assertEqual(list(scan_prime_values(10, [3])), [])

    def test_records_are_odd_and_sized(self):
        for record in scan_prime_values(1000, [3, 5]):
            self.assertEqual(record.value % 2, 1)
            self.assertEqual(record.digit_count, len(str(abs(record.value))))

    def test_output_does_not_depend_on_workers(self):
        serial = [record.as_dict(True) for record in scan_prime_values(400, [3, 5], workers=1)]
        parallel = [record.as_dict(True) for record in scan_prime_values(400, [3, 5], workers=3)]
        self.assertEqual(serial, parallel)

    def test_two_is_structurally_excluded(self):
        batch = next(iter_scan_batches(10, [3, 5, 7]))
        self.assertEqual(batch.p, 2)
        self.assertEqual(batch.records, ())
        self.assertTrue(batch.excluded)

    def test_exponents_must_be_odd_primes(self):
        with self.assertRaises(InvalidArgument):
            list(scan_prime_values(100, [4]))
        with self.assertRaises(InvalidArgument):
            list(scan_prime_values(100, [2]))

    def test_table_must_cover_range(self):
        with self.assertRaises(ConfigurationError):
            list(scan_prime_values(100, [3], table=delta_series(50)))


class CaseSplitTests(SimpleTestCase):

    def test_case_one_at_desk_scale(self):
        records = list(scan_prime_values(2000, [3, 5, 7]))
        report = verify_case_I(2000, [3, 5, 7], records=records)
        self.assertTrue(report.holds)
        self.assertEqual(report.lhs, abs(constants.lehmer_value))
        self.assertIn('Lehmer', report.note)
        self.assertTrue(all(report.holds for report in small_prime_exclusion(records)))

    def test_case_one_fails_above_lehmer_value(self):
        self.assertFalse(verify_case_I(1000, [3], q_bound=10 ** 26).holds)

    def test_case_one_empty_range(self):
        self.assertTrue(verify_case_I(10, [3]).holds)

    def test_case_two(self):
        self.assertTrue(verify_case_II(8 * 10 ** 25, 600).holds)

    def test_case_two_boundary(self):
        ctx = precision_context(128)
        value = verify_case_II(1, 600).lhs
        self.assertFalse(verify_case_II(value, 600).holds)
        self.assertAlmostEqual(float(value) / 2.5332e31, 1, delta=1e-3)
        self.assertTrue(verify_case_II(ctx.mpf('2.5231e31'), 600).holds)

    def test_smallest_decade(self):
        self.assertEqual(smallest_decade_exceeding(8 * 10 ** 25), 170)
        self.assertTrue(verify_case_II(8 * 10 ** 25, 170).holds)
        self.assertFalse(verify_case_II(8 * 10 ** 25, 169).holds)


class StructureTests(SimpleTestCase):

    def test_parity(self):
        self.assertTrue(parity_check(1).holds)
        self.assertTrue(parity_check(100).holds)
        self.assertTrue(parity_check(10 ** 4).holds)

    def test_odd_values_below_hundred(self):
        table = delta_series(100)
        self.assertEqual([n for n in range(1, 101) if table[n] % 2], [1, 9, 25, 49, 81])

    def test_nonvanishing(self):
        self.assertTrue(nonvanishing_check(10 ** 4).holds)


class ReproductionTests(SimpleTestCase):

    def test_table_one(self):
        records = table1_reproduce()
        self.assertEqual([record.digit_count for record in records], [26, 32, 33, 33, 37, 50])
        self.assertTrue(all(record.primality is Primality.PROBABLE_PRIME for record in records))
        self.assertEqual(records[0].value, constants.lehmer_value)
        self.assertEqual(records[0].value_sign, -1)

    def test_table_one_audit(self):
        reports = table1_audit()
        self.assertEqual(len(reports), 6)
        self.assertTrue(all(report.holds for report in reports))

    def test_lehmer(self):
        self.assertTrue(lehmer_check().holds)


class CheckpointTests(SimpleTestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def path(self, name):
        return os.path.join(self.directory.name, name)

    def read(self, name):
        with open(self.path(name)) as stream:
            return stream.read()

    def test_resume_reproduces_a_fresh_run(self):
        run_scan(self.path('fresh.jsonl'), self.path('fresh.json'), 1000, [3, 5])
        scan_prime = prime_scan._scan_prime

        def interrupted(job):
            if job[0] > 700:
                raise KeyboardInterrupt
            return scan_prime(job)

        with mock.patch('tau.prime_scan._scan_prime', interrupted):
            with self.assertRaises(KeyboardInterrupt):
                run_scan(self.path('resumed.jsonl'), self.path('resumed.json'), 1000, [3, 5])
        checkpoint = ScanCheckpoint.load(self.path('resumed.json'))
        self.assertLess(checkpoint.last_completed[0], 700)
        # a record written after the last checkpoint
        with open(self.path('resumed.jsonl'), 'a') as stream:
            stream.write('{"p": 701}\n')
        run_scan(self.path('resumed.jsonl'), self.path('resumed.json'), 1000, [3, 5], resume=True)
        self.assertEqual(self.read('resumed.jsonl'), self.read('fresh.jsonl'))

    def test_resume_refuses_changed_configuration(self):
        run_scan(self.path('out.jsonl'), self.path('out.json'), 300, [3])
        with self.assertRaises(CheckpointMismatch):
            run_scan(self.path('out.jsonl'), self.path('out.json'), 400, [3], resume=True)

    def test_checkpoint_tracks_records(self):
        emitted = run_scan(self.path('out.jsonl'), self.path('out.json'), 1000, [3])
        self.assertEqual(emitted, 4)
        with open(self.path('out.json')) as stream:
            data = json.load(stream)
        self.assertEqual(data['records_emitted'], 4)
        self.assertEqual(data['last_completed'], [997, 2])
        lines = self.read('out.jsonl').splitlines()
        self.assertIn('config', json.loads(lines[0]))
        self.assertEqual(len(lines), 5)

    def test_full_values(self):
        run_scan(self.path('out.jsonl'), self.path('out.json'), 300, [3], full_values=True)
        record = json.loads(self.read('out.jsonl').splitlines()[1])
        self.assertEqual(int(record['value']), constants.lehmer_value)

    def test_exclusion_is_recorded(self):
        run_scan(self.path('out.jsonl'), self.path('out.json'), 300, [3])
        header = json.loads(self.read('out.jsonl').splitlines()[0])
        self.assertEqual(header['excluded'], {'2': constants.structural_exclusions[2]})
        self.assertEqual(ScanCheckpoint.load(self.path('out.json')).excluded, (2,))

    def test_exclusion_in_csv_header(self):
        run_scan(self.path('out.csv'), self.path('out.json'), 300, [3], fmt='csv')
        lines = self.read('out.csv').splitlines()
        self.assertEqual(lines[1], '# excluded p=2: every tau(2^2n) is even')
        self.assertTrue(lines[2].startswith('p,two_n,'))
        self.assertTrue(lines[3].startswith('251,2,'))

    def test_corrupt_checkpoint(self):
        run_scan(self.path('out.jsonl'), self.path('out.json'), 300, [3])
        for junk in ('{"config_digest": ', '[1, 2]', ''):
            with open(self.path('out.json'), 'w') as stream:
                stream.write(junk)
            with self.assertRaises(CheckpointMismatch):
                run_scan(self.path('out.jsonl'), self.path('out.json'), 300, [3], resume=True)
