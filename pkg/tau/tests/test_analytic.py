import math
import random
import threading

from django.conf import settings
from django.test import SimpleTestCase, tag
from sympy import primerange

from tau import constants
from tau.analytic import (
    MatveevParams, absolute_log_height, binet_eval, bound_audit, deligne_holds_exact, even_power_cosine,
    height_quadratic, in_explicit_regime, inequality_chain_check, inequality_chain_grid, lambda_gap_lower,
    lambda_gap_matveev, liouville_example, log_power_bound, matveev_base_factor, matveev_bound, murty_saradha_bound,
    sato_tate_angle,
)
from tau.coeff_engine import PrimePower, coeff_prime_power, decimal_digits, delta_series, prime_coefficient
from tau.exceptions import DeligneViolation, InvalidArgument
from tau.reports import failures, precision_context


class SatoTateAngleTests(SimpleTestCase):

    def test_angle_at_two(self):
        angle = sato_tate_angle(2, -24)
        self.assertAlmostEqual(float(angle.theta), 1.8392, places=3)

    def test_deligne_violation(self):
        with self.assertRaises(DeligneViolation):
            sato_tate_angle(2, 100)

    def test_angle_reproduces_tau_p(self):
        table = delta_series(10_000)
        for p in primerange(2, 10_001):
            p = int(p)
            for bits in (64, 128):
                angle = sato_tate_angle(p, table[p], precision_bits=bits)
                ctx = precision_context(bits + 64)
                self.assertTrue(0 < angle.theta < ctx.pi, p)
                value = 2 * ctx.sqrt(ctx.mpf(p) ** 11) * ctx.cos(angle.theta)
                error = abs(value - table[p]) / abs(table[p])
                self.assertLessEqual(error, ctx.ldexp(1, -(bits - 8)), (p, bits))

    def test_angle_near_a_right_angle(self):
        # |cos theta| is about 5e-4 at p = 2927
        table = delta_series(3000)
        angle = sato_tate_angle(2927, table[2927])
        ctx = precision_context(192)
        value = 2 * ctx.sqrt(ctx.mpf(2927) ** 11) * ctx.cos(angle.theta)
        self.assertLessEqual(abs(value / table[2927] - 1), ctx.ldexp(1, -120))

    def test_precision_floor(self):
        with self.assertRaises(InvalidArgument):
            sato_tate_angle(2, -24, precision_bits=32)

    def test_binet_matches_exact_values(self):
        table = delta_series(100)
        for p in primerange(2, 101):
            angle = sato_tate_angle(int(p), table[p])
            for n in range(1, 21):
                exact = coeff_prime_power(table[p], PrimePower(int(p), n))
                value = binet_eval(angle, n)
                self.assertLessEqual(abs((value - exact) / exact), 1e-20, (p, n))

    def test_deligne_holds_for_small_prime_powers(self):
        table = delta_series(1000)
        for p in primerange(2, 1001):
            for n in range(1, 7):
                value = coeff_prime_power(table[p], PrimePower(int(p), n))
                self.assertTrue(deligne_holds_exact(value, int(p), n), (p, n))
        for p in primerange(2, 51):
            for n in range(7, 11):
                value = coeff_prime_power(table[p], PrimePower(int(p), n))
                self.assertTrue(deligne_holds_exact(value, int(p), n), (p, n))

    def test_cosine_form(self):
        report = even_power_cosine(2, 2, -24)
        self.assertTrue(report.report_only)
        self.assertAlmostEqual(float(report.lhs), 1472 / 4096, places=10)


class ExplicitBoundTests(SimpleTestCase):

    def test_case_split_constant(self):
        ctx = precision_context(128)
        value = log_power_bound(600 * ctx.log(10))
        self.assertLess(abs(value / ctx.mpf('2.5332e31') - 1), 1e-3)
        # the printed 2.5231e31 is 0.4% low
        self.assertLess(abs(value / ctx.mpf(constants.printed_case_split_value) - 1), 5e-3)

    def test_regime(self):
        self.assertTrue(in_explicit_regime(2, 1994))
        self.assertFalse(in_explicit_regime(2, 1992))

    def test_chain_closes_in_regime(self):
        report = inequality_chain_check(2, 1994)
        self.assertTrue(report.holds)
        self.assertFalse(report.report_only)

    def test_chain_outside_regime_is_reported_only(self):
        self.assertTrue(inequality_chain_check(3, 2).report_only)

    def test_chain_grid(self):
        reports = inequality_chain_grid()
        # 25 primes up to 97
        self.assertEqual(len(reports), 25 * 3)
        self.assertEqual(failures(reports), [])
        for report in reports:
            self.assertFalse(report.report_only, report.label)
            self.assertLess(report.lhs, 6, report.label)
            self.assertTrue(report.note.startswith('ratio < 6'))

    def test_murty_saradha_needs_two(self):
        with self.assertRaises(InvalidArgument):
            murty_saradha_bound(1, 10)

    def test_bound_audit_at_lehmer_argument(self):
        reports = bound_audit(PrimePower(251, 2))
        self.assertEqual(failures(reports), [])
        deligne = next(report for report in reports if report.label.endswith('deligne'))
        self.assertTrue(deligne.holds)

    def test_bound_audit_fourth_power(self):
        pp = PrimePower(47, 4)
        reports = bound_audit(pp)
        self.assertEqual(failures(reports), [])
        self.assertEqual(decimal_digits(coeff_prime_power(prime_coefficient(47), pp)), 37)
        by_label = {report.label.split(' ', 1)[1]: report for report in reports}
        for link in ('deligne', 'liouville', 'murty-saradha [report-only]', 'atkin-serre [report-only]'):
            self.assertTrue(by_label[link].holds, link)

    def test_bound_audit_deligne_slack(self):
        reports = bound_audit(PrimePower(2, 1))
        deligne = next(report for report in reports if report.label == 'tau(2^1) deligne')
        self.assertTrue(deligne.holds)
        # 2 * 2^(11/2) = 90.51 against |tau(2)| = 24
        self.assertAlmostEqual(deligne.slack_log10, -math.log10(2 * 2 ** 5.5 / 24), places=9)

    def test_bound_audit_uses_log_power_bound(self):
        pp = PrimePower(251, 2)
        murty_saradha = bound_audit(pp, c=10)[0]
        self.assertEqual(murty_saradha.rhs, murty_saradha_bound(pp.value, 10))

    def test_first_worked_example(self):
        reports = liouville_example(157)
        self.assertEqual(failures(reports), [])
        self.assertEqual(reports[0].lhs, 26643)

    @tag('slow')
    def test_second_worked_example(self):
        if not settings.TAU_SLOW_TESTS:
            self.skipTest('set TAU_SLOW_TESTS=1 for the 250k-digit example')
        reports = liouville_example(41)
        self.assertEqual(failures(reports), [])
        self.assertEqual(reports[0].lhs, 250924)

    def test_unknown_example(self):
        with self.assertRaises(InvalidArgument):
            liouville_example(3)


class LinearFormTests(SimpleTestCase):

    def test_base_factor(self):
        self.assertAlmostEqual(float(matveev_base_factor(2, 2)) / 5.21e9, 1, delta=0.01)

    def test_quadratic_field_with_unit_heights(self):
        value = matveev_bound(MatveevParams(2, 2, 2, (1, 1)))
        self.assertAlmostEqual(float(value) / 8.83e9, 1, delta=0.01)

    def test_monotone_in_every_parameter(self):
        rng = random.Random(1016)
        for _ in range(200):
            d = rng.randint(1, 5)
            k = rng.randint(1, 4)
            B = rng.randint(1, 1000)
            heights = tuple(round(rng.uniform(0.16, 10), 3) for _ in range(d))
            base = matveev_bound(MatveevParams(d, k, B, heights))
            bumped = list(heights)
            bumped[rng.randrange(d)] += rng.uniform(0, 5)
            self.assertGreaterEqual(matveev_bound(MatveevParams(d, k, B, tuple(bumped))), base)
            self.assertGreaterEqual(matveev_bound(MatveevParams(d, k + 1, B, heights)), base)
            self.assertGreaterEqual(matveev_bound(MatveevParams(d, k, B + rng.randint(1, 100), heights)), base)
            self.assertGreaterEqual(matveev_bound(MatveevParams(d + 1, k, B, heights + (heights[0],))), base)

    def test_height_floor(self):
        with self.assertRaises(InvalidArgument):
            MatveevParams(2, 2, 2, (1, '0.1'))

    def test_heights(self):
        ctx = precision_context(128)
        self.assertAlmostEqual(float(height_quadratic(2, -24)), float(ctx.mpf(11) / 2 * ctx.log(2)), places=12)
        self.assertAlmostEqual(float(absolute_log_height([2, -1])), float(ctx.log(2)), places=12)
        self.assertAlmostEqual(float(absolute_log_height([1, -3, 2])), float(ctx.log(2) / 2), places=12)

    def test_claimed_gap_with_zero_constant(self):
        self.assertEqual(lambda_gap_lower(2, 5, 0), 0)
        self.assertLess(lambda_gap_lower(2, 5), 0)

    def test_matveev_gap_uses_root_heights(self):
        height = height_quadratic(3, 252)
        expected = -matveev_bound(MatveevParams(2, 2, 6, (height, height)))
        self.assertEqual(lambda_gap_matveev(3, 5, 252), expected)
        self.assertEqual(lambda_gap_matveev(3, 5), expected)

    def test_claimed_gap_needs_n_two(self):
        with self.assertRaises(InvalidArgument):
            lambda_gap_lower(2, 1)


class PrecisionContextTests(SimpleTestCase):

    def test_root_finding_leaves_shared_precision_alone(self):
        ctx = precision_context(128)
        self.assertAlmostEqual(float(absolute_log_height([1, -3, 2])), math.log(2) / 2, places=12)
        self.assertEqual(ctx.prec, 128)

    def test_threads_get_their_own_context(self):
        contexts = []
        thread = threading.Thread(target=lambda: contexts.append(precision_context(128)))
        thread.start()
        thread.join()
        self.assertIsNot(contexts[0], precision_context(128))
        self.assertEqual(contexts[0].prec, 128)
