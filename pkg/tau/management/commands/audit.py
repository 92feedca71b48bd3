from django.conf import settings
from django.core.management.base import CommandError

from tau import constants
from tau.analytic import (
    bound_audit, even_power_cosine, inequality_chain_check, inequality_chain_grid, liouville_example,
    sato_tate_angle,
)
from tau.coeff_engine import PrimePower, prime_coefficient
from tau.diophantine import lambda_gap_report, unit_root_gap_audit, unit_root_gap_grid
from tau.forms import AuditForm
from tau.prime_scan import (
    lehmer_check, nonvanishing_check, parity_check, scan_prime_values, small_prime_exclusion, table1_audit,
    verify_case_I, verify_case_II,
)

from ._base import USAGE_ERROR, TauCommand

BUNDLE_PARITY_LIMIT = 10_000
SELECTORS = ('table1', 'lehmer', 'case1', 'case2', 'example', 'prime_power', 'chain', 'parity', 'nonvanishing',
             'unit_gap', 'lambda_gap', 'cosine')


class Command(TauCommand):
    help = (
        'Audit the bounds on tau. Without a selector runs the default bundle: Table 1, the Lehmer value, '
        'Case II, worked example 157, the inequality chain and the parity law.'
    )
    form_class = AuditForm

    def add_command_arguments(self, parser):
        parser.add_argument('--table1', action='store_true', help='Reproduce the six smallest prime values')
        parser.add_argument('--lehmer', action='store_true', help='Check tau(251^2) and its primality')
        parser.add_argument('--case1', action='store_true', help='Desk-scale scan: every prime value exceeds --qbound')
        parser.add_argument('--case2', action='store_true', help='(ln 10^decades)^10 against --qbound')
        parser.add_argument('--qbound', dest='q_bound', help='Prime bound q, e.g. 8.0e25')
        parser.add_argument('--decades', dest='case_split_decades', type=int, help='Case split at 10^decades')
        parser.add_argument('--pmax', dest='p_max', type=int, help='Scan range for --case1')
        parser.add_argument('--exps', dest='exponent_primes', help='Exponent primes for --case1')
        parser.add_argument('--workers', type=int)
        parser.add_argument('--example', help='Worked Liouville example: 157 or 41')
        parser.add_argument('--slow', action='store_true', help='Add the 250k-digit example to the bundle')
        parser.add_argument('--prime-power', dest='prime_power', nargs=2, type=int, metavar=('P', 'N'),
                            help='Every bound on |tau(p^n)|')
        parser.add_argument('--chain', nargs='*', type=int, metavar='P 2N',
                            help='Inequality chain at p, 2n; without values the grid p <= 97')
        parser.add_argument('--parity', type=int, metavar='N', help='Parity law for n <= N')
        parser.add_argument('--nonvanishing', type=int, metavar='N', help='tau(n) != 0 for n <= N')
        parser.add_argument('--unit-gap', dest='unit_gap', nargs=2, type=int, metavar=('PMAX', 'NMAX'),
                            help='|beta - 1| audit over a grid')
        parser.add_argument('--lambda-gap', dest='lambda_gap', nargs=2, type=int, metavar=('P', 'N'),
                            help='ln|Lambda_p(n)| against the claimed and the Matveev bounds')
        parser.add_argument('--cosine', nargs=2, type=int, metavar=('P', '2N'),
                            help='Cosine a 2p^(11n) cos(theta) form of tau(p^2n) would need')
        parser.add_argument('--epsilon', help='Epsilon of the bounds (default 1)')
        parser.add_argument('--c', dest='murty_saradha_c', help='Exponent of the log-power lower bound')
        parser.add_argument('--c0', dest='matveev_c0', help='Constant of the claimed linear-form bound')
        parser.add_argument('--format', choices=['json', 'csv', 'text'])
        parser.add_argument('--output', help='Report file (default: stdout)')

    def run(self, config, options):
        selected = [name for name in SELECTORS if options.get(name) not in (None, False)]
        reports = []
        for name in selected or self.bundle(options):
            reports.extend(getattr(self, f'audit_{name}')(config, options))
        self.emit(reports, config)

    def bundle(self, options):
        names = ['table1', 'lehmer', 'case2', 'example', 'chain', 'parity']
        if options.get('slow') or settings.TAU_SLOW_TESTS:
            names.append('slow_example')
        return names

    def audit_table1(self, config, options):
        return table1_audit()

    def audit_lehmer(self, config, options):
        return [lehmer_check()]

    def audit_case1(self, config, options):
        records = list(scan_prime_values(config['p_max'], config['exponent_primes'], workers=config['workers']))
        return [verify_case_I(config['p_max'], config['exponent_primes'], config['q_bound'], records=records),
                *small_prime_exclusion(records)]

    def audit_case2(self, config, options):
        return [verify_case_II(config['q_bound'], config['case_split_decades'], config['log_power_exponent'])]

    def audit_example(self, config, options):
        return liouville_example(config['example'] or 157, config['epsilon'])

    def audit_slow_example(self, config, options):
        (p,) = constants.slow_examples
        return liouville_example(p, config['epsilon'])

    def audit_prime_power(self, config, options):
        p, n = options['prime_power']
        return bound_audit(PrimePower(p, n), config['epsilon'], config['murty_saradha_c'])

    def audit_chain(self, config, options):
        values = options.get('chain')
        if values and len(values) % 2:
            raise CommandError('--chain takes pairs P 2N', returncode=USAGE_ERROR)
        if values:
            return [inequality_chain_check(p, two_n, config['epsilon']) for p, two_n in zip(values[::2], values[1::2])]
        return inequality_chain_grid(epsilon=config['epsilon'])

    def audit_parity(self, config, options):
        return [parity_check(options.get('parity') or BUNDLE_PARITY_LIMIT)]

    def audit_nonvanishing(self, config, options):
        return [nonvanishing_check(options['nonvanishing'])]

    def audit_unit_gap(self, config, options):
        return unit_root_gap_grid(*options['unit_gap'])

    def audit_lambda_gap(self, config, options):
        p, n = options['lambda_gap']
        angle = sato_tate_angle(p, prime_coefficient(p))
        return [unit_root_gap_audit(angle, n), *lambda_gap_report(angle, n, config['matveev_c0'])]

    def audit_cosine(self, config, options):
        p, two_n = options['cosine']
        return [even_power_cosine(p, two_n, prime_coefficient(p))]
