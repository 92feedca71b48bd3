from tau.forms import AuditForm
from tau.prime_scan import scan_prime_values, smallest_decade_exceeding, verify_case_I, verify_case_II

from ._base import TauCommand


class Command(TauCommand):
    help = 'Case I at desk scale and the Case II contradiction, with a combined verdict.'
    form_class = AuditForm

    def add_command_arguments(self, parser):
        parser.add_argument('--pmax', dest='p_max', type=int, help='Largest prime p of the scan (default 2000)')
        parser.add_argument('--exps', dest='exponent_primes', help='Exponent primes 2n+1 (default 3,5,7)')
        parser.add_argument('--qbound', dest='q_bound', help='Prime bound q (default 8.0e25)')
        parser.add_argument('--decades', dest='case_split_decades', type=int, help='Case split at 10^decades')
        parser.add_argument('--workers', type=int)
        parser.add_argument('--format', choices=['json', 'csv', 'text'])
        parser.add_argument('--output', help='Report file (default: stdout)')

    def run(self, config, options):
        records = list(scan_prime_values(config['p_max'], config['exponent_primes'], workers=config['workers']))
        case_1 = verify_case_I(config['p_max'], config['exponent_primes'], config['q_bound'], records=records)
        case_2 = verify_case_II(config['q_bound'], config['case_split_decades'], config['log_power_exponent'])
        decade = smallest_decade_exceeding(config['q_bound'], config['log_power_exponent'])
        self.emit([case_1, case_2], config)
        self.stderr.write(self.style.SUCCESS(
            f"Case I holds for p <= {config['p_max']}, exponents {config['exponent_primes']}; Case II holds, "
            f"the log-power bound exceeds q = {config['q_bound']} from X = 10^{decade} on."
        ))
