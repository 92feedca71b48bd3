from tau.coeff_engine import (
    PrimePower, Weight, coeff_at, coeff_prime_power, decimal_string, delta_series, prime_coefficient, write_table
)
from tau.forms import CoeffForm

from ._base import TauCommand


class Command(TauCommand):
    help = 'Print tau(n) or tau(p^n), or write a coefficient table.'
    form_class = CoeffForm

    def add_command_arguments(self, parser):
        parser.add_argument('n', nargs='?', type=int, help='Argument of tau')
        parser.add_argument('--prime-power', dest='prime_power', nargs=2, type=int, metavar=('P', 'N'),
                            help='Evaluate lambda(p^n) by the prime-power recurrence')
        parser.add_argument('--weight', type=int, help='Weight of the eigenform (default 12)')
        parser.add_argument('--tau-p', dest='tau_p', type=int, help='lambda(p), required for weights other than 12')
        parser.add_argument('--table', type=int, metavar='N', help='Write tau(1)..tau(N) as a table')
        parser.add_argument('--output', help='Table file (default: stdout)')

    def run(self, config, options):
        if config['table']:
            table = delta_series(config['table'])
            with self.output(config['output']) as stream:
                write_table(table, stream)
            if config['output']:
                self.stdout.write(self.style.SUCCESS(f"Wrote tau(1)..tau({table.limit}) to {config['output']}."))
            return
        if config['prime_power']:
            p, n = config['prime_power']
            pp = PrimePower(p, n)
            tau_p = config['tau_p'] if config['tau_p'] is not None else prime_coefficient(p)
            value = coeff_prime_power(tau_p, pp, Weight(config['weight']))
        else:
            value = coeff_at(config['n'])
        self.stdout.write(decimal_string(value))
