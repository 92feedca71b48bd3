import json

from tau.diophantine import basic_gap_inequality, continued_fraction_expand, expansion_audit, liouville_gap_audit
from tau.forms import ContinuedFractionForm

from ._base import TauCommand


class Command(TauCommand):
    help = (
        'Continued fraction of a built-in number (golden, sqrt2, sqrt3, sqrt5, near1:J) or a rational a/b, '
        'optionally with the convergent audits.'
    )
    form_class = ContinuedFractionForm

    def add_command_arguments(self, parser):
        parser.add_argument('x', help='Sample name or rational')
        parser.add_argument('--count', type=int, help='Number of partial quotients (default 20)')
        parser.add_argument('--precision', dest='precision_bits', type=int, help='Working precision in bits')
        parser.add_argument('--audit', action='store_true', help='Determinant and convergent-error checks')
        parser.add_argument('--liouville', action='store_true', help='Liouville-type bounds on every convergent')
        parser.add_argument('--gap', type=int, metavar='M', help='|x q_m - p_m| >= 1/(2 q_(m+1)) for m <= M')
        parser.add_argument('--format', choices=['json', 'csv', 'text'])
        parser.add_argument('--output', help='Output file (default: stdout)')

    def echo(self, config):
        echoed = super().echo(config)
        echoed['x'] = config['x'].name
        return echoed

    def run(self, config, options):
        x, count, bits = config['x'], config['count'], config['precision_bits']
        if not (options['audit'] or options['liouville'] or options['gap'] is not None):
            self.write_expansion(continued_fraction_expand(x, count, bits), config)
            return
        reports = []
        if options['audit']:
            reports.extend(expansion_audit(x, count, bits)[1])
        if options['liouville']:
            reports.extend(liouville_gap_audit(x, convergent_count=count, precision_bits=bits))
        if options['gap'] is not None:
            reports.extend(basic_gap_inequality(x, m, bits) for m in range(options['gap'] + 1))
        self.emit(reports, config)

    def write_expansion(self, cf, config):
        with self.output(config['output']) as stream:
            if config['format'] == 'json':
                stream.write(json.dumps({'config': self.echo(config)}, sort_keys=True, default=str) + '\n')
                stream.write(json.dumps(cf.as_dict()) + '\n')
            elif config['format'] == 'csv':
                stream.write('m,a_m,p_m,q_m\n')
                for m, (a, (p, q)) in enumerate(zip(cf.quotients, cf.convergents)):
                    stream.write(f'{m},{a},{p},{q}\n')
            else:
                head, *tail = cf.quotients
                stream.write(f"{cf.description} = [{head}; {', '.join(map(str, tail))}]\n")
                for m, (p, q) in enumerate(cf.convergents):
                    stream.write(f'  p_{m}/q_{m} = {p}/{q}\n')
        if cf.truncated:
            self.stderr.write(self.style.WARNING(
                f'Precision ran out after {len(cf)} quotients at {cf.precision_bits} bits.'
            ))
