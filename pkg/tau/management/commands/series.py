from tau.coeff_engine import decimal_string, delta_series, delta_series_direct, write_table
from tau.exceptions import ReproductionError
from tau.forms import SeriesForm

from ._base import TauCommand


class Command(TauCommand):
    help = 'Expand the discriminant form to N coefficients.'
    form_class = SeriesForm

    def add_command_arguments(self, parser):
        parser.add_argument('limit', type=int, help='Number of coefficients')
        parser.add_argument('--output', help='Write a coefficient table file instead of printing')
        parser.add_argument('--check', action='store_true', default=None,
                            help='Cross-check against the literal 24-fold product')

    def run(self, config, options):
        table = delta_series(config['limit'])
        if config['check']:
            if delta_series_direct(config['limit']).values() != table.values():
                raise ReproductionError('series disagrees with the direct product')
            self.stderr.write(self.style.SUCCESS('Series agrees with the direct product.'))
        if config['output']:
            with self.output(config['output']) as stream:
                write_table(table, stream)
            self.stdout.write(self.style.SUCCESS(f"Wrote tau(1)..tau({table.limit}) to {config['output']}."))
            return
        self.stdout.write(' '.join(decimal_string(value) for value in table.values()))
