import os

from django.conf import settings
from django.core.management.base import CommandError

from tau.forms import ScanForm
from tau.prime_scan import format_record, header_lines, run_scan, scan_prime_values, structural_exclusions

from ._base import USAGE_ERROR, TauCommand


class Command(TauCommand):
    help = 'Search tau(p^2n) for prime values, p <= pmax and 2n+1 in the exponent primes.'
    form_class = ScanForm

    def add_command_arguments(self, parser):
        parser.add_argument('--pmax', dest='p_max', type=int, help='Largest prime p (default 2000)')
        parser.add_argument('--exps', dest='exponent_primes', help='Comma-separated odd primes 2n+1 (default 3,5,7)')
        parser.add_argument('--workers', type=int, help='Worker processes; output is identical for any count')
        parser.add_argument('--format', choices=['json', 'csv', 'text'])
        parser.add_argument('--output', help='Record file; needed for checkpoints')
        parser.add_argument('--checkpoint', help='Checkpoint file (default: DATA_DIR/<output name>.checkpoint.json)')
        parser.add_argument('--resume', action='store_true', default=None, help='Continue from the checkpoint')
        parser.add_argument('--full-values', dest='full_values', action='store_true', default=None,
                            help='Include the exact decimal value in every record')

    def run(self, config, options):
        if not config['output']:
            if config['resume']:
                raise CommandError('--resume needs --output', returncode=USAGE_ERROR)
            self._stream(config)
            return
        checkpoint = config['checkpoint'] or os.path.join(
            settings.DATA_DIR, os.path.basename(config['output']) + '.checkpoint.json'
        )
        emitted = run_scan(
            config['output'], checkpoint, config['p_max'], config['exponent_primes'],
            workers=config['workers'], fmt=config['format'], full_values=config['full_values'],
            resume=config['resume'], config=self._shaping(config),
        )
        self.stdout.write(self.style.SUCCESS(f"{emitted} prime values up to p={config['p_max']} in {config['output']}."))

    def _shaping(self, config):
        return {name: config[name] for name in ('p_max', 'exponent_primes', 'format', 'full_values')}

    def _stream(self, config):
        fmt = config['format']
        for line in header_lines(fmt, self._shaping(config), structural_exclusions(config['p_max'])):
            self.stdout.write(line)
        for record in scan_prime_values(config['p_max'], config['exponent_primes'], workers=config['workers']):
            self.stdout.write(format_record(record, fmt, config['full_values']))
