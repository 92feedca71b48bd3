import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from contextlib import contextmanager

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from tau.exceptions import CheckpointMismatch, TauError
from tau.reports import failures, write_reports

logger = logging.getLogger(__name__)

USAGE_ERROR = 2
CHECKPOINT_ERROR = 3
ASSERTION_ERROR = 4


class TauCommand(BaseCommand):
    """
    Shared plumbing: the ``--config`` file, RunConfig validation through
    ``form_class`` and the exit-code contract.
    """
    requires_system_checks = []
    form_class = None

    @property
    def command_name(self):
        return self.__module__.rsplit('.', 1)[-1]

    def add_arguments(self, parser):
        parser.add_argument('--config', help='TOML file with a [defaults] table and one table per command')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def run_config(self, options):
        """Defaults, then the config file, then flags; validated by ``form_class``."""
        fields = self.form_class.base_fields
        data = {name: value for name, value in settings.TAU_DEFAULTS.items() if name in fields}
        data.update(settings.TAU_COMMAND_DEFAULTS.get(self.command_name, {}))
        if options.get('config'):
            data.update(self._read_config_file(options['config']))
        data.update({name: options[name] for name in fields if options.get(name) is not None})
        form = self.form_class(data={name: value for name, value in data.items() if name in fields})
        if not form.is_valid():
            raise CommandError(form.errors.as_text(), returncode=USAGE_ERROR)
        return form.cleaned_data

    def _read_config_file(self, path):
        try:
            with open(path, 'rb') as stream:
                document = tomllib.load(stream)
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise CommandError(f'cannot read config {path}: {exc}', returncode=USAGE_ERROR)
        values = dict(document.get('defaults', {}))
        values.update(document.get(self.command_name, {}))
        logger.debug('config %s supplies %s', path, sorted(values))
        return values

    def handle(self, *args, **options):
        config = self.run_config(options)
        try:
            self.run(config, options)
        except CheckpointMismatch as exc:
            raise CommandError(str(exc), returncode=CHECKPOINT_ERROR)
        except (TauError, OSError) as exc:
            raise CommandError(str(exc))

    def run(self, config, options):
        raise NotImplementedError

    @contextmanager
    def output(self, path):
        if not path:
            yield self.stdout
            return
        with open(path, 'w') as stream:
            yield stream

    def echo(self, config):
        """The effective config as it goes into report headers."""
        return {name: value for name, value in config.items() if value not in (None, '', [])}

    def emit(self, reports, config):
        with self.output(config.get('output')) as stream:
            write_reports(stream, reports, config['format'], self.echo(config), config['full_value_digits'])
        failed = failures(reports)
        if failed:
            raise CommandError(
                'asserted inequalities failed: ' + '; '.join(report.label for report in failed),
                returncode=ASSERTION_ERROR,
            )
        self.stderr.write(self.style.SUCCESS(f'{len(reports)} reports, every asserted inequality holds.'))
