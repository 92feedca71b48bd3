"""
BoundReport, the record every audit produces, and the JSON-lines, CSV and
text emitters the management commands write reports with.
"""
import csv
import json
import threading
from dataclasses import dataclass

import gmpy2
import mpmath

from tau import constants

RELATIONS = ('<', '<=', '==', '>=', '>')

CSV_FIELDS = [
    'label', 'relation', 'lhs', 'rhs', 'lhs_log10', 'rhs_log10', 'slack_log10', 'holds', 'report_only', 'note'
]


_contexts = threading.local()


def precision_context(bits):
    """
    An mpmath context at a fixed precision, one per thread and precision.
    Callers never change its precision; anything that needs extra working
    precision takes a context of its own.
    """
    cache = getattr(_contexts, 'by_bits', None)
    if cache is None:
        cache = _contexts.by_bits = {}
    ctx = cache.get(bits)
    if ctx is None:
        ctx = cache[bits] = mpmath.MPContext()
        ctx.prec = bits
    return ctx


def compare(lhs, relation, rhs):
    if relation == '<':
        return lhs < rhs
    if relation == '<=':
        return lhs <= rhs
    if relation == '==':
        return lhs == rhs
    if relation == '>=':
        return lhs >= rhs
    if relation == '>':
        return lhs > rhs
    raise ValueError(f'unknown relation {relation!r}')


def log10_of(value):
    if value is None:
        return None
    if isinstance(value, int):
        if value == 0:
            return None
        ctx = precision_context(64)
        return float(ctx.log10(ctx.mpf(abs(value))))
    ctx = precision_context(64)
    value = ctx.mpf(value)
    if value == 0:
        return None
    return float(ctx.log10(abs(value)))


def render_number(value, max_digits=constants.full_value_digits):
    if value is None:
        return ''
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        digits = gmpy2.mpz(value).digits(10)
        if len(digits.lstrip('-')) <= max_digits:
            return digits
        return f'~1e{log10_of(value):.3f}'
    if isinstance(value, float):
        return repr(value)
    return mpmath.nstr(value, 12)


@dataclass(frozen=True)
class BoundReport:
    """
    One audited inequality instance: ``lhs relation rhs``.

    ``holds`` is None when the check does not apply. ``report_only`` marks
    conjectural or unproved claims that are tabulated but never asserted.
    With ``log_scale`` both sides are already base-10 exponents.
    """
    label: str
    lhs: object
    rhs: object
    relation: str
    holds: object
    report_only: bool = False
    log_scale: bool = False
    note: str = ''

    @classmethod
    def evaluate(cls, label, lhs, relation, rhs, report_only=False, log_scale=False, note=''):
        if report_only and '[report-only]' not in label:
            label = f'{label} [report-only]'
        return cls(label, lhs, rhs, relation, bool(compare(lhs, relation, rhs)), report_only, log_scale, note)

    @classmethod
    def not_applicable(cls, label, note=''):
        return cls(label, None, None, '', None, False, False, note)

    @property
    def lhs_log10(self):
        return self._side_log10(self.lhs)

    @property
    def rhs_log10(self):
        return self._side_log10(self.rhs)

    def _side_log10(self, value):
        if value is None:
            return None
        if self.log_scale:
            return float(value)
        return log10_of(value)

    @property
    def slack(self):
        """Exact difference for equalities, the log10 gap otherwise."""
        if self.relation == '==' and isinstance(self.lhs, int) and isinstance(self.rhs, int):
            return self.lhs - self.rhs
        return self.slack_log10

    @property
    def slack_log10(self):
        lhs, rhs = self.lhs_log10, self.rhs_log10
        if lhs is None or rhs is None:
            return None
        return lhs - rhs

    @property
    def asserted_failure(self):
        return self.holds is False and not self.report_only

    def as_record(self, max_digits=constants.full_value_digits):
        return {
            'label': self.label,
            'relation': self.relation,
            'lhs': render_number(self.lhs, max_digits),
            'rhs': render_number(self.rhs, max_digits),
            'lhs_log10': self.lhs_log10,
            'rhs_log10': self.rhs_log10,
            'slack_log10': self.slack_log10,
            'holds': self.holds,
            'report_only': self.report_only,
            'note': self.note,
        }


def _format_log10(value):
    return 'n/a' if value is None else f'{value:.4f}'


def write_reports(stream, reports, fmt='json', config=None, max_digits=constants.full_value_digits):
    config = config or {}
    if fmt == 'json':
        stream.write(json.dumps({'config': config}, sort_keys=True, default=str) + '\n')
        for report in reports:
            stream.write(json.dumps(report.as_record(max_digits), default=str) + '\n')
    elif fmt == 'csv':
        stream.write('# config: ' + json.dumps(config, sort_keys=True, default=str) + '\n')
        writer = csv.DictWriter(stream, fieldnames=CSV_FIELDS, lineterminator='\n')
        writer.writeheader()
        for report in reports:
            writer.writerow(report.as_record(max_digits))
    elif fmt == 'text':
        stream.write('config: ' + ', '.join(f'{k}={v}' for k, v in sorted(config.items())) + '\n')
        for report in reports:
            record = report.as_record(max_digits)
            if report.holds is None:
                verdict = 'N/A'
            else:
                verdict = 'HOLDS' if report.holds else 'FAILS'
            stream.write(
                f"{verdict:5} {record['label']}: {record['lhs']} {record['relation']} {record['rhs']} "
                f"(log10 {_format_log10(record['lhs_log10'])} vs {_format_log10(record['rhs_log10'])})"
                + (f" -- {record['note']}" if record['note'] else '') + '\n'
            )
    else:
        raise ValueError(f'unknown format {fmt!r}')


def failures(reports):
    return [report for report in reports if report.asserted_failure]
