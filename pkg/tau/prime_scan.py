"""
The search for prime values tau(p^2n) = +-q, and the checks that close the
two cases of the nonexistence argument at desk scale.

Only arguments p^2n with 2n+1 prime can give an odd prime value, so the
scan walks primes p and exponent primes 2n+1. Work is split per p; a batch
is the unit of parallelism, of output and of checkpointing.
"""
import hashlib
import json
import logging
import multiprocessing
import os
from dataclasses import asdict, dataclass, field
from enum import Enum

import gmpy2
from sympy import primerange

from tau import constants
from tau.analytic import log_power_bound
from tau.coeff_engine import PrimePower, coeff_prime_power, decimal_digits, decimal_string, delta_series
from tau.exceptions import CheckpointMismatch, ConfigurationError, InvalidArgument, ReproductionError
from tau.reports import BoundReport, precision_context

logger = logging.getLogger(__name__)


class Primality(str, Enum):
    COMPOSITE = 'composite'
    PROBABLE_PRIME = 'probable_prime'
    PROVEN_PRIME = 'proven_prime'


def is_probable_prime(n):
    """
    Strong probable-prime tests to the fixed bases, deterministic below 2^64;
    above that a strong Lucas test with Selfridge parameters as well.
    A composite verdict is always correct.
    """
    if n < 0:
        raise InvalidArgument(f'primality is tested on n >= 0, got {n}')
    n = gmpy2.mpz(n)
    if n < 2:
        return Primality.COMPOSITE
    for base in constants.strong_prp_bases:
        if n == base:
            return Primality.PROVEN_PRIME
        if n % base == 0:
            return Primality.COMPOSITE
    if gmpy2.is_square(n):
        return Primality.COMPOSITE
    if not all(gmpy2.is_strong_prp(n, base) for base in constants.strong_prp_bases):
        return Primality.COMPOSITE
    if n < constants.proven_prime_limit:
        return Primality.PROVEN_PRIME
    if gmpy2.is_strong_selfridge_prp(n):
        return Primality.PROBABLE_PRIME
    return Primality.COMPOSITE


@dataclass(frozen=True)
class ScanRecord:
    p: int
    two_n: int
    value_sign: int
    digit_count: int
    primality: Primality
    value_hash: str
    value: int = field(repr=False, compare=False)

    @classmethod
    def from_value(cls, p, two_n, value, primality=None):
        digits = decimal_string(value)
        return cls(
            p=p,
            two_n=two_n,
            value_sign=-1 if value < 0 else 1,
            digit_count=decimal_digits(value),
            primality=primality or is_probable_prime(abs(value)),
            value_hash=hashlib.sha256(digits.encode()).hexdigest(),
            value=value,
        )

    def as_dict(self, full_values=False):
        record = {
            'p': self.p,
            'two_n': self.two_n,
            'value_sign': self.value_sign,
            'digit_count': self.digit_count,
            'primality': self.primality.value,
            'value_hash': self.value_hash,
        }
        if full_values:
            record['value'] = decimal_string(self.value)
        return record


RECORD_FIELDS = ['p', 'two_n', 'value_sign', 'digit_count', 'primality', 'value_hash', 'value']


@dataclass(frozen=True)
class ScanBatch:
    p: int
    records: tuple
    excluded: str = ''


@dataclass
class ScanCheckpoint:
    config_digest: str
    last_completed: tuple
    records_emitted: int
    excluded: tuple = ()

    def save(self, path):
        tmp = f'{path}.tmp'
        with open(tmp, 'w') as stream:
            json.dump(asdict(self), stream)
        os.replace(tmp, path)
        logger.debug('checkpoint at p=%d 2n=%d, %d records', *self.last_completed, self.records_emitted)

    @classmethod
    def load(cls, path):
        with open(path) as stream:
            try:
                data = json.load(stream)
                return cls(data['config_digest'], tuple(data['last_completed']), int(data['records_emitted']),
                           tuple(data.get('excluded', ())))
            except (KeyError, TypeError, ValueError, AttributeError):
                raise CheckpointMismatch(f'{path} is not a scan checkpoint')


def config_digest(config):
    canonical = json.dumps(config, sort_keys=True, default=str)
    return hashlib.sha256(canonical.encode()).hexdigest()


def exponent_arguments(exponent_primes):
    """Sorted even exponents 2n for the given odd primes 2n+1."""
    exponent_primes = sorted(set(exponent_primes))
    for e in exponent_primes:
        if e < 3 or not gmpy2.is_prime(e):
            raise InvalidArgument(f'exponent {e} is not an odd prime')
    return tuple(e - 1 for e in exponent_primes)


def _scan_prime(job):
    p, tau_p, two_ns = job
    records = []
    for two_n in two_ns:
        value = coeff_prime_power(tau_p, PrimePower(p, two_n))
        primality = is_probable_prime(abs(value))
        if primality is not Primality.COMPOSITE:
            records.append(ScanRecord.from_value(p, two_n, value, primality))
    return p, tuple(records)


def _prime_table(p_max, table):
    if table is None:
        return delta_series(max(p_max, 1))
    if not table.covers(p_max):
        raise ConfigurationError(f'coefficient table stops at {table.limit}, the scan needs tau(p) up to {p_max}')
    return table


def iter_scan_batches(p_max, exponent_primes, table=None, workers=1, resume_after=None):
    """
    One ScanBatch per prime p <= p_max, in ascending p, whatever the
    worker count. ``resume_after`` skips every p up to and including it.
    """
    two_ns = exponent_arguments(exponent_primes)
    table = _prime_table(p_max, table)
    start = 2 if resume_after is None else resume_after + 1
    jobs = [(int(p), table[int(p)], two_ns) for p in primerange(start, p_max + 1)]
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            yield from _batches(pool.imap(_scan_prime, jobs, chunksize=8))
    else:
        yield from _batches(map(_scan_prime, jobs))


def structural_exclusions(p_max):
    return {p: reason for p, reason in constants.structural_exclusions.items() if p <= p_max}


def _batches(results):
    for p, records in results:
        excluded = constants.structural_exclusions.get(p, '')
        if excluded:
            logger.info('p=%d is structurally excluded: %s', p, excluded)
        logger.debug('p=%d done, %d prime values', p, len(records))
        yield ScanBatch(p, records, excluded)


def scan_prime_values(p_max, exponent_primes, table=None, workers=1):
    for batch in iter_scan_batches(p_max, exponent_primes, table, workers):
        yield from batch.records


# --- persisted runs ---------------------------------------------------------

def header_lines(fmt, config, excluded=None):
    excluded = excluded or {}
    if fmt == 'json':
        header = {'config': config}
        if excluded:
            header['excluded'] = {str(p): reason for p, reason in excluded.items()}
        return [json.dumps(header, sort_keys=True, default=str)]
    notes = [f'excluded p={p}: {reason}' for p, reason in sorted(excluded.items())]
    if fmt == 'csv':
        return (['# config: ' + json.dumps(config, sort_keys=True, default=str)]
                + [f'# {note}' for note in notes] + [','.join(RECORD_FIELDS)])
    if fmt == 'text':
        return ['config: ' + ', '.join(f'{k}={v}' for k, v in sorted(config.items()))] + notes
    raise InvalidArgument(f'unknown format {fmt!r}')


def format_record(record, fmt, full_values=False):
    data = record.as_dict(full_values)
    if fmt == 'json':
        return json.dumps(data)
    if fmt == 'csv':
        return ','.join(str(data.get(name, '')) for name in RECORD_FIELDS)
    return (f"tau({record.p}^{record.two_n}) sign {record.value_sign:+d} digits {record.digit_count} "
            f"{record.primality.value} sha256 {record.value_hash}"
            + (f" value {data['value']}" if full_values else ''))


def _truncate(path, keep_lines):
    with open(path) as stream:
        lines = stream.readlines()
    if len(lines) < keep_lines:
        raise CheckpointMismatch(f'{path} holds {len(lines)} lines, the checkpoint expects {keep_lines}')
    with open(path, 'w') as stream:
        stream.writelines(lines[:keep_lines])


def run_scan(output_path, checkpoint_path, p_max, exponent_primes, workers=1, fmt='json', full_values=False,
             resume=False, table=None, config=None):
    """
    Scan into ``output_path``, checkpointing after every p. A resumed run
    cuts the output back to the checkpointed records and carries on, so it
    ends with the file a fresh run would have written.
    """
    shaping = {'p_max': p_max, 'exponent_primes': sorted(set(exponent_primes)), 'format': fmt,
               'full_values': full_values}
    digest = config_digest(shaping)
    header = header_lines(fmt, dict(config or shaping), structural_exclusions(p_max))
    emitted, resume_after, excluded = 0, None, []
    if resume and os.path.exists(checkpoint_path):
        checkpoint = ScanCheckpoint.load(checkpoint_path)
        if checkpoint.config_digest != digest:
            raise CheckpointMismatch(f'{checkpoint_path} was written by a scan with a different configuration')
        _truncate(output_path, len(header) + checkpoint.records_emitted)
        emitted, resume_after = checkpoint.records_emitted, checkpoint.last_completed[0]
        excluded = list(checkpoint.excluded)
        logger.info('resuming after p=%d with %d records', resume_after, emitted)
        mode = 'a'
    else:
        if resume:
            logger.info('no checkpoint at %s, starting a fresh scan', checkpoint_path)
        mode = 'w'
    two_ns = exponent_arguments(exponent_primes)
    with open(output_path, mode) as stream:
        if mode == 'w':
            stream.write('\n'.join(header) + '\n')
        for batch in iter_scan_batches(p_max, exponent_primes, table, workers, resume_after):
            for record in batch.records:
                stream.write(format_record(record, fmt, full_values) + '\n')
            emitted += len(batch.records)
            if batch.excluded:
                excluded.append(batch.p)
            stream.flush()
            ScanCheckpoint(digest, (batch.p, two_ns[-1]), emitted, tuple(excluded)).save(checkpoint_path)
    logger.info('scan to p=%d finished with %d records', p_max, emitted)
    return emitted


# --- the case split ---------------------------------------------------------

def verify_case_I(p_max=constants.scan_p_max, exponent_primes=constants.scan_exponent_primes,
                  q_bound=constants.q_bound, table=None, workers=1, records=None):
    if records is None:
        records = list(scan_prime_values(p_max, exponent_primes, table, workers))
    label = f'case I p<={p_max} exponents={sorted(set(exponent_primes))}'
    if not records:
        return BoundReport(label, None, q_bound, '>', True, note='no prime values in range')
    smallest = min(records, key=lambda record: abs(record.value))
    note = f'smallest at tau({smallest.p}^{smallest.two_n})'
    if smallest.value == constants.lehmer_value:
        note += ', the Lehmer value'
    holds = all(abs(record.value) > q_bound for record in records)
    return BoundReport(label, abs(smallest.value), q_bound, '>', holds, note=note)


def verify_case_II(q_bound=constants.q_bound, decades=constants.case_split_decades,
                   exponent=constants.log_power_exponent):
    """(ln 10^decades)^exponent > q_bound."""
    ctx = precision_context(128)
    value = log_power_bound(decades * ctx.log(10), exponent)
    return BoundReport.evaluate(f'case II X=10^{decades}', value, '>', ctx.mpf(q_bound),
                                note=f'printed as {constants.printed_case_split_value}')


def smallest_decade_exceeding(q_bound=constants.q_bound, exponent=constants.log_power_exponent):
    """Smallest k with (k ln 10)^exponent > q_bound."""
    ctx = precision_context(128)
    q_bound = ctx.mpf(q_bound)
    k = max(1, int(ctx.floor(ctx.root(q_bound, exponent) / ctx.log(10))) - 1)
    while log_power_bound(k * ctx.log(10), exponent) <= q_bound:
        k += 1
    return k


# --- structural checks ------------------------------------------------------

def _is_odd_square(n):
    return n % 2 == 1 and gmpy2.is_square(n)


def parity_check(limit, table=None):
    """tau(n) odd exactly when n is an odd square, for n <= limit."""
    table = table if table is not None and table.covers(limit) else delta_series(limit)
    mismatches = [n for n in range(1, limit + 1) if (table[n] % 2 == 1) != _is_odd_square(n)]
    note = f'first counterexample n={mismatches[0]}' if mismatches else ''
    return BoundReport.evaluate(f'parity n<={limit}', len(mismatches), '==', 0, note=note)


def nonvanishing_check(limit, table=None):
    table = table if table is not None and table.covers(limit) else delta_series(limit)
    zeros = [n for n in range(1, limit + 1) if table[n] == 0]
    note = f'first zero at n={zeros[0]}' if zeros else ''
    return BoundReport.evaluate(f'nonvanishing n<={limit}', len(zeros), '==', 0, note=note)


def small_prime_exclusion(records, primes=constants.excluded_small_primes):
    values = {abs(record.value) for record in records}
    return [BoundReport.evaluate(f'tau never +-{q}', int(q in values), '==', 0) for q in primes]


# --- reproductions ----------------------------------------------------------

def lehmer_check():
    p, two_n = constants.lehmer_argument
    value = coeff_prime_power(delta_series(p)[p], PrimePower(p, two_n))
    primality = is_probable_prime(abs(value))
    return BoundReport(f'lehmer tau({p}^{two_n})', value, constants.lehmer_value, '==',
                       value == constants.lehmer_value and primality is not Primality.COMPOSITE,
                       note=primality.value)


def _table1_rows():
    table = delta_series(max(p for p, _, _ in constants.table1))
    for p, two_n, digits in constants.table1:
        yield digits, ScanRecord.from_value(p, two_n, coeff_prime_power(table[p], PrimePower(p, two_n)))


def table1_reproduce():
    records = []
    for digits, record in _table1_rows():
        p, two_n = record.p, record.two_n
        if record.digit_count != digits:
            raise ReproductionError(f'tau({p}^{two_n}) has {record.digit_count} digits, expected {digits}')
        if record.primality is Primality.COMPOSITE:
            raise ReproductionError(f'|tau({p}^{two_n})| is composite')
        records.append(record)
    return records


def table1_audit():
    reports = []
    for digits, record in _table1_rows():
        reports.append(BoundReport(
            f'table 1 tau({record.p}^{record.two_n}) digits', record.digit_count, digits, '==',
            record.digit_count == digits and record.primality is not Primality.COMPOSITE,
            note=f'{record.primality.value}, sign {record.value_sign:+d}',
        ))
    return reports
