"""
Continued fractions of high-precision reals, the Liouville-type audits on
their convergents, and the unit-circle gap |beta - 1| with
beta = exp(2i(n+1) theta_p).

Quotients are never read off a single floating value. Each expansion works
on an exact rational enclosure of x and keeps only the quotients both ends
agree on, so every quotient returned is a quotient of x itself.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import primerange

from tau import constants
from tau.analytic import (
    binet_precision, guarded_evaluation, lambda_gap_lower, lambda_gap_matveev, sato_tate_angle, theta_at
)
from tau.coeff_engine import prime_coefficient
from tau.exceptions import InvalidArgument, PrecisionError
from tau.reports import BoundReport, precision_context

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SampleNumber:
    """
    A built-in real with a closed form: either the quadratic surd
    ``(a + b sqrt(d)) / c`` or an exact rational.
    """
    name: str
    degree: int
    description: str
    surd: tuple = None
    exact: Fraction = None

    def evaluate(self, bits):
        ctx = precision_context(bits)
        if self.exact is not None:
            return ctx.mpf(self.exact.numerator) / self.exact.denominator
        a, b, d, c = self.surd
        return (a + b * ctx.sqrt(d)) / c

    @property
    def minimal_polynomial(self):
        """Primitive integer coefficients, leading first."""
        if self.exact is not None:
            return (self.exact.denominator, -self.exact.numerator)
        a, b, d, c = self.surd
        coefficients = (c * c, -2 * a * c, a * a - b * b * d)
        g = math.gcd(*coefficients)
        return tuple(k // g for k in coefficients)


def sample_number(name):
    """``golden``, ``sqrt2``, ``sqrt3``, ``sqrt5``, ``near1:J`` = 1 + (sqrt(2)-1)/2^J, or a rational ``a/b``."""
    if name in constants.sample_surds:
        a, b, d, c, degree, description = constants.sample_surds[name]
        return SampleNumber(name, degree, description, surd=(a, b, d, c))
    if name.startswith('near1:'):
        try:
            j = int(name.split(':', 1)[1])
        except ValueError:
            raise InvalidArgument(f'bad sample {name!r}; expected near1:J with an integer J')
        if j < 1:
            raise InvalidArgument('near1:J needs J >= 1')
        return SampleNumber(name, 2, f'1+(sqrt(2)-1)/2^{j}', surd=(2 ** j - 1, 1, 2, 2 ** j))
    try:
        value = Fraction(name)
    except (ValueError, ZeroDivisionError):
        known = ', '.join(sorted(constants.sample_surds))
        raise InvalidArgument(f'unknown sample {name!r}; use {known}, near1:J or a rational a/b')
    return SampleNumber(name, 1, str(value), exact=value)


@dataclass(frozen=True)
class ContinuedFraction:
    """
    ``quotients[m]`` is a_m and ``convergents[m]`` is (p_m, q_m).

    ``terminated`` marks a rational whose expansion ended; ``truncated``
    marks an expansion that stopped short of the requested count because
    the precision ran out.
    """
    description: str
    quotients: tuple
    convergents: tuple
    precision_bits: int
    truncated: bool = False
    terminated: bool = False

    def __len__(self):
        return len(self.quotients)

    def determinant(self, m):
        """p_m q_(m-1) - p_(m-1) q_m, which is (-1)^(m-1)."""
        p_m, q_m = self.convergents[m]
        p_prev, q_prev = self.convergents[m - 1] if m else (1, 0)
        return p_m * q_prev - p_prev * q_m

    def as_dict(self):
        return {
            'description': self.description,
            'quotients': [str(a) for a in self.quotients],
            'convergents': [[str(p), str(q)] for p, q in self.convergents],
            'precision_bits': self.precision_bits,
            'truncated': self.truncated,
            'terminated': self.terminated,
        }


def _convergents(quotients):
    p_prev, p = 1, quotients[0]
    q_prev, q = 0, 1
    result = [(p, q)]
    for a in quotients[1:]:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        result.append((p, q))
    return tuple(result)


def _euclid(value, count):
    """Quotients of an exact rational; the flag is True when the expansion ended."""
    quotients = []
    while len(quotients) < count:
        a = math.floor(value)
        quotients.append(a)
        if value == a:
            return quotients, True
        value = 1 / (value - a)
    return quotients, False


def _common_quotients(lo, hi, count):
    """Quotients shared by every real in [lo, hi]."""
    quotients = []
    while len(quotients) < count:
        a = math.floor(lo)
        if a != math.floor(hi) or lo == a:
            break
        quotients.append(a)
        # the reciprocal reverses the order of the ends
        lo, hi = 1 / (hi - a), 1 / (lo - a)
    return quotients


def _enclosure(value, bits):
    """Exact rationals around an mpf carrying ``bits`` bits, widened by the evaluation error."""
    ctx = precision_context(bits)
    scaled = int(ctx.floor(ctx.ldexp(value, bits)))
    magnitude = abs(int(ctx.floor(value))) + 1
    slack = Fraction(magnitude, 2 ** (bits - 8))
    lower = Fraction(scaled, 2 ** bits)
    return lower - slack, lower + Fraction(1, 2 ** bits) + slack


def continued_fraction_expand(x, count, precision_bits=constants.cf_default_precision, description=None):
    """
    First ``count`` partial quotients of ``x`` with exact convergents.

    ``x`` may be a SampleNumber, an exact rational or an mpf. Samples are
    re-evaluated at doubled precision when the enclosure runs out of
    agreeing quotients; a bare mpf cannot be, and comes back truncated.
    """
    if count < 1:
        raise InvalidArgument(f'count must be >= 1, got {count}')
    if precision_bits < constants.angle_min_precision:
        raise InvalidArgument(f'precision must be at least {constants.angle_min_precision} bits')
    if isinstance(x, (int, Fraction)):
        x = SampleNumber(str(x), 1, str(x), exact=Fraction(x))
    if isinstance(x, SampleNumber) and x.exact is not None:
        quotients, terminated = _euclid(x.exact, count)
        return ContinuedFraction(description or x.description, tuple(quotients), _convergents(quotients),
                                 precision_bits, terminated=terminated)

    sample = x if isinstance(x, SampleNumber) else None
    description = description or (sample.description if sample else 'mpf')
    bits = precision_bits
    for attempt in range(constants.cf_max_raises + 1):
        value = sample.evaluate(bits) if sample else x
        lo, hi = _enclosure(value, bits)
        quotients = _common_quotients(lo, hi, count)
        if len(quotients) >= count or sample is None or attempt == constants.cf_max_raises:
            break
        logger.info('%s: %d of %d quotients at %d bits, raising precision', description, len(quotients),
                    count, bits)
        bits *= 2
    if not quotients:
        raise PrecisionError(f'{description}: not even the integer part is certain at {bits} bits')
    cf = ContinuedFraction(description, tuple(quotients), _convergents(quotients), bits,
                           truncated=len(quotients) < count)
    _validate(cf, lo, hi)
    return cf


def _validate(cf, lo, hi):
    """Every convergent but the last must sit within 1/(q_m q_(m+1)) of the whole enclosure."""
    for m in range(len(cf) - 1):
        p, q = cf.convergents[m]
        q_next = cf.convergents[m + 1][1]
        error = max(abs(lo - Fraction(p, q)), abs(hi - Fraction(p, q)))
        if error >= Fraction(1, q * q_next):
            raise PrecisionError(f'{cf.description}: convergent {m} misses the error bound at {cf.precision_bits} bits')


def expansion_audit(sample, count, precision_bits=constants.cf_default_precision):
    sample = _resolve(sample)
    cf = continued_fraction_expand(sample, count, precision_bits)
    ctx = precision_context(cf.precision_bits)
    x = sample.evaluate(cf.precision_bits)
    reports = []
    for m in range(len(cf)):
        p, q = cf.convergents[m]
        reports.append(BoundReport.evaluate(f'{sample.name} determinant m={m}', cf.determinant(m), '==',
                                            (-1) ** ((m - 1) % 2)))
        if m + 1 < len(cf):
            q_next = cf.convergents[m + 1][1]
            reports.append(BoundReport.evaluate(f'{sample.name} convergent error m={m}', abs(x - ctx.mpf(p) / q),
                                                '<', 1 / (ctx.mpf(q) * q_next)))
    return cf, reports


def _resolve(beta):
    return sample_number(beta) if isinstance(beta, str) else beta


def liouville_gap_audit(beta, degree=None, convergent_count=50, precision_bits=constants.cf_default_precision):
    """
    |beta - p_m/q_m| against 1/(A q_m^n) and 1/(A q_m^(n+1)), A = n^3 2^n.

    The lower bound is asserted when the minimal polynomial's coefficients
    stay within 2n, which the constant A is derived from; the order-(n+1)
    upper bound is only ever reported.
    """
    beta = _resolve(beta)
    degree = degree or beta.degree
    if degree != beta.degree:
        raise InvalidArgument(f'{beta.name} has degree {beta.degree}, audit asked for {degree}')
    cf = continued_fraction_expand(beta, convergent_count, precision_bits)
    ctx = precision_context(cf.precision_bits)
    x = beta.evaluate(cf.precision_bits)
    constant = degree ** 3 * 2 ** degree
    coefficients_small = max(map(abs, beta.minimal_polynomial)) <= 2 * degree
    note = '' if coefficients_small else 'minimal polynomial coefficients exceed 2n'
    reports = []
    for m, (p, q) in enumerate(cf.convergents):
        label = f'{beta.name} convergent {m}'
        if beta.exact is not None and Fraction(p, q) == beta.exact:
            reports.append(BoundReport.evaluate(f'{label} exact', p * beta.exact.denominator, '==',
                                                beta.exact.numerator * q,
                                                note='expansion terminated'))
            continue
        gap = abs(x - ctx.mpf(p) / q)
        reports.append(BoundReport.evaluate(f'{label} liouville lower', gap, '>', 1 / (constant * ctx.mpf(q) ** degree),
                                            report_only=not coefficients_small, note=note))
        reports.append(BoundReport.evaluate(f'{label} order n+1 upper', gap, '<=',
                                            1 / (constant * ctx.mpf(q) ** (degree + 1)), report_only=True))
    return reports


def basic_gap_inequality(x, m, precision_bits=constants.cf_default_precision):
    """|x q_m - p_m| >= 1/(2 q_(m+1))."""
    if m < 0:
        raise InvalidArgument(f'm must be >= 0, got {m}')
    x = _resolve(x)
    label = f'{x.name} gap m={m}'
    cf = continued_fraction_expand(x, m + 2, precision_bits)
    if cf.terminated:
        return BoundReport.not_applicable(label, 'rational input, the expansion ended')
    if cf.truncated:
        raise PrecisionError(f'{label}: only {len(cf)} quotients at {cf.precision_bits} bits')
    ctx = precision_context(cf.precision_bits)
    p, q = cf.convergents[m]
    q_next = cf.convergents[m + 1][1]
    lhs = abs(x.evaluate(cf.precision_bits) * q - p)
    return BoundReport.evaluate(label, lhs, '>=', 1 / (2 * ctx.mpf(q_next)))


# --- the unit-circle gap ----------------------------------------------------

def _gap_at(p, tau_p, n, bits):
    ctx = precision_context(bits)
    return 2 * abs(ctx.sin((n + 1) * theta_at(p, tau_p, bits)))


def beta_gap(angle, n):
    """|beta - 1| = 2|sin((n+1) theta_p)| for beta = exp(2i(n+1) theta_p)."""
    if n < 1:
        raise InvalidArgument(f'n must be >= 1, got {n}')
    return guarded_evaluation(lambda b: _gap_at(angle.p, angle.tau_p, n, b), binet_precision(angle, n),
                              constants.guard_bits, f'beta gap p={angle.p} n={n}')


def unit_root_gap_audit(angle, n):
    """
    |beta - 1| against 1/((n+1)^3 2^(n+1) p^(2(n+1))). Report-only: the bound
    presumes a convergent with denominator at most p^2 that is never shown
    to exist.
    """
    gap = beta_gap(angle, n)
    ctx = precision_context(128)
    bound = 1 / (ctx.mpf(n + 1) ** 3 * ctx.mpf(2) ** (n + 1) * ctx.mpf(angle.p) ** (2 * (n + 1)))
    return BoundReport.evaluate(f'unit-root gap p={angle.p} n={n}', gap, '>', bound, report_only=True)


def unit_root_gap_grid(p_max, n_max, table=None):
    reports = []
    for p in primerange(2, p_max + 1):
        angle = sato_tate_angle(int(p), prime_coefficient(int(p), table))
        reports.extend(unit_root_gap_audit(angle, n) for n in range(1, n_max + 1))
    return reports


def lambda_gap_report(angle, n, c0=constants.matveev_c0):
    """ln|Lambda_p(n)|, Lambda_p(n) = beta - 1, against the claimed c0 form and Matveev's form, in log10."""
    label = f'lambda gap p={angle.p} n={n}'
    gap = beta_gap(angle, n)
    if gap == 0:
        return [BoundReport.not_applicable(label, 'Lambda vanishes')]
    ctx = precision_context(128)
    ln10 = ctx.log(10)
    actual = ctx.log(ctx.mpf(gap)) / ln10
    return [
        BoundReport.evaluate(f'{label} claimed c0={c0}', actual, '>', lambda_gap_lower(angle.p, n, c0) / ln10,
                             report_only=True, log_scale=True),
        BoundReport.evaluate(f'{label} matveev', actual, '>',
                             lambda_gap_matveev(angle.p, n, angle.tau_p) / ln10,
                             report_only=True, log_scale=True),
    ]
