"""
Sato-Tate angles, the Binet-style evaluation of tau(p^n) and evaluators for
the explicit bounds on |tau(p^n)|.

All logarithms are natural; base 10 appears only in reports. Every
high-precision quantity is computed in an mpmath context fixed to the
precision the call asked for.
"""
import logging
import math
from dataclasses import dataclass

import gmpy2
import mpmath
from sympy import primerange

from tau import constants
from tau.coeff_engine import PrimePower, coeff_prime_power, decimal_digits, prime_coefficient
from tau.exceptions import DeligneViolation, InvalidArgument, PrecisionError
from tau.reports import BoundReport, precision_context

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SatoTateAngle:
    """theta_p in (0, pi) with tau(p) = 2 p^(11/2) cos(theta_p)."""
    p: int
    tau_p: int
    theta: object
    precision_bits: int


@dataclass(frozen=True)
class MatveevParams:
    d: int
    k_field: int
    B: int
    heights: tuple

    def __post_init__(self):
        floor = precision_context(64).mpf(constants.height_floor)
        if self.d < 1 or self.k_field < 1 or self.B < 1:
            raise InvalidArgument('Matveev parameters need d, k, B >= 1')
        if len(self.heights) != self.d:
            raise InvalidArgument(f'expected {self.d} heights, got {len(self.heights)}')
        if any(precision_context(64).mpf(a) < floor for a in self.heights):
            raise InvalidArgument(f'every height must be at least {constants.height_floor}')


# --- angles and the Binet form ----------------------------------------------

def _cosine_bits(p, tau_p):
    # -log2|cos theta|: bits acos gives up near pi/2
    if tau_p == 0:
        return 0
    return max(0, math.ceil(1 + 5.5 * math.log2(p) - math.log2(abs(tau_p))))


def theta_at(p, tau_p, bits):
    """
    arccos(tau_p / 2p^(11/2)), accurate enough that 2p^(11/2) cos(theta)
    returns tau_p to ``bits`` bits even when cos(theta) is tiny.
    """
    ctx = precision_context(bits + _cosine_bits(p, tau_p) + 8)
    return ctx.acos(ctx.mpf(tau_p) / (2 * ctx.sqrt(ctx.mpf(p) ** 11)))


def sato_tate_angle(p, tau_p, precision_bits=constants.angle_default_precision):
    if precision_bits < constants.angle_min_precision:
        raise InvalidArgument(f'precision must be at least {constants.angle_min_precision} bits')
    if p < 2 or not gmpy2.is_prime(p):
        raise InvalidArgument(f'{p} is not prime')
    # |tau_p| <= 2 p^(11/2) squared; equality is impossible since 11 is odd.
    if tau_p * tau_p > 4 * p ** 11:
        raise DeligneViolation(f'|tau({p})| = {abs(tau_p)} exceeds 2*{p}^(11/2)')
    theta = theta_at(p, tau_p, precision_bits)
    return SatoTateAngle(p, tau_p, theta, precision_bits)


def binet_precision(angle, n):
    """Magnitude bits of p^(11n/2) plus guard bits and the conditioning of 1/sin(theta)."""
    magnitude = math.ceil(5.5 * n * math.log2(angle.p))
    sine = abs(math.sin(float(angle.theta)))
    conditioning = math.ceil(math.log2(n + 1)) + 2 * max(0, math.ceil(-math.log2(sine)))
    return magnitude + constants.guard_bits + conditioning


def _binet_at(p, tau_p, n, bits):
    ctx = precision_context(bits)
    theta = theta_at(p, tau_p, bits)
    scale = ctx.power(p, ctx.mpf(11) * n / 2)
    return scale * ctx.sin((n + 1) * theta) / ctx.sin(theta)


def guarded_evaluation(evaluate, bits, guard, label):
    """Evaluate at ``bits`` and ``bits + 32``; raise ``bits`` until they agree to ``guard - 10`` bits.

    Agreement is relative for values above 1 and absolute below.
    """
    for _ in range(constants.precision_raises + 1):
        value = evaluate(bits)
        reference = evaluate(bits + 32)
        ctx = precision_context(bits + 32)
        tolerance = ctx.ldexp(1, -(guard - 10))
        if abs(value - reference) <= tolerance * max(abs(reference), 1):
            return value
        logger.info('%s: guard check failed at %d bits, raising precision', label, bits)
        bits += 32
    raise PrecisionError(f'{label}: no agreement after {constants.precision_raises} precision raises')


def binet_eval(angle, n, adaptive=True):
    """p^(11n/2) sin((n+1) theta_p) / sin(theta_p)."""
    if n < 1:
        raise InvalidArgument(f'n must be >= 1, got {n}')
    bits = binet_precision(angle, n)
    if angle.precision_bits < bits and not adaptive:
        raise PrecisionError(f'angle carries {angle.precision_bits} bits, binet_eval needs {bits}')
    return guarded_evaluation(lambda b: _binet_at(angle.p, angle.tau_p, n, b), bits, constants.guard_bits,
                              f'binet p={angle.p} n={n}')


def binet_drop_factor(angle):
    """1/(2|sin theta_p|), the factor between |tau(p^n)| and p^(11n/2)|beta - 1|."""
    ctx = precision_context(angle.precision_bits)
    return 1 / (2 * abs(ctx.sin(ctx.mpf(angle.theta))))


def even_power_cosine(p, two_n, tau_p):
    """cos(theta) a representation tau(p^2n) = 2 p^(11n) cos(theta) would need."""
    if two_n < 2 or two_n % 2:
        raise InvalidArgument('two_n must be even and >= 2')
    value = coeff_prime_power(tau_p, PrimePower(p, two_n))
    ctx = precision_context(128)
    cosine = ctx.mpf(value) / (2 * ctx.power(p, 11 * (two_n // 2)))
    return BoundReport.evaluate(f'cosine form tau({p}^{two_n})', abs(cosine), '<=', 1, report_only=True,
                                note='a value above 1 means no angle represents this coefficient')


# --- bounds on |tau(p^n)| ---------------------------------------------------

def deligne_bound(p, n, epsilon=0):
    ctx = precision_context(128)
    epsilon = ctx.mpf(epsilon)
    if epsilon < 0:
        raise InvalidArgument('epsilon must be >= 0')
    return 2 * ctx.power(p, ctx.mpf(11) * n / 2 + epsilon)


def divisor_deligne_bound(p, n):
    """(n+1) p^(11n/2), the sharp form for prime powers."""
    ctx = precision_context(128)
    return (n + 1) * ctx.power(p, ctx.mpf(11) * n / 2)


def deligne_holds_exact(value, p, n):
    """|value| <= (n+1) p^(11n/2), decided on squares in exact integers."""
    return value * value <= (n + 1) ** 2 * p ** (11 * n)


def atkin_serre_bound(p, n, epsilon):
    ctx = precision_context(128)
    epsilon = ctx.mpf(epsilon)
    if epsilon <= 0:
        raise InvalidArgument('epsilon must be > 0')
    return ctx.power(p, ctx.mpf(9) * n / 2 - epsilon)


def log_power_bound(log_x, exponent=constants.log_power_exponent):
    """(ln X)^exponent for X given by its natural logarithm."""
    ctx = precision_context(128)
    return ctx.power(ctx.mpf(log_x), exponent)


def in_explicit_regime(p, two_n, decades=constants.case_split_decades):
    return two_n * math.log10(p) >= decades and gmpy2.mpz(p) ** two_n >= gmpy2.mpz(10) ** decades


def explicit_lower_bound(p, two_n, exponent=constants.log_power_exponent):
    if not in_explicit_regime(p, two_n):
        logger.debug('explicit bound evaluated outside p^2n >= 10^%d (p=%d, 2n=%d)',
                     constants.case_split_decades, p, two_n)
    ctx = precision_context(128)
    return log_power_bound(two_n * ctx.log(p), exponent)


def liouville_coeff_bound(p, n, epsilon=constants.epsilon_default):
    """log10 of p^(7n/2 - 2 - eps) / ((n+1)^3 2^(n+1))."""
    ctx = precision_context(128)
    exponent = ctx.mpf(7) * n / 2 - 2 - ctx.mpf(epsilon)
    return (exponent * ctx.log10(p) - 3 * ctx.log10(n + 1) - (n + 1) * ctx.log10(2))


def liouville_lower_bound(p, two_n, epsilon=constants.epsilon_default):
    """log10 of p^(7n - 2 - eps) / ((2n+1)^3 2^(2n+1)) for the argument p^2n."""
    if two_n < 2 or two_n % 2:
        raise InvalidArgument('two_n must be even and >= 2')
    return liouville_coeff_bound(p, two_n, epsilon)


def murty_saradha_bound(m, c):
    ctx = precision_context(128)
    if m < 2:
        raise InvalidArgument('m must be >= 2')
    return ctx.power(ctx.log(m), ctx.mpf(c))


def inequality_chain_check(p, two_n, epsilon=constants.epsilon_default):
    """
    The final display of the explicit-bound argument divided by n log p,
    against 7 - (2+eps)/n. The contradiction closes when the ratio stays
    below that value; outside p^2n >= 10^600 the check is only reported.
    """
    if two_n < 2 or two_n % 2 or p < 2:
        raise InvalidArgument('need p >= 2 and an even 2n >= 2')
    ctx = precision_context(128)
    n = two_n // 2
    log_p = ctx.log(p)
    lhs = 3 * ctx.log(2 * n + 1) + (2 * n + 1) * ctx.log(2) + 10 * (ctx.log(n) + ctx.log(log_p) + ctx.log(2))
    ratio = lhs / (n * log_p)
    target = 7 - (2 + ctx.mpf(epsilon)) / n
    in_regime = in_explicit_regime(p, two_n)
    below_six = 'ratio < 6' if ratio < 6 else 'ratio >= 6'
    return BoundReport.evaluate(f'inequality chain p={p} 2n={two_n}', ratio, '<', target, report_only=not in_regime,
                                note=f"{below_six}; {'in regime' if in_regime else 'out of regime'}")


def inequality_chain_grid(p_max=97, multiples=(1, 2, 10), epsilon=constants.epsilon_default):
    """The chain for every p <= p_max at multiples of the smallest 2n with p^2n >= 10^600."""
    decades = constants.case_split_decades
    reports = []
    for p in primerange(2, p_max + 1):
        two_n = 2 * math.ceil(decades / (2 * math.log10(p)))
        while not in_explicit_regime(int(p), two_n, decades):
            two_n += 2
        reports.extend(inequality_chain_check(int(p), two_n * m, epsilon) for m in multiples)
    return reports


# --- linear forms in logarithms ---------------------------------------------

def matveev_bound(params):
    ctx = precision_context(128)
    d, k = params.d, params.k_field
    value = (ctx.mpf(constants.matveev_base) * ctx.mpf(30) ** (d + 3) * ctx.power(d, ctx.mpf('4.5')) * k ** 2
             * (1 + ctx.log(d)) * (1 + ctx.log(params.B)))
    for height in params.heights:
        value *= ctx.mpf(height)
    return value


def absolute_log_height(coefficients):
    """(1/d)(log |a_0| + sum log max(|alpha_i|, 1)) over the roots of the integer polynomial."""
    ctx = precision_context(128)
    degree = len(coefficients) - 1
    if degree < 1 or coefficients[0] == 0:
        raise InvalidArgument('need a polynomial of degree >= 1 with nonzero leading coefficient')
    a, *rest = coefficients
    if degree == 1:
        moduli = [abs(ctx.mpf(rest[0]) / a)]
    elif degree == 2 and rest[0] ** 2 - 4 * a * rest[1] < 0:
        # complex pair, both of modulus sqrt(c/a)
        moduli = [ctx.sqrt(ctx.mpf(rest[1]) / a)] * 2
    else:
        # polyroots raises the precision of its context while it runs
        roots = mpmath.MPContext()
        roots.prec = 128
        moduli = [ctx.mpf(abs(root)) for root in roots.polyroots(coefficients, maxsteps=200, extraprec=256)]
    total = ctx.log(abs(a)) + sum(ctx.log(max(modulus, 1)) for modulus in moduli)
    return total / degree


def height_quadratic(p, tau_p):
    """Height of a root of X^2 - tau(p) X + p^11, equal to (11/2) ln p."""
    return absolute_log_height([1, -tau_p, p ** 11])


def matveev_base_factor(d=2, k_field=2):
    """C with B = 1 and every height 1, the part that does not depend on the linear form."""
    return matveev_bound(MatveevParams(d, k_field, 1, (1,) * d))


def lambda_gap_lower(p, n, c0=constants.matveev_c0):
    """-c0 ln n ln p, the claimed lower bound for ln|Lambda_p(n)|."""
    if n < 2:
        raise InvalidArgument(f'n must be >= 2, got {n}')
    ctx = precision_context(128)
    return -ctx.mpf(c0) * ctx.log(n) * ctx.log(p)


def lambda_gap_matveev(p, n, tau_p=None):
    """-C from Matveev's constant with d = 2, k = 2, B = n + 1 and both heights those of beta_p."""
    if tau_p is None:
        tau_p = prime_coefficient(p)
    height = height_quadratic(p, tau_p)
    return -matveev_bound(MatveevParams(2, 2, n + 1, (height, height)))


# --- audits -----------------------------------------------------------------

def bound_audit(pp, epsilon=constants.epsilon_default, c=constants.murty_saradha_c, table=None):
    ctx = precision_context(256)
    tau_p = prime_coefficient(pp.p, table)
    value = abs(coeff_prime_power(tau_p, pp))
    p, n = pp.p, pp.n
    label = f'tau({p}^{n})'
    log_power = murty_saradha_bound(pp.value, c)
    atkin_serre = atkin_serre_bound(p, n, epsilon)
    reports = [
        BoundReport.evaluate(f'{label} murty-saradha', value, '>=', log_power, report_only=True),
        BoundReport.evaluate(f'{label} log-power below atkin-serre', log_power, '<=', atkin_serre, report_only=True),
        BoundReport.evaluate(f'{label} atkin-serre', value, '>=', atkin_serre, report_only=True),
        BoundReport(f'{label} deligne', value, divisor_deligne_bound(p, n), '<=',
                    deligne_holds_exact(value, p, n), note='divisor-sharp form (n+1)p^(11n/2)'),
        BoundReport.evaluate(f'{label} deligne with epsilon', value, '<=', deligne_bound(p, n, epsilon),
                             report_only=True),
    ]
    if n % 2 == 0:
        in_regime = in_explicit_regime(p, n)
        reports.append(BoundReport.evaluate(
            f'{label} explicit log-power', value, '>=', explicit_lower_bound(p, n),
            report_only=not in_regime, note='in regime' if in_regime else 'outside p^2n >= 10^600'))
    digits = ctx.log10(value) if value else ctx.ninf
    reports.append(BoundReport.evaluate(f'{label} liouville', digits, '>', liouville_coeff_bound(p, n, epsilon),
                                        log_scale=True))
    if tau_p:
        angle = sato_tate_angle(p, tau_p)
        factor = binet_drop_factor(angle)
        reports.append(BoundReport.evaluate(f'{label} binet drop factor', factor, '>=', 1, report_only=True,
                                            note='factor dropped to 1 in the Binet estimate'))
    return reports


def liouville_example(p, epsilon=constants.epsilon_default):
    if p not in constants.liouville_examples:
        raise InvalidArgument(f'no worked example for p={p}; known: {sorted(constants.liouville_examples)}')
    two_n, digits, exponent = constants.liouville_examples[p]
    value = coeff_prime_power(prime_coefficient(p), PrimePower(p, two_n))
    actual_digits = decimal_digits(value)
    bound = liouville_lower_bound(p, two_n, epsilon)
    label = f'tau({p}^{two_n})'
    return [
        BoundReport.evaluate(f'{label} digit count', actual_digits, '==', digits),
        BoundReport.evaluate(f'{label} liouville exponent within {constants.liouville_example_tolerance}',
                             abs(bound - exponent), '<=', constants.liouville_example_tolerance,
                             note=f'computed 10^{float(bound):.2f}, printed 10^{exponent}'),
        BoundReport.evaluate(f'{label} above liouville bound', actual_digits - 1, '>=', bound, log_scale=True),
        BoundReport.evaluate(f'{label} above explicit log-power bound', value, '>=',
                             explicit_lower_bound(p, two_n), report_only=not in_explicit_regime(p, two_n)),
    ]
