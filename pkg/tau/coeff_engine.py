"""
Exact Fourier coefficients of the discriminant form.

Three independent routes to tau(n): the q-expansion q * prod (1 - q^m)^24,
the Hecke recurrence at prime powers and its closed binomial polynomial.
Multiplicativity and the Mordell relation tie them together. No floating
point is used anywhere in this module.
"""
import logging
from dataclasses import dataclass

import gmpy2
from sympy import divisors, pollard_rho, primerange

from tau import constants
from tau.exceptions import FactorizationError, InvalidArgument, TableFormatError
from tau.reports import BoundReport

logger = logging.getLogger(__name__)

TABLE_HEADER = '# tau table weight={weight} limit={limit}'


@dataclass(frozen=True)
class Weight:
    k: int = constants.weight_default

    def __post_init__(self):
        if self.k < 4 or self.k % 2:
            raise InvalidArgument(f'weight must be even and >= 4, got {self.k}')


WEIGHT_12 = Weight(12)


@dataclass(frozen=True)
class PrimePower:
    p: int
    n: int

    def __post_init__(self):
        if self.p < 2 or not gmpy2.is_prime(self.p):
            raise InvalidArgument(f'{self.p} is not prime')
        if self.n < 1:
            raise InvalidArgument(f'exponent must be >= 1, got {self.n}')

    @property
    def value(self):
        return self.p ** self.n


@dataclass(frozen=True)
class CoeffTable:
    """tau(1)..tau(limit); ``entries[0]`` is unused so that ``entries[n] = tau(n)``."""
    limit: int
    entries: tuple
    weight: int = constants.weight_default

    def __post_init__(self):
        if len(self.entries) != self.limit + 1:
            raise InvalidArgument('table length does not match its limit')
        if self.limit >= 1 and self.entries[1] != 1:
            raise InvalidArgument('tau(1) must be 1')

    def __getitem__(self, n):
        if not 1 <= n <= self.limit:
            raise InvalidArgument(f'index {n} outside table 1..{self.limit}')
        return self.entries[n]

    def __len__(self):
        return self.limit

    def covers(self, n):
        return 1 <= n <= self.limit

    def values(self):
        return list(self.entries[1:])


def decimal_string(value):
    """Exact decimal expansion, unaffected by the int-to-str digit guard."""
    return gmpy2.mpz(value).digits(10)


def decimal_digits(value):
    return len(gmpy2.mpz(abs(value)).digits(10))


# --- q-series ---------------------------------------------------------------

def _offset(count, width):
    half = 1 << (8 * width - 1)
    return int.from_bytes(half.to_bytes(width, 'little') * count, 'little')


def _pack(coefficients, width):
    half = 1 << (8 * width - 1)
    raw = b''.join((c + half).to_bytes(width, 'little') for c in coefficients)
    return gmpy2.mpz(int.from_bytes(raw, 'little') - _offset(len(coefficients), width))


def _unpack(value, count, width):
    half = 1 << (8 * width - 1)
    modulus = 1 << (8 * width * count)
    shifted = (int(value) + _offset(count, width)) % modulus
    raw = shifted.to_bytes(width * count, 'little')
    return [int.from_bytes(raw[i * width:(i + 1) * width], 'little') - half for i in range(count)]


def _multiply_truncated(a, b, size):
    """Product of two integer polynomials modulo q^size by Kronecker substitution."""
    a, b = a[:size], b[:size]
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    width = (bound.bit_length() + 2 + 7) // 8
    product = _pack(a, width) * _pack(b, width)
    return _unpack(product, size, width)


def _jacobi_cube(size):
    """prod (1 - q^m)^3 = sum (-1)^j (2j+1) q^(j(j+1)/2), truncated at q^size."""
    series = [0] * size
    j = 0
    while j * (j + 1) // 2 < size:
        series[j * (j + 1) // 2] = (-1) ** j * (2 * j + 1)
        j += 1
    return series


def delta_series(limit):
    """tau(1)..tau(limit) from the eighth power of the Jacobi cube."""
    if limit < 1:
        raise InvalidArgument(f'series limit must be >= 1, got {limit}')
    power = _jacobi_cube(limit)
    for _ in range(3):
        power = _multiply_truncated(power, power, limit)
    logger.debug('expanded delta series to %d terms', limit)
    return CoeffTable(limit, tuple([0] + power))


def delta_series_direct(limit):
    """The literal 24-fold product, for cross-checking small tables."""
    if limit < 1:
        raise InvalidArgument(f'series limit must be >= 1, got {limit}')
    series = [0] * limit
    series[0] = 1
    for m in range(1, limit):
        for _ in range(24):
            for i in range(limit - 1, m - 1, -1):
                series[i] -= series[i - m]
    return CoeffTable(limit, tuple([0] + series))


# --- prime powers -----------------------------------------------------------

def coeff_prime_power(tau_p, pp, weight=WEIGHT_12):
    """lambda(p^n) = lambda(p) lambda(p^(n-1)) - p^(k-1) lambda(p^(n-2))."""
    multiplier = gmpy2.mpz(pp.p) ** (weight.k - 1)
    previous, current = gmpy2.mpz(1), gmpy2.mpz(tau_p)
    for _ in range(pp.n - 1):
        previous, current = current, tau_p * current - multiplier * previous
    return int(current)


def coeff_prime_power_poly(tau_p, pp):
    """sum_j (-1)^j C(n-j, j) p^(11j) tau(p)^(n-2j), weight 12."""
    n = pp.n
    p11 = gmpy2.mpz(pp.p) ** 11
    tau_p = gmpy2.mpz(tau_p)
    binomial = gmpy2.mpz(1)
    total = gmpy2.mpz(0)
    for j in range(n // 2 + 1):
        term = binomial * p11 ** j * tau_p ** (n - 2 * j)
        total += -term if j % 2 else term
        # C(n-j-1, j+1) from C(n-j, j); the division is exact.
        binomial = binomial * (n - 2 * j) * (n - 2 * j - 1) // ((n - j) * (j + 1))
    return int(total)


def prime_coefficient(p, table=None):
    if table is not None and table.covers(p):
        return table[p]
    return delta_series(p)[p]


# --- multiplicativity -------------------------------------------------------

def factorize(m, trial_limit=constants.factor_trial_limit, seed=constants.rho_seed):
    """Prime factorization as {p: e}: trial division, then a seeded rho splitter."""
    if m < 1:
        raise InvalidArgument(f'cannot factor {m}')
    factors = {}
    for p in primerange(2, trial_limit + 1):
        if p * p > m:
            break
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
    if m > 1:
        _split(m, factors, seed)
    return dict(sorted(factors.items()))


def _split(m, factors, seed):
    if gmpy2.is_prime(m):
        factors[m] = factors.get(m, 0) + 1
        return
    root = gmpy2.iroot(m, 2)
    if root[1]:
        for _ in range(2):
            _split(int(root[0]), factors, seed)
        return
    logger.info('splitting cofactor %d with rho', m)
    divisor = pollard_rho(m, seed=seed, retries=constants.rho_retries, max_steps=constants.rho_max_steps)
    if not divisor:
        raise FactorizationError(m)
    _split(int(divisor), factors, seed)
    _split(m // int(divisor), factors, seed)


def coeff_at(m, table=None):
    if m < 1:
        raise InvalidArgument(f'tau is defined for m >= 1, got {m}')
    value = 1
    for p, e in factorize(m).items():
        value *= coeff_prime_power(prime_coefficient(p, table), PrimePower(p, e))
    return value


def mordell_check(m, n, table, weight=WEIGHT_12):
    """lambda(m) lambda(n) against sum over d | gcd(m, n) of d^(k-1) lambda(mn/d^2)."""
    if m < 1 or n < 1:
        raise InvalidArgument('Mordell check needs m, n >= 1')
    if m * n > table.limit:
        raise InvalidArgument(f'table limit {table.limit} is below m*n = {m * n}')
    if table.weight != weight.k:
        raise InvalidArgument(f'table has weight {table.weight}, check asked for {weight.k}')
    lhs = table[m] * table[n]
    g = gmpy2.gcd(m, n)
    rhs = sum(d ** (weight.k - 1) * table[m * n // (d * d)] for d in divisors(int(g)))
    return BoundReport.evaluate(f'mordell m={m} n={n}', lhs, '==', rhs)


# --- table file format ------------------------------------------------------

def write_table(table, stream):
    stream.write(TABLE_HEADER.format(weight=table.weight, limit=table.limit) + '\n')
    for n in range(1, table.limit + 1):
        stream.write(f'{n}\t{decimal_string(table[n])}\n')


def read_table(stream):
    header = stream.readline().strip()
    parts = header.split()
    try:
        if parts[:3] != ['#', 'tau', 'table']:
            raise ValueError
        fields = dict(part.split('=', 1) for part in parts[3:])
        weight, limit = int(fields['weight']), int(fields['limit'])
    except (ValueError, KeyError):
        raise TableFormatError(f'bad table header: {header!r}')
    entries = [0]
    for line_number, line in enumerate(stream, start=2):
        line = line.strip()
        if not line:
            continue
        try:
            index, value = line.split('\t')
            index, value = int(index), int(gmpy2.mpz(value))
        except ValueError:
            raise TableFormatError(f'line {line_number}: expected "n<TAB>tau(n)"')
        if index != len(entries):
            raise TableFormatError(f'line {line_number}: expected index {len(entries)}, got {index}')
        entries.append(value)
    if len(entries) != limit + 1:
        raise TableFormatError(f'header promises {limit} entries, found {len(entries) - 1}')
    if limit >= 1 and entries[1] != 1:
        raise TableFormatError('tau(1) must be 1')
    return CoeffTable(limit, tuple(entries), weight)
