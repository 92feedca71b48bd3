weight_default = 12

# tau(251^2), the smallest prime value of the tau function.
lehmer_argument = (251, 2)
lehmer_value = -80561663527802406257321747

# Smallest prime values tau(p^2n): (p, 2n, decimal digits).
table1 = [
    (251, 2, 26),
    (677, 2, 32),
    (971, 2, 33),
    (983, 2, 33),
    (47, 4, 37),
    (197, 4, 50),
]

# Worked examples of the Liouville-style bound, epsilon = 1:
# p -> (2n, digits of |tau(p^2n)|, printed base-10 exponent of the bound).
liouville_examples = {
    157: (2206, 26643, 16275),
    41: (28288, 250924, 151146),
}
liouville_example_tolerance = 2
slow_examples = {41}

# Primes q already known never to be a value of tau.
excluded_small_primes = (3, 5, 7, 691)

# Primes p whose tau(p^2n) can never be an odd prime.
structural_exclusions = {2: 'every tau(2^2n) is even'}

q_bound = 8 * 10 ** 25
case_split_decades = 600
log_power_exponent = 10
printed_case_split_value = '2.5231e31'

matveev_c0 = '6.8e10'
matveev_base = '1.4'
height_floor = '0.16'

murty_saradha_c = '10'
epsilon_default = '1'

# Deterministic below 3.1e23 when used together.
strong_prp_bases = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
proven_prime_limit = 2 ** 64

factor_trial_limit = 10 ** 6
rho_seed = 1234
rho_retries = 8
rho_max_steps = 10 ** 6

angle_min_precision = 64
angle_default_precision = 128
guard_bits = 64
precision_raises = 4

cf_default_precision = 512
cf_max_raises = 6

scan_p_max = 2000
scan_exponent_primes = (3, 5, 7)

full_value_digits = 10_000

# Built-in real numbers for the continued-fraction audits:
# name -> (a, b, d, c, degree, description) for (a + b*sqrt(d)) / c.
sample_surds = {
    'golden': (1, 1, 5, 2, 2, '(1+sqrt(5))/2'),
    'sqrt2': (0, 1, 2, 1, 2, 'sqrt(2)'),
    'sqrt3': (0, 1, 3, 1, 2, 'sqrt(3)'),
    'sqrt5': (0, 1, 5, 1, 2, 'sqrt(5)'),
}
