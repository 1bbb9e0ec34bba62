"""Small exact integer helpers used across the package."""

from math import gcd


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def vp_int(x, p):
    """p-adic valuation of a nonzero integer; raises on x == 0."""
    if x == 0:
        raise ValueError("valuation of zero")
    if x % p:
        return 0
    # strip doubling powers so deep valuations cost O(log v) divisions
    v = 0
    while x % p == 0:
        q, k = p, 1
        while x % (q * q) == 0:
            q *= q
            k += k
        x //= q
        v += k
    return v


def invmod(a, m):
    """Inverse of a mod m; ValueError if not a unit."""
    a %= m
    if gcd(a, m) != 1:
        raise ValueError(f"{a} not invertible mod {m}")
    return pow(a, -1, m)


def solve_linear_congruence(a, b, m):
    """Solutions x of a*x = b (mod m) as (x0, step) or None.

    The solution set, when nonempty, is x0 + step*Z taken mod m.
    """
    a %= m
    b %= m
    g = gcd(a, m)
    if b % g != 0:
        return None
    m1 = m // g
    x0 = (b // g) * invmod(a // g, m1) % m1
    return x0, m1
