"""Brute-force reference implementations shared by the tests.

Nothing here touches the package; every answer comes from trial division or
plain enumeration so it can serve as an independent oracle.
"""


def factor_pairs(n):
    out, p = [], 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def big_omega(n):
    return sum(e for _, e in factor_pairs(n))


def is_prime(n):
    return n >= 2 and factor_pairs(n) == [(n, 1)]


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def partitions(n, largest=None):
    """Partitions of n as non-increasing tuples, largest first part first."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest
