"""Integer primality and factoring, sized for certifying field orders.

Everything here is deterministic: Miller-Rabin runs a fixed witness set
(provably sufficient below 3.3e24, extended with derived witnesses above)
and Pollard's rho uses the Brent cycle variant with a fixed parameter
sweep, so repeated runs factor the same number the same way.
"""

from __future__ import annotations

import math

# Witnesses proven sufficient for all n < 3_317_044_064_679_887_385_961_981.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_PROVEN_LIMIT = 3_317_044_064_679_887_385_961_981

_TRIAL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    """Deterministic primality test (strong pseudoprime rounds)."""
    if n < 2:
        return False
    for p in _TRIAL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    witnesses = list(_MR_WITNESSES)
    if n >= _MR_PROVEN_LIMIT:
        # Extra derived witnesses; deterministic in n.
        witnesses += [(37 + k * k + n % (k + 101)) % (n - 3) + 2 for k in range(24)]
    for a in witnesses:
        a %= n
        if a in (0, 1, n - 1):
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Nontrivial factor of an odd composite n (Brent's cycle finding)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 1000):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho parameter sweep exhausted for {n}")


def factorize(n: int) -> list[int]:
    """Prime factorization of n >= 1 as a sorted list with multiplicity."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out: list[int] = []
    for p in _TRIAL_PRIMES:
        while n % p == 0:
            out.append(p)
            n //= p
    p = 53
    while p * p <= n and p < 100_000:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out.append(m)
            continue
        d = _pollard_brent(m)
        stack += [d, m // d]
    out.sort()
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p in sorted(set(factorize(n))):
        e = 0
        m = n
        while m % p == 0:
            m //= p
            e += 1
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def cyclotomic_value(d: int, q: int) -> int:
    """Value of the d-th cyclotomic polynomial at the integer q.

    Computed from the Moebius product over divisors of d; the division is
    exact, so the result is exact for unbounded integers.
    """
    if d < 1 or q < 2:
        raise ValueError("need d >= 1 and q >= 2")
    num, den = 1, 1
    for e in divisors(d):
        mu = _mobius(d // e)
        if mu == 1:
            num *= q**e - 1
        elif mu == -1:
            den *= q**e - 1
    assert num % den == 0
    return num // den


def _mobius(n: int) -> int:
    fac = factorize(n)
    if len(fac) != len(set(fac)):
        return 0
    return -1 if len(fac) % 2 else 1
