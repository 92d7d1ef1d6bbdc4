"""Integer factorization helpers for square-class canonicalization.

Trial division for small factors, deterministic Miller-Rabin, and Pollard
rho with an iteration budget for the rest.  The budget exists so a huge
semiprime raises FactorBudgetExceeded instead of hanging.
"""

from math import gcd, isqrt

from .errors import FactorBudgetExceeded

_TRIAL_LIMIT = 10 ** 6
_RHO_BUDGET = 2_000_000

# Deterministic witness set for n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


def _pollard_rho(n: int, budget: list) -> int:
    # Brent's cycle variant; budget is a single-element mutable counter.
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        x = y = 2
        d = 1
        while d == 1:
            budget[0] -= 1
            if budget[0] <= 0:
                raise FactorBudgetExceeded(
                    f"factoring budget exhausted while splitting {n}")
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
    raise FactorBudgetExceeded(f"pollard rho failed to split {n}")


def factorize(n: int) -> dict:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    # 2,3,5-wheel trial division.
    increments = (4, 2, 4, 2, 4, 6, 2, 6)
    p, i = 7, 0
    while p * p <= n and p <= _TRIAL_LIMIT:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += increments[i]
        i = (i + 1) % 8
    if n == 1:
        return out
    budget = [_RHO_BUDGET]
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack.extend((r, r))
            continue
        d = _pollard_rho(m, budget)
        stack.extend((d, m // d))
    return out


def squarefree_part(n: int) -> int:
    """Squarefree part of n (sign preserved); n must be nonzero."""
    if n == 0:
        raise ValueError("0 has no squarefree part")
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factorize(abs(n)).items():
        if e % 2:
            out *= p
    return sign * out


def divisors(n: int) -> list:
    """All positive divisors of |n|, ascending."""
    facs = factorize(abs(n))
    out = [1]
    for p, e in facs.items():
        out = [d * p ** k for d in out for k in range(e + 1)]
    return sorted(out)
