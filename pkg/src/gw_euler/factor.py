"""Univariate factoring at desk scale.

Rational-root peeling plus the no-root criterion certifies irreducibles
up to degree 3; x^n - 1 and x^n + 1 factor through the built-in
cyclotomic table for n <= 12.  Anything else raises FactorDegreeTooHigh
carrying the offending factor, so the caller can supply its own
factorization.
"""

from fractions import Fraction
from functools import lru_cache

from . import univar
from .errors import FactorDegreeTooHigh
from .fields import QQ, find_root
from .intfactor import divisors

CYCLOTOMIC_LIMIT = 12


@lru_cache(maxsize=None)
def cyclotomic(n: int):
    """Coefficients of the n-th cyclotomic polynomial over Q."""
    if n == 1:
        return (Fraction(-1), Fraction(1))
    xn_minus_1 = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    quotient = list(xn_minus_1)
    for d in divisors(n):
        if d == n:
            continue
        quotient, rem = univar.divmod_exact(QQ, quotient, list(cyclotomic(d)))
        if rem:
            raise AssertionError("cyclotomic division must be exact")
    return tuple(quotient)


def _all_roots(ctx, coeffs):
    roots = []
    if ctx.kind == "Q":
        from .fields import _rational_roots
        roots = _rational_roots(coeffs)
    elif ctx.kind == "Fp":
        roots = [x for x in range(ctx.p)
                 if ctx.is_zero(univar.evaluate(ctx, coeffs, x))]
    else:
        root = find_root(ctx, coeffs)
        roots = [root] if root is not None else []
    return sorted(roots, key=ctx.sort_key)


def _is_x_pow_pm_one(ctx, coeffs):
    """(n, sign) if coeffs = x^n + sign over Q with 2 <= n <= limit."""
    if ctx.kind != "Q":
        return None
    n = len(coeffs) - 1
    if n < 2 or n > CYCLOTOMIC_LIMIT:
        return None
    if coeffs[-1] != 1 or coeffs[0] not in (1, -1):
        return None
    if any(c != 0 for c in coeffs[1:-1]):
        return None
    return n, 1 if coeffs[0] == 1 else -1


def factor_univariate(ctx, coeffs, supplied=None):
    """Monic irreducible factors of a univariate polynomial.

    Returns [(coeffs, multiplicity, certification)] with certification
    in {"irreducible", "caller"}.  supplied, when given, is a list of
    monic factors asserted irreducible by the caller; their product
    (with multiplicity 1 each) must reproduce the input exactly.
    """
    coeffs = univar.monic(ctx, univar.trim(ctx, coeffs))
    if univar.degree(ctx, coeffs) < 1:
        raise ValueError("cannot factor a constant")

    if supplied is not None:
        product = [ctx.one()]
        norm = []
        for f in supplied:
            f = univar.monic(ctx, univar.trim(ctx, list(f)))
            product = univar.mul(ctx, product, f)
            norm.append(tuple(f))
        if product != coeffs:
            raise ValueError("supplied factorization does not multiply back")
        out = []
        for f in norm:
            for i, (g, m, c) in enumerate(out):
                if g == f:
                    out[i] = (g, m + 1, c)
                    break
            else:
                out.append((f, 1, "caller"))
        return out

    special = _is_x_pow_pm_one(ctx, coeffs)
    if special is not None:
        n, sign = special
        if sign == -1:
            ds = divisors(n)
        else:
            ds = [d for d in divisors(2 * n) if n % d != 0]
        return [(cyclotomic(d), 1, "irreducible") for d in sorted(ds)]

    out = []
    rest = list(coeffs)
    for root in _all_roots(ctx, coeffs):
        linear = [ctx.neg(root), ctx.one()]
        mult = 0
        while univar.degree(ctx, rest) >= 1:
            q, r = univar.divmod_exact(ctx, rest, linear)
            if r:
                break
            rest = q
            mult += 1
        if mult:
            out.append((tuple(linear), mult, "irreducible"))
    deg = univar.degree(ctx, rest)
    if deg == 0:
        return out
    if deg <= 3:
        # degree 2 or 3 without a root in the field is irreducible
        out.append((tuple(univar.monic(ctx, rest)), 1, "irreducible"))
        return out
    raise FactorDegreeTooHigh(
        f"irreducible factor of degree {deg} exceeds the built-in range; "
        "supply a factorization", factor=tuple(univar.monic(ctx, rest)))
