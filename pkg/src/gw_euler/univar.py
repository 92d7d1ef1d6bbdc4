"""Dense univariate polynomial arithmetic over an arbitrary field context.

Polynomials are lists of raw coefficients, constant term first.  All
functions take the field context explicitly; nothing here depends on a
particular coefficient representation.
"""


def trim(ctx, f):
    i = len(f)
    while i > 0 and ctx.is_zero(f[i - 1]):
        i -= 1
    return list(f[:i])


def degree(ctx, f):
    f = trim(ctx, f)
    return len(f) - 1  # -1 for the zero polynomial


def is_monic(ctx, f):
    f = trim(ctx, f)
    return bool(f) and ctx.eq(f[-1], ctx.one())


def add(ctx, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else ctx.zero()
        b = g[i] if i < len(g) else ctx.zero()
        out.append(ctx.add(a, b))
    return trim(ctx, out)


def sub(ctx, f, g):
    return add(ctx, f, [ctx.neg(c) for c in g])


def scale(ctx, f, c):
    return trim(ctx, [ctx.mul(c, a) for a in f])


def mul(ctx, f, g):
    f, g = trim(ctx, f), trim(ctx, g)
    if not f or not g:
        return []
    out = [ctx.zero()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if ctx.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
    return trim(ctx, out)


def monic(ctx, f):
    f = trim(ctx, f)
    if not f:
        return f
    lead = f[-1]
    if ctx.eq(lead, ctx.one()):
        return f
    inv = ctx.inv(lead)
    return [ctx.mul(inv, c) for c in f]


def divmod_exact(ctx, f, g):
    """Quotient and remainder of f by nonzero g."""
    f, g = trim(ctx, f), trim(ctx, g)
    if not g:
        raise ZeroDivisionError("univariate division by zero")
    q = [ctx.zero()] * max(0, len(f) - len(g) + 1)
    r = list(f)
    inv_lead = ctx.inv(g[-1])
    while len(r) >= len(g):
        c = ctx.mul(r[-1], inv_lead)
        k = len(r) - len(g)
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] = ctx.sub(r[k + i], ctx.mul(c, b))
        r = trim(ctx, r)
        if not r:
            break
    return trim(ctx, q), r


def gcd(ctx, f, g):
    """Monic gcd."""
    a, b = trim(ctx, f), trim(ctx, g)
    while b:
        _, a = a, divmod_exact(ctx, a, b)[1]
        a, b = b, a
    return monic(ctx, a)


def xgcd(ctx, f, g):
    """(d, u, v) with u*f + v*g = d, d monic."""
    a, b = trim(ctx, f), trim(ctx, g)
    ua, va = [ctx.one()], []
    ub, vb = [], [ctx.one()]
    while b:
        q, r = divmod_exact(ctx, a, b)
        a, b = b, r
        ua, ub = ub, sub(ctx, ua, mul(ctx, q, ub))
        va, vb = vb, sub(ctx, va, mul(ctx, q, vb))
    if not a:
        return [], [], []
    inv = ctx.inv(a[-1])
    return scale(ctx, a, inv), scale(ctx, ua, inv), scale(ctx, va, inv)


def derivative(ctx, f):
    return trim(ctx, [ctx.mul(ctx.from_int(i), f[i]) for i in range(1, len(f))])


def evaluate(ctx, f, x):
    acc = ctx.zero()
    for c in reversed(trim(ctx, f)):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def is_squarefree(ctx, f):
    d = derivative(ctx, f)
    if not d:
        return degree(ctx, f) <= 0
    return degree(ctx, gcd(ctx, f, d)) == 0


def power_mod(ctx, base, e, modulus):
    """base^e reduced modulo a monic modulus."""
    result = [ctx.one()]
    b = divmod_exact(ctx, base, modulus)[1]
    while e > 0:
        if e & 1:
            result = divmod_exact(ctx, mul(ctx, result, b), modulus)[1]
        b = divmod_exact(ctx, mul(ctx, b, b), modulus)[1]
        e >>= 1
    return result
