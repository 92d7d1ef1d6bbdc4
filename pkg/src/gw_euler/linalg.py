"""Exact dense linear algebra over a field context (desk-scale sizes)."""


def exact_det(ctx, rows):
    """Determinant by division-free subset expansion (works over algebras)."""
    d = len(rows)
    if d == 0:
        return ctx.one()
    minors = {frozenset(): ctx.one()}
    for i in range(d):
        nxt = {}
        for cols, val in minors.items():
            if ctx.is_zero(val):
                continue
            for c in range(d):
                if c in cols:
                    continue
                term = ctx.mul(val, rows[i][c])
                if ctx.is_zero(term):
                    continue
                if sum(1 for x in cols if x > c) % 2:
                    term = ctx.neg(term)
                key = cols | {c}
                nxt[key] = ctx.add(nxt.get(key, ctx.zero()), term)
        minors = nxt
    return minors.get(frozenset(range(d)), ctx.zero())


def solve_linear(ctx, rows, rhs):
    """Solve M x = rhs over a field; None when M is singular."""
    d = len(rows)
    m = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    for col in range(d):
        pivot = None
        for r in range(col, d):
            if not ctx.is_zero(m[r][col]):
                pivot = r
                break
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        inv = ctx.inv(m[col][col])
        m[col] = [ctx.mul(inv, v) for v in m[col]]
        for r in range(d):
            if r == col or ctx.is_zero(m[r][col]):
                continue
            factor = m[r][col]
            m[r] = [ctx.sub(v, ctx.mul(factor, w))
                    for v, w in zip(m[r], m[col])]
    return [m[i][d] for i in range(d)]


def mat_mul(ctx, a, b):
    n, k = len(a), len(b)
    cols = len(b[0]) if b else 0
    out = [[ctx.zero()] * cols for _ in range(n)]
    for i in range(n):
        for t in range(k):
            c = a[i][t]
            if ctx.is_zero(c):
                continue
            for j in range(cols):
                out[i][j] = ctx.add(out[i][j], ctx.mul(c, b[t][j]))
    return out


def mat_rank(ctx, rows):
    if not rows:
        return 0
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if not ctx.is_zero(m[r][col]):
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = ctx.inv(m[rank][col])
        m[rank] = [ctx.mul(inv, v) for v in m[rank]]
        for r in range(nrows):
            if r != rank and not ctx.is_zero(m[r][col]):
                factor = m[r][col]
                m[r] = [ctx.sub(v, ctx.mul(factor, w))
                        for v, w in zip(m[r], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def nullspace(ctx, rows):
    """Basis of the right kernel of a matrix over a field."""
    if not rows:
        return []
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if not ctx.is_zero(m[r][col]):
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = ctx.inv(m[rank][col])
        m[rank] = [ctx.mul(inv, v) for v in m[rank]]
        for r in range(nrows):
            if r != rank and not ctx.is_zero(m[r][col]):
                factor = m[r][col]
                m[r] = [ctx.sub(v, ctx.mul(factor, w))
                        for v, w in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [ctx.zero()] * ncols
        vec[f] = ctx.one()
        for r, pc in enumerate(pivots):
            vec[pc] = ctx.neg(m[r][f])
        basis.append(vec)
    return basis
