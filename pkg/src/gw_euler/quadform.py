"""Symmetric Gram matrices: congruence diagonalization and trace-form transfer.

Diagonalization is symmetric Gaussian elimination over the exact field
(pivot = first nonzero diagonal entry; when every remaining diagonal
entry vanishes, the replacement v_i <- v_i + v_j creates one; valid since
the characteristic is not 2).  Eigenvalues are never used: they preserve
the congruence class only up to squares of the basis change.
"""

from .errors import Degenerate
from .fields import EtaleAlgebra, FieldCtx
from .gw import GWClass, SquareClass


class GramForm:
    """A symmetric d x d matrix over a field context."""

    __slots__ = ("ctx", "rows")

    def __init__(self, ctx: FieldCtx, rows):
        rows = tuple(tuple(r) for r in rows)
        d = len(rows)
        for r in rows:
            if len(r) != d:
                raise ValueError("Gram matrix must be square")
        for i in range(d):
            for j in range(i + 1, d):
                if not ctx.eq(rows[i][j], rows[j][i]):
                    raise ValueError("Gram matrix must be exactly symmetric")
        self.ctx = ctx
        self.rows = rows

    @property
    def dimension(self):
        return len(self.rows)

    def to_json(self):
        return [[self.ctx.elem_to_json(v) for v in row] for row in self.rows]

    def entries_equal(self, other_rows):
        if len(other_rows) != self.dimension:
            return False
        return all(self.ctx.eq(self.rows[i][j], other_rows[i][j])
                   for i in range(self.dimension)
                   for j in range(self.dimension))

    def __repr__(self):
        body = "; ".join(
            ", ".join(self.ctx.format(v) for v in row) for row in self.rows)
        return f"GramForm[{body}]"


def diagonalize_with_transform(form: GramForm):
    """(diagonal entries, P) with P^T G P diagonal and P invertible."""
    ctx = form.ctx
    d = form.dimension
    m = [list(row) for row in form.rows]
    p = [[ctx.one() if i == j else ctx.zero() for j in range(d)]
         for i in range(d)]

    def col_op_add(dst, src, c):
        # v_dst <- v_dst + c * v_src  (columns of P; rows+cols of m)
        for r in range(d):
            m[r][dst] = ctx.add(m[r][dst], ctx.mul(c, m[r][src]))
        for r in range(d):
            m[dst][r] = ctx.add(m[dst][r], ctx.mul(c, m[src][r]))
        for r in range(d):
            p[r][dst] = ctx.add(p[r][dst], ctx.mul(c, p[r][src]))

    def col_swap(i, j):
        for r in range(d):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        m[i], m[j] = m[j], m[i]
        for r in range(d):
            p[r][i], p[r][j] = p[r][j], p[r][i]

    for i in range(d):
        if ctx.is_zero(m[i][i]):
            pivot_row = None
            for j in range(i + 1, d):
                if not ctx.is_zero(m[j][j]):
                    pivot_row = j
                    break
            if pivot_row is not None:
                col_swap(i, pivot_row)
            else:
                off = None
                for j in range(i + 1, d):
                    if not ctx.is_zero(m[i][j]):
                        off = j
                        break
                if off is None:
                    raise Degenerate(
                        "form is degenerate (zero row reached during "
                        "congruence diagonalization)")
                col_op_add(i, off, ctx.one())
        pivot = m[i][i]
        for j in range(i + 1, d):
            if not ctx.is_zero(m[i][j]):
                col_op_add(j, i, ctx.neg(ctx.div(m[i][j], pivot)))
    entries = [m[i][i] for i in range(d)]
    if __debug__:
        _assert_congruence(ctx, form.rows, p, entries)
    return entries, p


def _assert_congruence(ctx, rows, p, entries):
    # P^T G P must reproduce the diagonal exactly (implies the det class)
    d = len(entries)
    for i in range(d):
        for j in range(i, d):
            acc = ctx.zero()
            for a in range(d):
                row_a = rows[a]
                pai = p[a][i]
                if ctx.is_zero(pai):
                    continue
                for b in range(d):
                    acc = ctx.add(acc, ctx.mul(pai, ctx.mul(row_a[b], p[b][j])))
            expected = entries[i] if i == j else ctx.zero()
            if not ctx.eq(acc, expected):
                raise AssertionError("congruence bookkeeping failed")


def diagonalize(form: GramForm):
    """Square classes of a congruent diagonal matrix P^T G P."""
    entries, _ = diagonalize_with_transform(form)
    return [SquareClass(form.ctx, e) for e in entries]


def gram_to_class(form: GramForm) -> GWClass:
    return GWClass(form.ctx, 0, diagonalize(form))


def gram_det(form: GramForm):
    """Exact determinant (cofactor-free subset expansion, no divisions)."""
    ctx = form.ctx
    d = form.dimension
    if d == 0:
        return ctx.one()
    minors = {frozenset(): ctx.one()}
    for i in range(d):
        nxt = {}
        for cols, val in minors.items():
            for c in range(d):
                if c in cols:
                    continue
                sign_flips = sum(1 for x in cols if x > c)
                term = ctx.mul(val, form.rows[i][c])
                if sign_flips % 2:
                    term = ctx.neg(term)
                key = cols | {c}
                nxt[key] = ctx.add(nxt.get(key, ctx.zero()), term)
        minors = nxt
    return minors[frozenset(range(d))]


def trace_form(algebra: EtaleAlgebra, a) -> GramForm:
    """Gram matrix of (x, y) -> Tr(a x y) on the power basis of the algebra."""
    if algebra.is_zero(a):
        raise Degenerate("trace form of 0 is degenerate")
    base = algebra.base
    d = algebra.degree
    # Tr(a * t^k) for k = 0 .. 2d-2
    traces = []
    power = algebra.one()
    gen = algebra.gen()
    for k in range(2 * d - 1):
        traces.append(algebra.trace(algebra.mul(a, power)))
        power = algebra.mul(power, gen)
    rows = [[traces[i + j] for j in range(d)] for i in range(d)]
    return GramForm(base, rows)


def scharlau_transfer(algebra: EtaleAlgebra, c: GWClass) -> GWClass:
    """Push a class over the algebra down to the base along the trace.

    Hyperbolic planes transfer to [A:k] hyperbolic planes; each rank-1
    generator transfers to the class of its trace form.
    """
    if c.ctx != algebra:
        raise ValueError("class does not live over the given algebra")
    out = GWClass.hyperbolic(algebra.base, c.hyperbolic_count * algebra.degree)
    for r in c.residual:
        out = out + gram_to_class(trace_form(algebra, r.rep))
    return out
