"""The Scheja-Storch pairing on a finite complete intersection.

Given a square system g_1..g_r with isolated zeros, the divided
differences a_ij satisfy sum_i a_ij (X_i - Y_i) = g_j(X) - g_j(Y); the
image Delta of det(a_ij) in A (x) A determines a functional eta ("the
image of 1") and the bilinear form beta(x, y) = eta(xy) whose class is
the global degree / Euler number of the system.

Delta is computed by reducing each a_ij into (A (x) A)-coordinates and
expanding the determinant inside that finite-dimensional algebra; this
equals the reduce-after-det route because reduction is a ring map.
"""

from dataclasses import dataclass

from .errors import Degenerate
from .gw import GWClass, gw_invariants
from .linalg import solve_linear
from .polys import MultiPoly, QuotientAlgebra
from .quadform import GramForm, gram_to_class


@dataclass
class DividedDifferenceMatrix:
    """entries[i][j] = divided difference of g_j in variable i.

    Polynomials live in the doubled ring k[X_1..X_r, Y_1..Y_r] where the
    X-copy keeps the original names and the Y-copy appends a prime.
    """

    entries: list
    xvars: tuple
    yvars: tuple
    system: list


def _doubled(system):
    variables = system[0].variables
    xvars = variables
    yvars = tuple(v + "'" for v in variables)
    return xvars + yvars


def divided_differences(system, substitution_order=None) -> DividedDifferenceMatrix:
    """Sequential-substitution divided differences of a square system.

    substitution_order permutes the telescoping sequence (used by the
    presentation-independence checks); the identity order realizes
    a_ij = [g_j(Y_1..Y_{i-1}, X_i..X_r) - g_j(Y_1..Y_i, X_{i+1}..X_r)]
          / (X_i - Y_i).
    """
    r = len(system)
    variables = system[0].variables
    if len(variables) != r:
        raise ValueError("system must be square (r polynomials in r variables)")
    if any("'" in v for v in variables):
        raise ValueError("variable names must not contain a prime")
    ctx = system[0].ctx
    doubled = _doubled(system)
    if substitution_order is None:
        substitution_order = list(range(r))
    stage = {v: s for s, v in enumerate(substitution_order)}

    entries = [[None] * r for _ in range(r)]
    for j, g in enumerate(system):
        for i in range(r):
            s_i = stage[i]
            terms = {}
            for exps, c in g.terms.items():
                k = exps[i]
                if k == 0:
                    continue
                base = [0] * (2 * r)
                for l in range(r):
                    if l == i:
                        continue
                    if stage[l] < s_i:
                        base[r + l] = exps[l]  # already substituted: Y copy
                    else:
                        base[l] = exps[l]      # not yet substituted: X copy
                for u in range(k):  # (X^k - Y^k)/(X - Y) = sum X^u Y^(k-1-u)
                    e = list(base)
                    e[i] = u
                    e[r + i] = k - 1 - u
                    e = tuple(e)
                    terms[e] = ctx.add(terms.get(e, ctx.zero()), c)
            entries[i][j] = MultiPoly(ctx, doubled, terms)
    dd = DividedDifferenceMatrix(entries, doubled[:r], doubled[r:], list(system))
    _assert_telescoping(dd)
    return dd


def _assert_telescoping(dd):
    ctx = dd.system[0].ctx
    r = len(dd.system)
    doubled = dd.xvars + dd.yvars
    for j, g in enumerate(dd.system):
        gx = g.with_variables(doubled)
        gy = MultiPoly(ctx, doubled,
                       {tuple([0] * r + list(e)): c for e, c in g.terms.items()})
        total = MultiPoly.zero(ctx, doubled)
        for i in range(r):
            xi = MultiPoly.var(ctx, doubled, doubled[i])
            yi = MultiPoly.var(ctx, doubled, doubled[r + i])
            total = total + dd.entries[i][j] * (xi - yi)
        if total != gx - gy:
            raise AssertionError(
                "divided differences do not telescope exactly (internal error)")


def _tensor_reduce(algebra, poly, r):
    """Coordinates of a doubled-ring polynomial in A (x) A."""
    ctx = algebra.ctx
    out = {}
    for exps, c in poly.terms.items():
        xcoords = algebra.monomial_coords(tuple(exps[:r]))
        ycoords = algebra.monomial_coords(tuple(exps[r:]))
        for m, xm in enumerate(xcoords):
            if ctx.is_zero(xm):
                continue
            cm = ctx.mul(c, xm)
            for n, yn in enumerate(ycoords):
                if ctx.is_zero(yn):
                    continue
                key = (m, n)
                s = ctx.add(out.get(key, ctx.zero()), ctx.mul(cm, yn))
                if ctx.is_zero(s):
                    out.pop(key, None)
                else:
                    out[key] = s
    return out


def _tensor_mul(algebra, t1, t2):
    ctx = algebra.ctx
    out = {}
    for (m1, n1), c1 in t1.items():
        for (m2, n2), c2 in t2.items():
            c = ctx.mul(c1, c2)
            sx = algebra.struct(m1, m2)
            sy = algebra.struct(n1, n2)
            for k, xk in enumerate(sx):
                if ctx.is_zero(xk):
                    continue
                ck = ctx.mul(c, xk)
                for l, yl in enumerate(sy):
                    if ctx.is_zero(yl):
                        continue
                    key = (k, l)
                    s = ctx.add(out.get(key, ctx.zero()), ctx.mul(ck, yl))
                    if ctx.is_zero(s):
                        out.pop(key, None)
                    else:
                        out[key] = s
    return out


def _tensor_det(algebra, entries_tensor, r):
    """Determinant of an r x r matrix with entries in A (x) A."""
    ctx = algebra.ctx
    minors = {frozenset(): {(0, 0): ctx.one()}}
    # (0, 0) is the coordinate pair of 1 (x) 1 only when basis[0] = 1;
    # asserted by the caller.
    for i in range(r):
        nxt = {}
        for cols, val in minors.items():
            if not val:
                continue
            for c in range(r):
                if c in cols:
                    continue
                term = _tensor_mul(algebra, val, entries_tensor[i][c])
                if not term:
                    continue
                if sum(1 for x in cols if x > c) % 2:
                    term = {k: ctx.neg(v) for k, v in term.items()}
                key = cols | {c}
                acc = nxt.setdefault(key, {})
                for k, v in term.items():
                    s = ctx.add(acc.get(k, ctx.zero()), v)
                    if ctx.is_zero(s):
                        acc.pop(k, None)
                    else:
                        acc[k] = s
        minors = nxt
    return minors.get(frozenset(range(r)), {})


@dataclass
class SSResult:
    algebra: QuotientAlgebra
    divided: DividedDifferenceMatrix
    delta: dict
    eta: list
    gram: GramForm
    gw_class: GWClass

    def report(self):
        inv = None
        if self.algebra.ctx.kind in ("Q", "Fp"):
            inv = gw_invariants(self.gw_class).to_json()
        return {"dim": self.algebra.dim,
                "gram": self.gram.to_json() if self.gram is not None else [],
                "class": self.gw_class.render(),
                "invariants": inv}


def ss_form(system, order="degrevlex", budget=None, algebra=None,
            substitution_order=None) -> SSResult:
    """Full Scheja-Storch data of a square system with isolated zeros."""
    system = list(system)
    ctx = system[0].ctx
    if algebra is None:
        algebra = QuotientAlgebra(system, order=order, budget=budget)
    r = len(system)
    if algebra.dim == 0:
        return SSResult(algebra, None, {}, [],
                        GramForm(ctx, []), GWClass.zero(ctx))
    if any(k != 0 for k in algebra.basis[0]):
        raise AssertionError("staircase basis must start with the constant 1")
    dd = divided_differences(system, substitution_order)
    tensor_entries = [[_tensor_reduce(algebra, dd.entries[i][j], r)
                       for j in range(r)] for i in range(r)]
    delta = _tensor_det(algebra, tensor_entries, r)
    d = algebra.dim
    # eta solves sum_m eta_m * Delta[m][n] = coords(1)[n]
    rows = [[delta.get((m, n), ctx.zero()) for m in range(d)] for n in range(d)]
    rhs = [ctx.one() if n == 0 else ctx.zero() for n in range(d)]
    eta = solve_linear(ctx, rows, rhs)
    if eta is None:
        raise Degenerate(
            "Scheja-Storch pairing is singular: the input is not a finite "
            "complete intersection presentation")
    gram_rows = []
    for i in range(d):
        row = []
        for j in range(d):
            sij = algebra.struct(i, j)
            acc = ctx.zero()
            for k, v in enumerate(sij):
                if not ctx.is_zero(v):
                    acc = ctx.add(acc, ctx.mul(v, eta[k]))
            row.append(acc)
        gram_rows.append(row)
    gram = GramForm(ctx, gram_rows)  # constructor asserts exact symmetry
    gw_class = gram_to_class(gram)   # diagonalization asserts nondegeneracy
    return SSResult(algebra, dd, delta, eta, gram, gw_class)


def ss_class(system, order="degrevlex", budget=None) -> GWClass:
    """The global degree / Euler number of the system as a GW class."""
    return ss_form(system, order=order, budget=budget).gw_class
