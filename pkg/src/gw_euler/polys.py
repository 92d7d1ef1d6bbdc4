"""Sparse multivariate polynomials, Buchberger, and finite quotient algebras.

Polynomials are dicts from exponent tuples to nonzero raw coefficients of
a FieldCtx.  Monomial orders: degrevlex (default) and lex, as key
functions on exponent tuples.  The Buchberger loop strips rational
content after every reduction and counts elementary reduction steps
against a budget (env GW_EULER_BUDGET) so runaway inputs raise
BudgetExceeded instead of hanging.
"""

import heapq
import os
import re
from fractions import Fraction
from itertools import product

from .errors import BudgetExceeded, NonIsolatedZeros

DEFAULT_BUDGET = 5_000_000


def order_key(order):
    if order == "lex":
        return lambda exps: exps
    if order == "degrevlex":
        return lambda exps: (sum(exps), tuple(-e for e in reversed(exps)))
    raise ValueError(f"unknown monomial order {order!r}")


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _sub_exps(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add_exps(a, b):
    return tuple(x + y for x, y in zip(a, b))


class MultiPoly:
    __slots__ = ("ctx", "variables", "terms")

    def __init__(self, ctx, variables, terms=None, _clean=False):
        self.ctx = ctx
        self.variables = tuple(variables)
        if terms is None:
            terms = {}
        if not _clean:
            terms = {e: c for e, c in terms.items() if not ctx.is_zero(c)}
        self.terms = terms

    @classmethod
    def zero(cls, ctx, variables):
        return cls(ctx, variables, {}, _clean=True)

    @classmethod
    def const(cls, ctx, variables, c):
        z = (0,) * len(variables)
        return cls(ctx, variables, {z: c})

    @classmethod
    def var(cls, ctx, variables, name, exp=1):
        i = tuple(variables).index(name)
        e = tuple(exp if j == i else 0 for j in range(len(variables)))
        return cls(ctx, variables, {e: ctx.one()}, _clean=True)

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def __add__(self, other):
        ctx = self.ctx
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = ctx.add(out.get(e, ctx.zero()), c)
            if ctx.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(ctx, self.variables, out, _clean=True)

    def __sub__(self, other):
        ctx = self.ctx
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = ctx.sub(out.get(e, ctx.zero()), c)
            if ctx.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(ctx, self.variables, out, _clean=True)

    def __neg__(self):
        ctx = self.ctx
        return MultiPoly(ctx, self.variables,
                         {e: ctx.neg(c) for e, c in self.terms.items()},
                         _clean=True)

    def __mul__(self, other):
        ctx = self.ctx
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exps(e1, e2)
                s = ctx.add(out.get(e, ctx.zero()), ctx.mul(c1, c2))
                if ctx.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(ctx, self.variables, out, _clean=True)

    def scale(self, c):
        ctx = self.ctx
        if ctx.is_zero(c):
            return MultiPoly.zero(ctx, self.variables)
        return MultiPoly(ctx, self.variables,
                         {e: ctx.mul(c, v) for e, v in self.terms.items()},
                         _clean=True)

    def mul_term(self, exps, c):
        ctx = self.ctx
        return MultiPoly(ctx, self.variables,
                         {_add_exps(e, exps): ctx.mul(c, v)
                          for e, v in self.terms.items()}, _clean=True)

    def leading(self, key):
        if not self.terms:
            return None
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def derivative(self, var_index):
        ctx = self.ctx
        out = {}
        for e, c in self.terms.items():
            k = e[var_index]
            if k == 0:
                continue
            ne = tuple(x - 1 if i == var_index else x for i, x in enumerate(e))
            out[ne] = ctx.add(out.get(ne, ctx.zero()),
                              ctx.mul(ctx.from_int(k), c))
        return MultiPoly(ctx, self.variables, out)

    def evaluate(self, values):
        """Value at a point with coordinates in the coefficient field."""
        return self.eval_in(self.ctx, values, embed=lambda c: c)

    def eval_in(self, target, values, embed=None):
        """Value at a point with coordinates in a target algebra.

        embed maps coefficients into the target (defaults to
        target.embed for an extension of this polynomial's field).
        """
        if embed is None:
            if target is self.ctx:
                embed = lambda c: c
            else:
                embed = target.embed
        maxes = [0] * len(self.variables)
        for e in self.terms:
            for i, k in enumerate(e):
                maxes[i] = max(maxes[i], k)
        powers = []
        for i, v in enumerate(values):
            row = [target.one()]
            for _ in range(maxes[i]):
                row.append(target.mul(row[-1], v))
            powers.append(row)
        acc = target.zero()
        for e, c in self.terms.items():
            term = embed(c)
            for i, k in enumerate(e):
                if k:
                    term = target.mul(term, powers[i][k])
            acc = target.add(acc, term)
        return acc

    def with_variables(self, new_variables):
        """Reinterpret over a superset/reordering of the variables."""
        new_variables = tuple(new_variables)
        idx = []
        for name in self.variables:
            idx.append(new_variables.index(name))
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_variables)
            for i, k in enumerate(e):
                ne[idx[i]] = k
            out[tuple(ne)] = c
        return MultiPoly(self.ctx, new_variables, out, _clean=True)

    def used_variables(self):
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.variables[i])
        return used

    def univariate_in(self, var_index):
        """Dense coefficient list if supported on a single variable."""
        coeffs = []
        for e, c in self.terms.items():
            for i, k in enumerate(e):
                if k and i != var_index:
                    return None
            d = e[var_index]
            while len(coeffs) <= d:
                coeffs.append(self.ctx.zero())
            coeffs[d] = c
        return coeffs

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.variables != other.variables or self.ctx != other.ctx:
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(self.ctx.eq(c, other.terms[e])
                   for e, c in self.terms.items())

    def __hash__(self):
        key = order_key("degrevlex")
        items = tuple(sorted(self.terms, key=key))
        return hash((self.variables, items))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r})"


def format_poly(poly, order="degrevlex"):
    if not poly.terms:
        return "0"
    ctx = poly.ctx
    key = order_key(order)
    parts = []
    for e in sorted(poly.terms, key=key, reverse=True):
        c = poly.terms[e]
        mono = "*".join(
            name if k == 1 else f"{name}^{k}"
            for name, k in zip(poly.variables, e) if k)
        cs = ctx.format(c)
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        elif cs == "-1":
            parts.append(f"-{mono}")
        else:
            parts.append(f"{cs}*{mono}")
    text = parts[0]
    for part in parts[1:]:
        text += " - " + part[1:] if part.startswith("-") else " + " + part
    return text


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
                    r"|(?P<op>[-+*^()]))")


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot tokenize polynomial at {text[pos:]!r}")
        pos = m.end()
        if m.group("num") is not None:
            out.append(("num", m.group("num")))
        elif m.group("name") is not None:
            out.append(("name", m.group("name")))
        else:
            out.append(("op", m.group("op")))
    return out


def natural_key(name):
    m = re.fullmatch(r"([A-Za-z_]+)(\d*)", name)
    if not m:
        return (name, -1)
    prefix, digits = m.groups()
    return (prefix, int(digits) if digits else -1)


def poly_variable_names(text):
    return sorted({tok for kind, tok in _tokenize(text) if kind == "name"},
                  key=natural_key)


def parse_poly(text, ctx, variables=None):
    """Parse sparse human-readable text like "3*x1^2*y - 1/2"."""
    toks = _tokenize(text)
    if variables is None:
        variables = sorted({t for k, t in toks if k == "name"}, key=natural_key)
    variables = tuple(variables)
    nvars = len(variables)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def factor():
        nonlocal pos
        kind, tok = peek()
        if kind == "op" and tok == "(":
            pos += 1
            p = expr()
            kind, tok = peek()
            if kind != "op" or tok != ")":
                raise ValueError("unbalanced parenthesis")
            pos += 1
            base = p
        elif kind == "num":
            pos += 1
            base = MultiPoly.const(ctx, variables, ctx.parse(tok))
        elif kind == "name":
            pos += 1
            if tok not in variables:
                raise ValueError(f"unknown variable {tok!r}")
            base = MultiPoly.var(ctx, variables, tok)
        else:
            raise ValueError(f"expected factor near token {tok!r}")
        kind, tok = peek()
        if kind == "op" and tok == "^":
            pos += 1
            kind, tok = peek()
            if kind != "num" or "/" in tok:
                raise ValueError("exponent must be a nonnegative integer")
            pos += 1
            e = int(tok)
            out = MultiPoly.const(ctx, variables, ctx.one())
            for _ in range(e):
                out = out * base
            base = out
        return base

    def term():
        nonlocal pos
        p = factor()
        while True:
            kind, tok = peek()
            if kind == "op" and tok == "*":
                pos += 1
                p = p * factor()
            else:
                return p

    def expr():
        nonlocal pos
        kind, tok = peek()
        negate = False
        if kind == "op" and tok in "+-":
            negate = tok == "-"
            pos += 1
        p = term()
        if negate:
            p = -p
        while True:
            kind, tok = peek()
            if kind == "op" and tok in "+-":
                pos += 1
                q = term()
                p = p - q if tok == "-" else p + q
            elif kind is None:
                return p
            elif kind == "op" and tok == ")":
                return p
            else:
                raise ValueError(f"unexpected token {tok!r}")

    out = expr()
    if pos != len(toks):
        raise ValueError("trailing input in polynomial")
    assert len(out.variables) == nvars
    return out


def parse_system(text, ctx, variables=None):
    """Parse a ';'-separated system over shared, naturally sorted variables."""
    chunks = [c for c in text.split(";") if c.strip()]
    if variables is None:
        names = set()
        for c in chunks:
            names.update(poly_variable_names(c))
        variables = sorted(names, key=natural_key)
    return [parse_poly(c, ctx, variables) for c in chunks]


def poly_to_json(poly):
    return {"vars": list(poly.variables),
            "terms": [{"exps": list(e), "coeff": poly.ctx.elem_to_json(c)}
                      for e, c in sorted(poly.terms.items())]}


def poly_from_json(obj, ctx):
    variables = tuple(obj["vars"])
    terms = {tuple(t["exps"]): ctx.elem_from_json(t["coeff"])
             for t in obj["terms"]}
    return MultiPoly(ctx, variables, terms)


class _Budget:
    __slots__ = ("left",)

    def __init__(self, steps=None):
        if steps is None:
            steps = int(os.environ.get("GW_EULER_BUDGET", DEFAULT_BUDGET))
        self.left = steps

    def spend(self, n=1):
        self.left -= n
        if self.left < 0:
            raise BudgetExceeded("Buchberger step budget exhausted")


def _strip_content(poly):
    """Primitive integer representative over Q, positive leading sign."""
    if poly.ctx.kind != "Q" or not poly.terms:
        return poly
    num_gcd = 0
    den_lcm = 1
    for c in poly.terms.values():
        num_gcd = _gcd_int(num_gcd, abs(c.numerator))
        den_lcm = den_lcm * c.denominator // _gcd_int(den_lcm, c.denominator)
    factor = Fraction(den_lcm, num_gcd)
    key = order_key("degrevlex")
    lead = poly.terms[max(poly.terms, key=key)]
    if lead < 0:
        factor = -factor
    return poly.scale(factor)


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def normal_form(f, basis, order="degrevlex", budget=None):
    """Full normal form of f modulo a list of polynomials."""
    key = order_key(order)
    budget = budget or _Budget()
    ctx = f.ctx
    red = []
    for g in basis:
        lt = g.leading(key)
        if lt is None:
            continue
        red.append((lt[0], ctx.inv(lt[1]), g))
    work = dict(f.terms)
    result = {}
    heap = [tuple(-x for x in _flatkey(key(e))) + (e,) for e in work]
    heapq.heapify(heap)
    while heap:
        entry = heapq.heappop(heap)
        exps = entry[-1]
        if exps not in work:
            continue
        coeff = work[exps]
        for lt, lc_inv, g in red:
            if _divides(lt, exps):
                budget.spend()
                shift = _sub_exps(exps, lt)
                factor = ctx.mul(coeff, lc_inv)
                del work[exps]
                for ge, gc in g.terms.items():
                    te = _add_exps(ge, shift)
                    if te == exps:
                        continue
                    s = ctx.sub(work.get(te, ctx.zero()), ctx.mul(factor, gc))
                    if ctx.is_zero(s):
                        work.pop(te, None)
                    else:
                        work[te] = s
                        heapq.heappush(
                            heap,
                            tuple(-x for x in _flatkey(key(te))) + (te,))
                break
        else:
            result[exps] = work.pop(exps)
    return MultiPoly(ctx, f.variables, result, _clean=True)


def _flatkey(k):
    # order keys are either exps tuples (lex) or (deg, tuple) (degrevlex)
    if isinstance(k[-1], tuple):
        return (k[0],) + k[-1]
    return k


def s_polynomial(f, g, key):
    ctx = f.ctx
    ef, cf = f.leading(key)
    eg, cg = g.leading(key)
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    left = f.mul_term(_sub_exps(lcm, ef), ctx.inv(cf))
    right = g.mul_term(_sub_exps(lcm, eg), ctx.inv(cg))
    return left - right


def groebner(gens, order="degrevlex", budget=None):
    """Reduced Groebner basis via Buchberger with the product criterion.

    Deterministic for a fixed order: monic elements sorted ascending by
    leading monomial.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("empty generator list")
    ctx = gens[0].ctx
    variables = gens[0].variables
    for g in gens:
        if g.variables != variables or g.ctx != ctx:
            raise ValueError("generators must share one ring")
    key = order_key(order)
    budget = budget or _Budget()

    basis = []
    for g in gens:
        g = _strip_content(g)
        if not g.is_zero() and g not in basis:
            basis.append(g)
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]

    def lcm_key(pair):
        i, j = pair
        ei, _ = basis[i].leading(key)
        ej, _ = basis[j].leading(key)
        lcm = tuple(max(a, b) for a, b in zip(ei, ej))
        return (_flatkey(key(lcm)), i, j)

    while pairs:
        pairs.sort(key=lcm_key)
        i, j = pairs.pop(0)
        ei, _ = basis[i].leading(key)
        ej, _ = basis[j].leading(key)
        if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue  # product criterion
        h = normal_form(s_polynomial(basis[i], basis[j], key), basis,
                        order, budget)
        h = _strip_content(h)
        if h.is_zero():
            continue
        basis.append(h)
        k = len(basis) - 1
        pairs.extend((m, k) for m in range(k))

    return _interreduce(basis, order, budget)


def _interreduce(basis, order, budget):
    key = order_key(order)
    # drop elements whose leading term another leading term divides
    lts = [g.leading(key)[0] for g in basis]
    keep = []
    for i, g in enumerate(basis):
        if any(j != i and _divides(lts[j], lts[i])
               and (lts[j] != lts[i] or j < i) for j in range(len(basis))):
            continue
        keep.append(g)
    # fully reduce each element against the others, iterate to stability
    changed = True
    while changed:
        changed = False
        for i in range(len(keep)):
            others = keep[:i] + keep[i + 1:]
            r = normal_form(keep[i], others, order, budget) if others else keep[i]
            r = _strip_content(r)
            if r != keep[i]:
                keep[i] = r
                changed = True
        keep = [g for g in keep if not g.is_zero()]
    ctx = keep[0].ctx
    monic = []
    for g in keep:
        _, lc = g.leading(key)
        monic.append(g.scale(ctx.inv(lc)))
    monic.sort(key=lambda g: _flatkey(key(g.leading(key)[0])))
    return monic


class QuotientAlgebra:
    """k[x1..xr]/(g1..gr) with staircase basis and cached products."""

    def __init__(self, generators, order="degrevlex", budget=None, gb=None):
        generators = list(generators)
        if not generators:
            raise ValueError("empty generator list")
        self.ctx = generators[0].ctx
        self.variables = generators[0].variables
        self.generators = generators
        self.order = order
        self._budget = budget or _Budget()
        self.groebner = gb if gb is not None else groebner(
            generators, order, self._budget)
        self._key = order_key(order)
        self.basis = self._staircase()
        self.dim = len(self.basis)
        self._basis_index = {e: i for i, e in enumerate(self.basis)}
        self._mono_cache = {}
        self._struct_cache = {}

    def _staircase(self):
        key = self._key
        lts = [g.leading(key)[0] for g in self.groebner]
        nvars = len(self.variables)
        if any(all(k == 0 for k in lt) for lt in lts):
            return []  # unit ideal: empty fiber
        bounds = []
        for i in range(nvars):
            pure = [lt[i] for lt in lts
                    if lt[i] > 0 and all(lt[j] == 0 for j in range(nvars) if j != i)]
            if not pure:
                raise NonIsolatedZeros(
                    f"no pure power of {self.variables[i]} among leading terms; "
                    "the zero scheme is not finite")
            bounds.append(min(pure))
        stairs = [e for e in product(*(range(b) for b in bounds))
                  if not any(_divides(lt, e) for lt in lts)]
        stairs.sort(key=lambda e: _flatkey(self._key(e)))
        return stairs

    def normal_form(self, f):
        return normal_form(f, self.groebner, self.order, self._budget)

    def coords(self, f):
        nf = self.normal_form(f)
        ctx = self.ctx
        out = [ctx.zero()] * self.dim
        for e, c in nf.terms.items():
            out[self._basis_index[e]] = c
        return out

    def monomial_coords(self, exps):
        cached = self._mono_cache.get(exps)
        if cached is None:
            if exps in self._basis_index:
                coeffs = [self.ctx.zero()] * self.dim
                coeffs[self._basis_index[exps]] = self.ctx.one()
                cached = coeffs
            else:
                cached = self.coords(MultiPoly(
                    self.ctx, self.variables, {exps: self.ctx.one()},
                    _clean=True))
            self._mono_cache[exps] = cached
        return cached

    def struct(self, i, j):
        """Coordinates of basis[i] * basis[j]."""
        if j < i:
            i, j = j, i
        cached = self._struct_cache.get((i, j))
        if cached is None:
            cached = self.monomial_coords(_add_exps(self.basis[i], self.basis[j]))
            self._struct_cache[(i, j)] = cached
        return cached

    def mult_matrix(self, f):
        """Matrix of multiplication by f on the staircase basis (rows)."""
        ctx = self.ctx
        cols = []
        for e in self.basis:
            cols.append(self.coords(f.mul_term(e, ctx.one())))
        return [[cols[j][i] for j in range(self.dim)]
                for i in range(self.dim)]


def quotient_basis(generators, order="degrevlex", budget=None):
    """Quotient algebra with staircase basis; NonIsolatedZeros when infinite."""
    return QuotientAlgebra(generators, order=order, budget=budget)


def mult_matrix(f, algebra):
    return algebra.mult_matrix(f)


def jacobian(system):
    """Matrix of partial derivatives d g_i / d x_j."""
    return [[g.derivative(j) for j in range(len(g.variables))]
            for g in system]
