"""Shared exact oracles and seeded property suites.

The signature oracle goes through the characteristic polynomial and
Descartes' rule (exact with multiplicity since symmetric matrices have
real spectra), independent of the congruence-diagonalization path it
checks.  The six property suites are
shared between the module tests and the acceptance gate.
"""

import random
from fractions import Fraction

from gw_euler import univar
from gw_euler.fields import QQ, PrimeField, hilbert_symbol
from gw_euler.gw import GWClass, gw_equal, gw_simplify
from gw_euler.polys import MultiPoly
from gw_euler.quadform import trace_form, gram_det
from gw_euler.fields import make_extension
from gw_euler.scheja_storch import ss_class, ss_form
from gw_euler.linalg import exact_det


# exact characteristic polynomial and Sturm-based signature


def char_poly(rows):
    """det(x I - A) as a coefficient list over Q (constant first)."""
    d = len(rows)
    minors = {frozenset(): [Fraction(1)]}
    for i in range(d):
        nxt = {}
        for cols, val in minors.items():
            for c in range(d):
                if c in cols:
                    continue
                entry = [-Fraction(rows[i][c])]
                if c == i:
                    entry = [-Fraction(rows[i][c]), Fraction(1)]
                term = univar.mul(QQ, val, entry)
                if sum(1 for x in cols if x > c) % 2:
                    term = [-t for t in term]
                key = cols | {c}
                nxt[key] = univar.add(QQ, nxt.get(key, []), term)
        minors = nxt
    return minors[frozenset(range(d))]


def _sign_changes(values):
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def charpoly_signature(rows):
    """Signature of a symmetric rational matrix, exactly.

    All eigenvalues of a symmetric matrix are real, so Descartes' rule
    of signs counts them with multiplicity: n_+ is the number of sign
    changes of char_poly(x) and n_- that of char_poly(-x).
    """
    p = univar.trim(QQ, char_poly(rows))
    while p and p[0] == 0:  # strip zero eigenvalues
        p = p[1:]
    n_pos = _sign_changes(p)
    n_neg = _sign_changes([(-1) ** k * c for k, c in enumerate(p)])
    return n_pos - n_neg


def realize_gram(cls: GWClass):
    """A diagonal rational Gram matrix representing the class."""
    diag = []
    for _ in range(cls.hyperbolic_count):
        diag.extend([Fraction(1), Fraction(-1)])
    diag.extend(r.rep for r in cls.residual)
    d = len(diag)
    return [[diag[i] if i == j else Fraction(0) for j in range(d)]
            for i in range(d)]


# random generators for seeded suites


def random_fraction(rng, bound=9):
    num = rng.randint(-bound, bound)
    den = rng.randint(1, bound)
    return Fraction(num, den)


def random_nonzero_fraction(rng, bound=9):
    while True:
        f = random_fraction(rng, bound)
        if f != 0:
            return f


def split_system(ctx, variables, roots_per_var):
    """g_i = prod (x_i - r) for the given distinct roots, as MultiPolys."""
    out = []
    for i, roots in enumerate(roots_per_var):
        poly = MultiPoly.const(ctx, variables, ctx.one())
        x = MultiPoly.var(ctx, variables, variables[i])
        for r in roots:
            poly = poly * (x - MultiPoly.const(ctx, variables, r))
        out.append(poly)
    return out


def random_split_system(rng, ctx, max_vars=2, max_deg=2):
    nvars = rng.randint(1, max_vars)
    variables = tuple(f"x{i+1}" for i in range(nvars))
    roots_per_var = []
    for _ in range(nvars):
        deg = rng.randint(1, max_deg)
        if ctx.kind == "Fp":
            pool = list(range(ctx.p))  # distinct residues, simple zeros
        else:
            pool = list(range(-5, 6))
        rng.shuffle(pool)
        roots = [ctx.from_int(r) for r in pool[:deg]]
        roots_per_var.append(roots)
    return split_system(ctx, variables, roots_per_var), roots_per_var


def random_triangular_system(rng, ctx, max_vars=3, max_deg=3):
    """Univariate with distinct roots in x1, later variables cut linearly."""
    nvars = rng.randint(1, max_vars)
    variables = tuple(f"x{i+1}" for i in range(nvars))
    pool = list(range(ctx.p)) if ctx.kind == "Fp" else list(range(-6, 7))
    rng.shuffle(pool)
    deg = rng.randint(1, max_deg)
    g1 = MultiPoly.const(ctx, variables, ctx.one())
    x1 = MultiPoly.var(ctx, variables, variables[0])
    for r in pool[:deg]:
        g1 = g1 * (x1 - MultiPoly.const(ctx, variables, ctx.from_int(r)))
    system = [g1]
    for j in range(1, nvars):
        q = MultiPoly.zero(ctx, variables)
        for _ in range(rng.randint(1, 3)):
            exps = [0] * nvars
            for i in range(j):
                exps[i] = rng.randint(0, 2)
            coeff = ctx.from_int(rng.randint(-4, 4))
            q = q + MultiPoly(ctx, variables, {tuple(exps): coeff})
        system.append(MultiPoly.var(ctx, variables, variables[j]) - q)
    return system


def split_system_degree_oracle(ctx, system, roots_per_var):
    """Sum of <det Jac> over the rational zeros, evaluated directly."""
    from itertools import product
    classes = []
    for combo in product(*roots_per_var):
        det = ctx.one()
        for i, g in enumerate(system):
            deriv = g.derivative(i)
            det = ctx.mul(det, deriv.evaluate(list(combo)))
        classes.append(det)
    return gw_simplify(classes, ctx=ctx)


# the six acceptance property suites (each callable with its case count)


def suite_presentation_independence(cases=50):
    """Scheja-Storch class is independent of the presentation choices."""
    rng = random.Random(801)
    run = 0
    while run < cases:
        ctx = QQ if run % 2 == 0 else PrimeField(7)
        system, _ = random_split_system(rng, ctx)
        r = len(system)
        base = ss_class(system)
        perm = list(range(r))
        rng.shuffle(perm)
        variant = ss_form(system, substitution_order=perm).gw_class
        assert gw_equal(base, variant), "substitution order changed the class"
        if r >= 2:
            i, j = rng.sample(range(r), 2)
            q = MultiPoly.const(ctx, system[0].variables,
                                ctx.from_int(rng.randint(-3, 3)))
            modified = list(system)
            modified[j] = modified[j] + q * modified[i]
            assert gw_equal(base, ss_class(modified)), \
                "adding a multiple of another generator changed the class"
        run += 1
    return run


def suite_jacobian_oracle(cases=50):
    """ss_class equals the direct Jacobian sum on split simple-zero systems."""
    rng = random.Random(802)
    for run in range(cases):
        ctx = QQ if run % 2 == 0 else PrimeField(7)
        system, roots = random_split_system(rng, ctx)
        expected = split_system_degree_oracle(ctx, system, roots)
        got = ss_class(system)
        assert gw_equal(got, expected), f"case {run}: {got} != {expected}"
    return cases


def suite_hyperbolic_recognition(cases=100):
    """<a> + <-a> = H for seeded a over Q and every a over F_7."""
    rng = random.Random(803)
    for _ in range(cases):
        a = random_nonzero_fraction(rng, bound=50)
        cls = gw_simplify([a, -a], ctx=QQ)
        assert cls == GWClass.hyperbolic(QQ)
        assert gw_equal(cls, GWClass.hyperbolic(QQ))
    f7 = PrimeField(7)
    for a in range(1, 7):
        cls = gw_simplify([a, f7.neg(a)], ctx=f7)
        assert gw_equal(cls, GWClass.hyperbolic(f7))
    return cases + 6


def suite_hilbert_symbol(cases=100):
    """Symmetry, bimultiplicativity, and the product formula."""
    from gw_euler.intfactor import factorize
    rng = random.Random(804)
    places = [2, 3, 5, 7, 11, "inf"]
    for _ in range(cases):
        a = random_nonzero_fraction(rng, bound=20)
        b = random_nonzero_fraction(rng, bound=20)
        c = random_nonzero_fraction(rng, bound=20)
        for v in places:
            sab = hilbert_symbol(a, b, v)
            assert sab == hilbert_symbol(b, a, v)
            assert hilbert_symbol(a * c, b, v) == sab * hilbert_symbol(c, b, v)
    for _ in range(cases):
        a = random_nonzero_fraction(rng, bound=30)
        b = random_nonzero_fraction(rng, bound=30)
        primes = set()
        for x in (a, b):
            primes.update(factorize(abs(x.numerator)))
            primes.update(factorize(x.denominator))
        primes.add(2)
        product = hilbert_symbol(a, b, "inf")
        for p in primes:
            product *= hilbert_symbol(a, b, p)
        assert product == 1, f"product formula fails for {a}, {b}"
    return 2 * cases


def suite_trace_form_nondegenerate(cases=50):
    """Trace forms of nonzero elements on etale algebras are nondegenerate."""
    rng = random.Random(805)
    run = 0
    while run < cases:
        deg = rng.randint(1, 4)
        coeffs = [random_fraction(rng, 4) for _ in range(deg)] + [Fraction(1)]
        if not univar.is_squarefree(QQ, coeffs):
            continue
        algebra = make_extension(QQ, coeffs)
        elem = tuple(random_fraction(rng, 4) for _ in range(deg))
        if algebra.is_zero(elem):
            continue
        gram = trace_form(algebra, elem)
        assert not QQ.is_zero(gram_det(gram)), \
            f"degenerate trace form for modulus {coeffs}, elem {elem}"
        run += 1
    return run


def suite_row_operation_covariance(cases=50):
    """ss_class(M g) = <det M> ss_class(g) for constant invertible M."""
    rng = random.Random(806)
    run = 0
    while run < cases:
        ctx = QQ if run % 2 == 0 else PrimeField(7)
        system, roots = random_split_system(rng, ctx, max_vars=2, max_deg=2)
        r = len(system)
        m = [[ctx.from_int(rng.randint(-3, 3)) for _ in range(r)]
             for _ in range(r)]
        det = exact_det(ctx, m)
        if ctx.is_zero(det):
            continue
        mixed = []
        for row in m:
            acc = MultiPoly.zero(ctx, system[0].variables)
            for c, g in zip(row, system):
                acc = acc + g.scale(c)
            mixed.append(acc)
        lhs = ss_class(mixed)
        rhs = ss_class(system).scale(det)
        assert gw_equal(lhs, rhs), f"row operation covariance fails: {m}"
        # cross-check against the simple-zero oracle scaled pointwise
        oracle = split_system_degree_oracle(ctx, system, roots).scale(det)
        assert gw_equal(lhs, oracle)
        run += 1
    return run
