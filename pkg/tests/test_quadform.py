import random
from fractions import Fraction

import pytest

from gw_euler.errors import Degenerate
from gw_euler.fields import QQ, PrimeField, make_extension
from gw_euler.gw import GWClass, gw_invariants
from gw_euler.linalg import mat_mul
from gw_euler.quadform import (GramForm, diagonalize, diagonalize_with_transform,
                               gram_det, gram_to_class, scharlau_transfer,
                               trace_form)

from conftest import suite_trace_form_nondegenerate


def F(n, d=1):
    return Fraction(n, d)


def test_diagonalize_hyperbolic_gram():
    g = GramForm(QQ, [[F(0), F(1)], [F(1), F(0)]])
    classes = diagonalize(g)
    assert [c.rep for c in classes] == [F(2), F(-2)]
    assert gram_to_class(g) == GWClass.hyperbolic(QQ)


def test_diagonalize_trace_form_matrix():
    g = GramForm(QQ, [[F(-3), F(6)], [F(6), F(-3)]])
    classes = diagonalize(g)
    # <-3>, <9> up to square stripping
    assert [c.rep for c in classes] == [F(-3), F(1)]
    inv = gw_invariants(gram_to_class(g))
    assert (inv.rank, inv.signature, inv.disc.rep) == (2, 0, -3)


def test_diagonalize_already_diagonal():
    g = GramForm(QQ, [[F(5)]])
    assert [c.rep for c in diagonalize(g)] == [F(5)]


def test_diagonalize_degenerate():
    with pytest.raises(Degenerate):
        diagonalize(GramForm(QQ, [[F(1), F(0)], [F(0), F(0)]]))


def test_gram_requires_symmetry():
    with pytest.raises(ValueError):
        GramForm(QQ, [[F(0), F(1)], [F(2), F(0)]])


def _random_symmetric(rng, ctx, d):
    rows = [[ctx.zero()] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            if ctx.kind == "Q":
                v = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            else:
                v = rng.randint(0, ctx.p - 1)
            rows[i][j] = rows[j][i] = v
    return rows


def test_congruence_identity_on_seeded_matrices():
    rng = random.Random(31)
    for ctx in (QQ, PrimeField(7)):
        done = 0
        while done < 100:
            d = rng.randint(1, 6)
            rows = _random_symmetric(rng, ctx, d)
            g = GramForm(ctx, rows)
            try:
                entries, p = diagonalize_with_transform(g)
            except Degenerate:
                continue
            pt = [[p[j][i] for j in range(d)] for i in range(d)]
            ptgp = mat_mul(ctx, mat_mul(ctx, pt, [list(r) for r in rows]), p)
            for i in range(d):
                for j in range(d):
                    expected = entries[i] if i == j else ctx.zero()
                    assert ctx.eq(ptgp[i][j], expected)
            done += 1


def test_diagonal_product_matches_determinant_class():
    rng = random.Random(32)
    for _ in range(60):
        d = rng.randint(1, 5)
        rows = _random_symmetric(rng, QQ, d)
        g = GramForm(QQ, rows)
        det = gram_det(g)
        if det == 0:
            continue
        entries, _ = diagonalize_with_transform(g)
        prod = Fraction(1)
        for e in entries:
            prod *= e
        ratio = prod / det
        # ratio must be a nonzero square
        assert ratio > 0
        num, den = ratio.numerator, ratio.denominator
        import math
        assert math.isqrt(num) ** 2 == num and math.isqrt(den) ** 2 == den


def test_trace_form_k3_bit_exact():
    k3 = make_extension(QQ, "t^2+t+1")
    a = k3.mul(k3.embed(F(3)), k3.pow(k3.gen(), 2))
    gram = trace_form(k3, a)
    assert gram.rows == ((F(-3), F(6)), (F(6), F(-3)))
    inv = gw_invariants(gram_to_class(gram))
    assert (inv.rank, inv.signature, inv.disc.rep) == (2, 0, -3)


def test_trace_form_degree_one_identity():
    k = make_extension(QQ, "t-4")
    gram = trace_form(k, (F(7, 3),))
    assert gram.rows == ((F(7, 3),),)


def test_trace_form_gaussian_value():
    qi = make_extension(QQ, "t^2+1")
    a = qi.mul(qi.embed(F(2)), qi.gen())  # 2t
    gram = trace_form(qi, a)
    assert gram.rows == ((F(0), F(-4)), (F(-4), F(0)))
    assert gram_to_class(gram) == GWClass.hyperbolic(QQ)


def test_trace_form_zero_rejected():
    qi = make_extension(QQ, "t^2+1")
    with pytest.raises(Degenerate):
        trace_form(qi, qi.zero())


def test_scharlau_transfer_examples():
    k3 = make_extension(QQ, "t^2+t+1")
    a = k3.mul(k3.embed(F(3)), k3.pow(k3.gen(), 2))
    out = scharlau_transfer(k3, GWClass(k3, 0, [a]))
    inv = gw_invariants(out)
    assert (inv.rank, inv.signature, inv.disc.rep) == (2, 0, -3)
    # hyperbolic stability
    assert scharlau_transfer(k3, GWClass.hyperbolic(k3)) == \
        GWClass.hyperbolic(QQ, 2)
    # Tr_{Q(i)/Q}<8i> = H
    qi = make_extension(QQ, "t^2+1")
    i8 = qi.mul(qi.embed(F(8)), qi.gen())
    assert scharlau_transfer(qi, GWClass(qi, 0, [i8])) == GWClass.hyperbolic(QQ)


def test_scharlau_transfer_additive_and_rank_scaling():
    rng = random.Random(33)
    k3 = make_extension(QQ, "t^2+t+1")
    for _ in range(40):
        def rand_elem():
            while True:
                e = tuple(Fraction(rng.randint(-5, 5)) for _ in range(2))
                if not k3.is_zero(e):
                    return e
        c1 = GWClass(k3, rng.randint(0, 2), [rand_elem()])
        c2 = GWClass(k3, rng.randint(0, 2), [rand_elem(), rand_elem()])
        lhs = scharlau_transfer(k3, c1 + c2)
        rhs = scharlau_transfer(k3, c1) + scharlau_transfer(k3, c2)
        from gw_euler.gw import gw_equal
        assert gw_equal(lhs, rhs)
        assert scharlau_transfer(k3, c1).rank == 2 * c1.rank


def test_trace_form_nondegeneracy_suite():
    assert suite_trace_form_nondegenerate(50) >= 50
