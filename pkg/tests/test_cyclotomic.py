import json
import math
import random
from fractions import Fraction

import pytest

from rademacher.cyclotomic import (AlgebraicReal, ContextMismatchError,
                                   CyclotomicContext, NotRealError,
                                   algebraic_from_json, compare,
                                   cyclotomic_polynomial, euler_phi,
                                   make_context, sign_of)

from conftest import CI_PAIRS


def brute_phi(n):
    # independent Euler phi oracle
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def test_phi12_canonical_form():
    # x^4 - x^2 + 1, ascending
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_cyclotomic_polynomials_against_sympy():
    import sympy
    x = sympy.symbols("x")
    for n in (1, 2, 6, 12, 20, 24, 28, 30, 40):
        ours = cyclotomic_polynomial(n)
        theirs = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
        assert list(ours) == [int(c) for c in theirs], n


def test_context_degrees():
    assert make_context(2, 3).degree == 4
    assert make_context(2, 5).degree == brute_phi(20) == 8
    for p, q in CI_PAIRS:
        ctx = make_context(p, q)
        assert ctx.degree == brute_phi(2 * p * q)
        assert ctx.modulus_order == 2 * p * q


@pytest.mark.parametrize("p,q,fragment", [
    (2, 4, "coprime"),
    (3, 6, "coprime"),
    (1, 3, "at least 2"),
    (3, 3, "exceed"),
    (5, 3, "exceed"),
])
def test_context_rejections(p, q, fragment):
    with pytest.raises(ValueError, match=fragment):
        CyclotomicContext(p, q)


def test_additive_identity(ctx23):
    a = ctx23.element([1, 2, 0, 5])
    assert a + ctx23.zero == a
    assert a - a == ctx23.zero
    assert a + (-a) == 0


def test_zeta_square_expansion(ctx23):
    # (zeta + zeta^-1)^2 = zeta^2 + zeta^-2 + 2
    v = ctx23.two_cos(1)
    assert v * v == ctx23.two_cos(2) + 2


def test_two_cos_pi_third_squares_to_one(ctx23):
    # 2cos(pi/3) = 1, so the product collapses to the constant 1 mod Phi_12
    v = ctx23.two_cos(2)
    assert v == 1
    assert v * v == ctx23.one


def test_two_cos_endpoints(ctx23):
    assert ctx23.two_cos(0) == 2
    assert ctx23.two_cos(6) == -2          # cos(pi) = -1
    assert ctx23.two_cos(-1) == ctx23.two_cos(1)
    assert ctx23.two_cos(13) == ctx23.two_cos(1)  # period 2pq


def test_two_cos_product_rule():
    # 2cos(a) 2cos(b) = 2cos(a+b) + 2cos(a-b), exhaustively over a period
    for p, q in [(2, 3), (2, 5), (3, 4)]:
        ctx = make_context(p, q)
        n = ctx.modulus_order
        for a in range(n):
            for b in range(n):
                assert ctx.two_cos(a) * ctx.two_cos(b) == \
                    ctx.two_cos(a + b) + ctx.two_cos(a - b)


def _random_element(rng, ctx, allow_fractions=False):
    coeffs = []
    for _ in range(ctx.degree):
        c = rng.randint(-6, 6)
        if allow_fractions and rng.random() < 0.25:
            coeffs.append(Fraction(c, rng.randint(1, 5)))
        else:
            coeffs.append(c)
    return ctx.element(coeffs)


def test_ring_laws_random():
    rng = random.Random(42)
    for p, q in [(2, 3), (3, 5)]:
        ctx = make_context(p, q)
        for _ in range(150):
            a = _random_element(rng, ctx, allow_fractions=True)
            b = _random_element(rng, ctx, allow_fractions=True)
            c = _random_element(rng, ctx)
            assert a + b == b + a
            assert a * b == b * a
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c


def test_realness_closure():
    rng = random.Random(7)
    ctx = make_context(3, 5)
    for _ in range(60):
        a = _random_element(rng, ctx)
        b = _random_element(rng, ctx)
        ra = a + a.conjugate()
        rb = b * b.conjugate()
        assert ra.is_real() and rb.is_real()
        assert (ra + rb).is_real()
        assert (ra * rb).is_real()


def test_sign_examples(ctx23):
    assert ctx23.zero.sign() == 0
    assert sign_of(ctx23.two_cos(ctx23.q)) == 1          # 2cos(pi/2) = 0? no: q=3 -> 2cos(pi/2)... see below
    # two_cos(q) = 2cos(pi/p) = 2cos(pi/2) = 0 for p = 2: sign is 0
    # the positive example the definition wants is 2cos(pi/p) for p > 2:
    ctx35 = make_context(3, 5)
    assert sign_of(ctx35.two_cos(ctx35.q)) == 1          # 2cos(pi/3) = 1 > 0
    assert ctx23.two_cos(6).sign() == -1                 # -2
    # C_3(u) at u = cos(pi/3): 4u^2 - 1 = (2u)^2 - 1 = 0 exactly
    two_u = ctx23.two_cos(2)
    assert (two_u * two_u - 1).sign() == 0


def test_sign_agrees_with_float():
    rng = random.Random(3)
    for p, q in [(2, 3), (2, 7), (4, 5)]:
        ctx = make_context(p, q)
        for _ in range(150):
            a = _random_element(rng, ctx)
            a = a + a.conjugate()
            f = float(a)
            if abs(f) > 1e-6:
                assert a.sign() == (1 if f > 0 else -1)


def test_sign_rejects_non_real(ctx23):
    with pytest.raises(NotRealError):
        ctx23.zeta().sign()


def test_compare(ctx23):
    a = ctx23.two_cos(1)
    assert compare(a, a) == 0
    ctx35 = make_context(3, 5)
    # cos decreasing: pi/q < pi/p so 2cos(pi/q) > 2cos(pi/p)
    assert compare(ctx35.two_cos(ctx35.p), ctx35.two_cos(ctx35.q)) == 1
    assert compare(ctx23.zero, ctx23.two_cos(ctx23.p * ctx23.q)) == 1  # 0 > -2
    assert ctx35.two_cos(ctx35.p) > ctx35.two_cos(ctx35.q)


def test_context_mismatch_rejected():
    a = make_context(2, 3).two_cos(1)
    b = make_context(2, 5).two_cos(1)
    with pytest.raises(ContextMismatchError):
        a + b
    with pytest.raises(ContextMismatchError):
        a * b


def test_minimality_of_modulus():
    for p, q in [(2, 3), (3, 4)]:
        ctx = make_context(p, q)
        z = ctx.zeta()
        total = ctx.zero
        for k, c in enumerate(ctx.cyclotomic_poly):
            total = total + z ** k * c
        assert total == ctx.zero
        assert z ** ctx.modulus_order == ctx.one


def test_serialization_roundtrip():
    rng = random.Random(11)
    for p, q in [(2, 3), (3, 5)]:
        ctx = make_context(p, q)
        for _ in range(40):
            a = _random_element(rng, ctx, allow_fractions=True)
            blob = json.dumps(a.to_json())
            back = algebraic_from_json(ctx, json.loads(blob))
            assert back == a and back.coeffs == a.coeffs


def test_serialization_shapes(ctx23):
    assert algebraic_from_json(ctx23, 5) == 5
    assert algebraic_from_json(ctx23, "2/3") == Fraction(2, 3)
    assert algebraic_from_json(ctx23, [0, 1]) == ctx23.zeta()
    with pytest.raises(ValueError, match="modulus order"):
        algebraic_from_json(ctx23, {"order": 20, "coeffs": ["1"]})


def test_long_vectors_reduce(ctx23):
    # zeta^12 = 1 entering through a long raw coefficient vector
    v = ctx23.element([0] * 12 + [1])
    assert v == ctx23.zeta()


def test_to_int(ctx23):
    assert ctx23.constant(-7).to_int() == -7
    with pytest.raises(ValueError):
        ctx23.zeta().to_int()
    with pytest.raises(ValueError):
        ctx23.constant(Fraction(1, 2)).to_int()
