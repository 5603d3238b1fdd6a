import random

import pytest

from heckecells.laurent import (
    LaurentPolynomial,
    ONE,
    PolyParseError,
    V,
    V_INV,
    ZERO,
    format_poly,
    parse_poly,
)


def test_ring_ops_examples():
    assert V * V_INV == ONE
    p = V_INV - V
    assert p * p == parse_poly("v^-2 - 2 + v^2")
    assert parse_poly("1 + v^2") - ONE == parse_poly("v^2")


def test_bar_examples():
    assert V.bar() == V_INV
    assert LaurentPolynomial.monomial(3).bar() == LaurentPolynomial.monomial(3)
    assert parse_poly("v^-2 + 2*v").bar() == parse_poly("v^2 + 2*v^-1")


def test_codec_examples():
    assert parse_poly("v^-1 - v").items() == ((-1, 1), (1, -1))
    assert parse_poly("1 + v^2").items() == ((0, 1), (2, 1))
    assert parse_poly("0") == ZERO
    assert format_poly(ZERO) == "0"


def test_format_ascending_and_idempotent():
    p = parse_poly("3*v^2 - v^-3 + 7")
    text = format_poly(p)
    assert text == "-v^-3+7+3*v^2"
    assert format_poly(parse_poly(text)) == text


def test_parse_error_positions():
    with pytest.raises(PolyParseError) as info:
        parse_poly("v^")
    assert info.value.position == 2
    with pytest.raises(PolyParseError):
        parse_poly("1 + + v")
    with pytest.raises(PolyParseError):
        parse_poly("2v")
    with pytest.raises(PolyParseError):
        parse_poly("")


def test_parse_accepts_leading_minus_and_whitespace():
    assert parse_poly("-v + 1") == ONE - V
    assert parse_poly("  2*v^-2  ") == LaurentPolynomial({-2: 2})


def test_bar_is_ring_involution_on_random_pairs():
    rng = random.Random(7)
    for _ in range(200):
        a = LaurentPolynomial({rng.randint(-4, 4): rng.randint(-5, 5) for _ in range(3)})
        b = LaurentPolynomial({rng.randint(-4, 4): rng.randint(-5, 5) for _ in range(3)})
        assert (a * b).bar() == a.bar() * b.bar()
        assert a.bar().bar() == a
        assert (a + b).bar() == a.bar() + b.bar()


def test_nonnegative_stability():
    rng = random.Random(11)
    for _ in range(200):
        a = LaurentPolynomial({rng.randint(-4, 4): rng.randint(0, 5) for _ in range(3)})
        b = LaurentPolynomial({rng.randint(-4, 4): rng.randint(0, 5) for _ in range(3)})
        assert a.is_nonnegative() and b.is_nonnegative()
        assert (a + b).is_nonnegative()
        assert (a * b).is_nonnegative()


def test_canonical_form_never_stores_zeros():
    p = parse_poly("v - v")
    assert p == ZERO and not p.items()
    q = LaurentPolynomial({2: 1, 3: 0})
    assert q.items() == ((2, 1),)
    assert (V - V) + ONE == ONE


def test_int_coercion_and_pow():
    assert V + 1 == parse_poly("1 + v")
    assert 2 * V == parse_poly("2*v")
    assert (V + 1) ** 2 == parse_poly("1 + 2*v + v^2")
    assert V**0 == ONE
