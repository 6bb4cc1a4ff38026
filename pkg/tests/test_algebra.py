from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superq.algebra import (AlgebraPresentation, SuperVariable, koszul_sign, monomial_basis,
                            multiply, truncate)
from superq.field import FieldSpec
from superq.textio import ParseError, format_element, parse_element

import oracles

Q = FieldSpec.rationals()


def alg(*gens, rel=None, field=Q):
    return AlgebraPresentation(field, [SuperVariable(*g) for g in gens], rel or {})


XT = alg(("x", 0), ("theta1", 1), ("theta2", 1))
MIXED = alg(("x", 0), ("a", 1), ("y", 0, 2), ("b", 1), ("c", 1), rel={"x": 4})


def el(text, a=XT):
    return parse_element(text, a)


class TestKoszul:
    def test_empty_left(self):
        assert koszul_sign([], [0]) == 1

    def test_one_swap(self):
        assert koszul_sign([1], [0]) == -1

    def test_repeat_vanishes(self):
        assert koszul_sign([0], [0]) == 0

    @given(st.lists(st.integers(0, 6), max_size=4, unique=True),
           st.lists(st.integers(0, 6), max_size=4, unique=True))
    def test_matches_bubble_sort(self, a, b):
        a, b = sorted(a), sorted(b)
        ring = oracles.Ring([(str(i), 1, 1, None) for i in range(7)])
        sign, _ = ring._normal(a + b)
        assert koszul_sign(a, b) == sign


class TestMultiply:
    def test_odd_square(self):
        assert multiply(el("theta1"), el("theta1")).is_zero()

    def test_anticommute(self):
        assert multiply(el("theta2"), el("theta1")) == -el("theta1*theta2")

    def test_hand_expansion(self):
        got = multiply(el("x + theta1"), el("x + theta2"))
        assert got == el("x^2 + x*theta1 + x*theta2 + theta1*theta2")

    def test_relation_truncates(self):
        a = alg(("x", 0), rel={"x": 3}, field=FieldSpec.prime(3))
        assert (parse_element("x", a) ** 3).is_zero()

    def test_prime_coefficients_reduce(self):
        a = alg(("x", 0), field=FieldSpec.prime(5))
        assert parse_element("3*x", a) + parse_element("2*x", a) == a.zero()


class TestBasis:
    def test_kx_theta(self):
        a = alg(("x", 0), ("theta", 1))
        assert [a.format_key(k) for k in monomial_basis(a, 2)] == ["x^2", "x*theta"]

    def test_example_algebra(self):
        a = alg(("v1", 0), ("v2", 1))
        assert [a.format_key(k) for k in monomial_basis(a, 1)] == ["v1", "v2"]

    def test_capped(self):
        a = alg(("x", 0), rel={"x": 3}, field=FieldSpec.prime(3))
        assert monomial_basis(a, 3) == []

    def test_deterministic(self):
        assert monomial_basis(MIXED, 4) == monomial_basis(MIXED, 4)

    @pytest.mark.parametrize("d", range(7))
    def test_counts_match_oracle(self, d):
        assert len(monomial_basis(MIXED, d)) == len(oracles.ring_of(MIXED).monomials(d))


class TestTruncate:
    def test_drop_even(self):
        assert truncate(el("x^2 + theta1"), 1) == el("theta1")

    def test_zero(self):
        assert truncate(XT.zero(), 5).is_zero()

    def test_weight_sum(self):
        assert truncate(el("x + x*theta1*theta2"), 2) == el("x")


class TestText:
    def test_written_order(self):
        assert el("theta2*theta1") == -el("theta1*theta2")

    def test_round_trip(self):
        e = el("3*x^2*theta1*theta2 - 1/2*theta1 + 7")
        assert parse_element(format_element(e), XT) == e

    @pytest.mark.parametrize("text,pos", [("x + $", 4), ("x + y", 4)])
    def test_error_position(self, text, pos):
        with pytest.raises(ParseError) as info:
            el(text)
        assert info.value.pos == pos

    def test_fraction_coefficient(self):
        assert el("1/3*x").coefficient(next(iter(el("x").terms))) == Fraction(1, 3)


# randomized comparisons against the oracle ring ------------------------------

KEYS = MIXED.basis_upto(5)
coeff = st.fractions(min_value=-4, max_value=4, max_denominator=3)
elements = st.dictionaries(st.sampled_from(KEYS), coeff, max_size=4).map(MIXED.element)


@settings(max_examples=150, deadline=None)
@given(elements, elements)
def test_product_matches_oracle(p, q):
    ring = oracles.ring_of(MIXED)
    assert oracles.from_element(ring, p * q) == ring.mul(oracles.from_element(ring, p),
                                                         oracles.from_element(ring, q))


@settings(max_examples=100, deadline=None)
@given(elements, elements, elements)
def test_associative_distributive(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@settings(max_examples=100, deadline=None)
@given(elements, elements)
def test_supercommutative_on_homogeneous(p, q):
    for pp in (0, 1):
        for qp in (0, 1):
            a = p.homogeneous_component(parity=pp)
            b = q.homogeneous_component(parity=qp)
            assert a * b == (b * a).scale(-1 if pp and qp else 1)


def test_odd_elements_square_to_zero():
    e = parse_element("a + x*b + y*c", MIXED)
    assert (e * e).is_zero()
