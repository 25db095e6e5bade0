"""Grammar, parser, printer: examples, precedence, errors, roundtrip."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from ladder_forge import opalgebra as oa
from ladder_forge import opdsl
from ladder_forge.generators import build_T

from _gen import operators, random_operator


class TestParseExamples:
    def test_ladder_display_matches_builder(self):
        text = "exp(i*eta)*(-r*d/dr + i*d/deta + s*r)"
        assert opdsl.parse(text) == build_T().members["Tplus"]

    def test_weyl_relation_from_text(self):
        assert opdsl.parse("d/dr*r - r*d/dr") == oa.identity()

    def test_sqrt_square(self):
        assert opdsl.parse("sqrt(r)*sqrt(r)") == oa.r_power(1)

    def test_rational_literal(self):
        assert opdsl.parse("2/3*r") == Fraction(2, 3) * oa.r_power(1)

    def test_formal_unit(self):
        assert opdsl.parse("u*u") == Fraction(1, 2) * oa.s_sym(-1)


class TestRenderExamples:
    def test_canonical_fixed_point(self):
        assert opdsl.render(opdsl.parse("r*d/dr")) == "r*d/dr"

    def test_zero(self):
        assert opdsl.render(oa.zero()) == "0"

    def test_number_generator(self):
        assert opdsl.render(build_T().members["T0"]) == "-i*d/deta"


class TestPrecedence:
    def test_power_binds_tighter_than_unary_minus(self):
        assert opdsl.parse("-r^2") == -oa.r_power(2)

    def test_power_binds_tighter_than_product(self):
        assert opdsl.parse("2*r^3") == 2 * oa.r_power(3)

    def test_unary_minus_inside_product(self):
        assert opdsl.parse("r*-s") == -(oa.s_sym() * oa.r_power(1))

    def test_product_before_sum(self):
        expected = oa.s_sym() * oa.r_power(1) + oa.imag()
        assert opdsl.parse("s*r + i") == expected

    def test_negative_exponent(self):
        assert opdsl.parse("r^-2") == oa.r_power(-2)

    def test_parenthesized_power(self):
        expected = (oa.deriv("r") + oa.identity()) ** 2
        assert opdsl.parse("(d/dr + 1)^2") == expected

    def test_phase_windings(self):
        assert opdsl.parse("exp(i*2*eta)") == oa.phase("eta", 2)
        assert opdsl.parse("exp(-i*beta)") == oa.phase("beta", -1)


# Each entry seeds one error; the reported offset must fall inside the
# offending lexeme.
ERROR_CORPUS = [
    ("r ** 2", opdsl.OperatorSyntaxError, 3, "*"),
    ("r $ s", opdsl.OperatorLexError, 2, "$"),
    ("exp(eta)", opdsl.OperatorSyntaxError, 4, "eta"),
    ("exp(i*gamma)", opdsl.OperatorSyntaxError, 6, "gamma"),
    ("exp(i*eta*eta)", opdsl.OperatorSyntaxError, 10, "eta"),
    ("r +", opdsl.OperatorSyntaxError, 3, ""),
    ("(r", opdsl.OperatorSyntaxError, 2, ""),
    ("2r", opdsl.OperatorSyntaxError, 1, "r"),
    ("q*r", opdsl.OperatorSyntaxError, 0, "q"),
    ("d/dx", opdsl.OperatorLexError, 1, "/"),
    ("", opdsl.OperatorSyntaxError, 0, ""),
]


@pytest.mark.parametrize("text,exc_type,position,lexeme", ERROR_CORPUS)
def test_error_positions(text, exc_type, position, lexeme):
    with pytest.raises(exc_type) as info:
        opdsl.parse(text)
    err = info.value
    assert err.position == position
    if lexeme:
        assert text[err.position : err.position + len(lexeme)] == lexeme


@pytest.mark.parametrize("text,position", [("r^(1/2)", 2), ("r^s", 2), ("s^u", 2)])
def test_non_integer_power_rejected(text, position):
    with pytest.raises(opdsl.OperatorSyntaxError) as info:
        opdsl.parse(text)
    assert info.value.position == position
    assert "integer" in str(info.value)


def test_syntax_error_carries_expected_set():
    with pytest.raises(opdsl.OperatorSyntaxError) as info:
        opdsl.parse("r +")
    assert info.value.expected  # non-empty tuple of alternatives


def test_roundtrip_seeded_batch():
    rng = random.Random(424242)
    for _ in range(250):
        e = random_operator(rng)
        assert opdsl.parse(opdsl.render(e)) == e


@settings(max_examples=150, deadline=None)
@given(operators(max_terms=3))
def test_roundtrip_property(e):
    assert opdsl.parse(opdsl.render(e)) == e


def test_render_deterministic():
    rng = random.Random(5)
    e = random_operator(rng, max_terms=4)
    assert opdsl.render(e) == opdsl.render(oa.OperatorExpr(dict(e.terms())))
