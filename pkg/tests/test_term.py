import random

import pytest
from hypothesis import given, settings, strategies as st

from omegaterms.generators import random_term
from omegaterms.term import (EMPTY, Alphabet, AlphabetError, Concat, Empty, Letter,
                             OmegaPower, ParseError, Power, concat, content, is_finite_word,
                             omega, omega_depth, parse, power, reverse, substitute, to_text,
                             word)

a, b, c = Letter("a"), Letter("b"), Letter("c")

terms = st.builds(lambda seed, depth: random_term(random.Random(seed), "abc", depth),
                  st.integers(0, 2**32), st.integers(0, 3))


def test_parse_examples():
    assert parse("ab") == Concat((a, b))
    assert parse("(ab)^w a") == Concat((OmegaPower(Concat((a, b))), a))
    assert parse("a^1") == a
    assert parse("a^0") == EMPTY
    assert parse("1") == EMPTY
    assert parse(" a ^ 3 b ") == Concat((Power(a, 3), b))


def test_print_examples():
    assert to_text(EMPTY) == "1"
    assert to_text(OmegaPower(Concat((a, b)))) == "(ab)^w"
    assert to_text(Power(a, 3)) == "a^3"
    assert to_text(parse("((a^w b)^w c)^2")) == "((a^wb)^wc)^2"


@pytest.mark.parametrize("text,pos", [("(ab", 3), ("a^", 2), ("a^x", 2), ("", 0), (")", 0),
                                      ("a1", 1), ("ab)", 2)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == pos


def test_alphabet_checks():
    with pytest.raises(AlphabetError):
        parse("abc", "ab")
    with pytest.raises(AlphabetError):
        Alphabet(("a", "a"))
    with pytest.raises(AlphabetError):
        Alphabet(())
    with pytest.raises(AlphabetError):
        Alphabet(("A",))
    assert Alphabet.of("ba").word_key("a") > Alphabet.of("ba").word_key("b")


def test_smart_constructors():
    assert concat(a, EMPTY, concat(b, c)) == Concat((a, b, c))
    assert concat() == EMPTY and concat(a) == a
    assert omega(EMPTY) == EMPTY
    assert power(a, 0) == EMPTY and power(a, 1) == a and power(EMPTY, 5) == EMPTY
    assert word("") == EMPTY


def test_substitute_examples():
    assert substitute(parse("b^w"), {"b": parse("ab")}) == parse("(ab)^w")
    assert substitute(parse("bc"), {"b": parse("a^w"), "c": a}) == Concat((OmegaPower(a), a))
    assert substitute(parse("b"), {"b": EMPTY}) == EMPTY


def test_content_and_finite_words():
    assert content(parse("(ab)^w c")) == {"a", "b", "c"}
    assert content(EMPTY) == frozenset()
    assert content(parse("(a^w)^w")) == {"a"}
    assert is_finite_word(parse("a^3 b")) == "aaab"
    assert is_finite_word(OmegaPower(Empty())) == ""
    assert is_finite_word(parse("a^w")) is None


@given(terms)
def test_roundtrip(t):
    assert parse(to_text(t)) == t


@given(terms)
def test_smart_constructor_invariants(t):
    def check(x):
        if isinstance(x, Concat):
            assert len(x.children) >= 2
            assert not any(isinstance(ch, (Concat, Empty)) for ch in x.children)
            for ch in x.children:
                check(ch)
        elif isinstance(x, Power):
            assert x.exponent >= 2
            check(x.base)
        elif isinstance(x, OmegaPower):
            assert x.base != EMPTY
            check(x.base)
    check(t)


@given(terms, st.integers(0, 2**32))
def test_substitute_functorial(t, seed):
    rng = random.Random(seed)
    f = {x: random_term(rng, "ab", 1) for x in "abc"}
    g = {x: random_term(rng, "xy", 1) for x in "ab"}
    lhs = substitute(substitute(t, f), g)
    rhs = substitute(t, {x: substitute(f[x], g) for x in "abc"})
    assert lhs == rhs


@given(terms, st.integers(0, 2**32))
def test_content_of_substitution(t, seed):
    rng = random.Random(seed)
    f = {x: random_term(rng, "xyz", 1) for x in "abc"}
    expected = frozenset().union(*(content(f[x]) for x in content(t)))
    assert content(substitute(t, f)) == expected


@given(terms)
@settings(max_examples=50)
def test_reverse_involution(t):
    assert reverse(reverse(t)) == t
    assert omega_depth(reverse(t)) == omega_depth(t)
    w = is_finite_word(t)
    if w is not None:
        assert is_finite_word(reverse(t)) == w[::-1]
