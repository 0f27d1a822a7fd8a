import random
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from omegaterms import automata as fa
from omegaterms.efclass import quotient_monoid
from omegaterms.generators import random_dfa, random_term
from omegaterms.monoid import (ASSOCIATIVITY_CHECK_BOUND, FiniteMonoid, MonoidError,
                               cyclic_group, evaluate, from_text, green, idempotents,
                               is_aperiodic, omega_power, to_text, u1)
from omegaterms.term import concat, parse

from oracles import brute_monoid_table


def aperiodic_bank(n=12, seed=3):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        d = fa.minimize(random_dfa(rng, "ab", rng.randint(2, 5)))
        m, _ = fa.transition_monoid(d)
        if len(m) <= 50 and is_aperiodic(m):
            out.append(m)
    return out


BANK = aperiodic_bank() + [u1(), quotient_monoid("ab", 1)[0], quotient_monoid("a", 2)[0]]


def test_fixtures():
    z2 = cyclic_group(2)
    assert not is_aperiodic(z2)
    assert is_aperiodic(u1())
    assert omega_power(z2, 1) == 0
    assert omega_power(u1(), 1) == 1
    for m in (z2, u1(), cyclic_group(5)):
        assert omega_power(m, m.identity) == m.identity


def test_omega_power_with_tail():
    # {1, x, x^2, x^3} with x^4 = x^2: index 2, period 2, so x^w = x^2
    reduce = lambda n: n if n <= 3 else 2 + (n - 2) % 2
    m = FiniteMonoid(brute_monoid_table(range(4), lambda i, j: reduce(i + j)), 0)
    assert omega_power(m, 1) == 2
    assert omega_power(m, 3) == 2
    assert not is_aperiodic(m)


def test_u1_green():
    g = green(u1())
    assert g.j_leq(1, 0) and not g.j_leq(0, 1)
    assert len(g.j_classes) == 2


def test_identity_is_j_maximal():
    for m in BANK + [cyclic_group(3)]:
        g = green(m)
        assert all(g.j_leq(x, m.identity) for x in m.elements)


@pytest.mark.parametrize("m", BANK)
def test_aperiodic_h_trivial_and_orders(m):
    g = green(m)
    assert all(len(h) == 1 for h in g.h_classes)
    els = list(m.elements)
    for x in els:
        assert g.j_leq(x, x) and g.r_leq(x, x) and g.l_leq(x, x)
        for y in els:
            if g.r_leq(x, y) or g.l_leq(x, y):
                assert g.j_leq(x, y)
    for x in els:
        for y in els:
            if g.j_leq(x, y):
                assert all(g.j_leq(x, z) for z in els if g.j_leq(y, z))


@pytest.mark.parametrize("m", BANK)
def test_omega_power_properties(m):
    for x in m.elements:
        e = omega_power(m, x)
        assert m.mul(e, e) == e
        assert m.mul(e, x) == e


def test_evaluate_examples():
    a = parse("a^w")
    assert evaluate(a, u1(), {"a": 1}) == 1
    assert evaluate(a, cyclic_group(2), {"a": 1}) == 0
    assert evaluate(parse("1"), u1(), {}) == 0
    assert evaluate(parse("a^3"), cyclic_group(5), {"a": 1}) == 3


@given(st.integers(0, 2**32), st.sampled_from(range(len(BANK))))
@settings(max_examples=60, deadline=None)
def test_evaluate_is_homomorphism(seed, i):
    rng = random.Random(seed)
    m = BANK[i]
    h = {x: rng.randrange(len(m)) for x in "ab"}
    t1, t2 = random_term(rng, "ab", 2), random_term(rng, "ab", 2)
    assert evaluate(concat(t1, t2), m, h) == m.mul(evaluate(t1, m, h), evaluate(t2, m, h))


def test_validation():
    with pytest.raises(MonoidError):
        FiniteMonoid(((0, 1), (1, 0), (0, 0)), 0)
    with pytest.raises(MonoidError):
        FiniteMonoid(((0, 1), (1, 1)), 1)
    with pytest.raises(MonoidError, match="associative"):
        # identity 0; 1*1 = 2, 2*1 = 1, 1*2 = 2, 2*2 = 2 is not associative
        FiniteMonoid(((0, 1, 2), (1, 2, 2), (2, 1, 2)), 0)


def test_large_monoid_warns():
    n = ASSOCIATIVITY_CHECK_BOUND + 1
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        cyclic_group(n)
    assert any("associativity" in str(w.message) for w in caught)


def test_text_roundtrip():
    m, _, _ = quotient_monoid("ab", 1)
    text = to_text(m)
    back = from_text(text)
    assert back == m and back.labels == m.labels
    assert text.startswith("monoid 4\nidentity 0\nrow 0: ")


@pytest.mark.parametrize("text", ["monoid 2\nrow 0: 0 1\nrow 1: 1 1\n",
                                  "monoid 2\nidentity 0\nrow 0: 0 1\n",
                                  "monoid 2\nidentity 0\nrow 0: 0 x\nrow 1: 1 1\n",
                                  "bogus 1\n"])
def test_text_errors(text):
    with pytest.raises(MonoidError):
        from_text(text)


def test_idempotents_of_quotient():
    m, _, _ = quotient_monoid("a", 2)
    # classes of 1, a, aa, a^3+: only 1 and a^3+ are idempotent
    assert sorted(m.label(x) for x in idempotents(m)) == ["1", "aaa"]
