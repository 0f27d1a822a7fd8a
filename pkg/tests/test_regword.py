import random

import pytest
from hypothesis import given, settings, strategies as st

from omegaterms import automata as fa
from omegaterms.efclass import ef_game_oracle, omega_exponent
from omegaterms.generators import perturb, random_dfa, random_pair, random_term
from omegaterms.monoid import evaluate, is_aperiodic
from omegaterms.regword import (Normalizer, UnfoldLimitError, canonicalize, engine_for, equal,
                                items_of, primitive_root, separate, unfold)
from omegaterms.term import EMPTY, Concat, Letter, OmegaPower, omega, parse, to_text

P = parse


def test_canonicalize_examples():
    assert canonicalize(P("(aa)^w")) == P("a^w")
    assert canonicalize(P("(ab)^w a")) == canonicalize(P("a(ba)^w"))
    assert canonicalize(omega(EMPTY)) == EMPTY
    assert canonicalize(Concat((Letter("a"), EMPTY))) == P("a")
    assert canonicalize(P("a^3 b")) == P("aaab")


@pytest.mark.parametrize("x", ["a", "ab", "(ab)^w", "a^w b", "aba", "(a^wb)^w c"])
def test_absorption(x):
    assert equal(P(f"({x})({x})^w"), P(f"({x})^w"), crosscheck=True)
    assert equal(P(f"({x})^w({x})"), P(f"({x})^w"), crosscheck=True)
    assert equal(P(f"({x})^w({x})^w"), P(f"({x})^w"), crosscheck=True)


def test_equal_examples():
    assert not equal(P("a^w"), P("b^w"))
    assert not equal(P("a^w b a^w"), P("a^w b a^w b a^w"))
    assert separate(P("a^w b a^w"), P("a^w b a^w b a^w"), 4) is not None


def test_separate_examples():
    eng = engine_for("a")
    k, c1, c2 = separate(P("a"), P("aa"), 4, eng)
    assert k == 2 and c1 == eng.classify("a", 2) and c2 == eng.classify("aa", 2)
    assert separate(P("(ab)^w a"), P("(ab)^w a"), 4) is None
    k, _, _ = separate(P("(ab)^w"), P("(ba)^w"), 4)
    assert k <= 4
    n = omega_exponent(k)
    assert not ef_game_oracle(unfold(P("(ab)^w"), n), unfold(P("(ba)^w"), n), k)


def test_unfold_examples():
    assert unfold(P("(ab)^w"), 3) == "ababab"
    assert unfold(P("a^w b a^w"), 2) == "aabaa"
    with pytest.raises(UnfoldLimitError):
        unfold(P("((ab)^w)^w"), 1000, max_len=10_000)
    with pytest.raises(ValueError):
        unfold(P("a"), 0)


def test_primitive_root():
    assert primitive_root(tuple("abab")) == tuple("ab")
    assert primitive_root(tuple("aba")) == tuple("aba")
    assert primitive_root(()) == ()


def _nf_invariants(nf):
    norm = Normalizer()
    items = items_of(nf)
    for i, x in enumerate(items):
        if isinstance(x, OmegaPower):
            base = items_of(x.base)
            assert base, "omega of the empty word survived"
            assert not (len(base) == 1 and isinstance(base[0], OmegaPower))
            assert primitive_root(base) == base
            rots = [base[j:] + base[:j] for j in range(len(base))]
            assert min(rots, key=norm.seq_key) == base
            _nf_invariants(x.base)
            if i + 1 < len(items):
                assert items[i + 1] != x
            n = len(base)
            assert items[i + 1:i + 1 + n] != base
            assert items[max(0, i - n):i] != base or i < n


corpus_terms = st.builds(lambda s, d: random_term(random.Random(s), "abc", d),
                         st.integers(0, 2**32), st.integers(0, 3))


@given(corpus_terms)
@settings(max_examples=150, deadline=None)
def test_normal_form_invariants(t):
    nf = canonicalize(t)
    _nf_invariants(nf)
    assert parse(to_text(nf)) == nf


@given(corpus_terms)
@settings(max_examples=150, deadline=None)
def test_canonicalize_idempotent(t):
    nf = canonicalize(t)
    assert canonicalize(nf) == nf


@given(st.integers(0, 2**32))
@settings(max_examples=120, deadline=None)
def test_rule_instances_preserve_projections(seed):
    rng = random.Random(seed)
    t = random_term(rng, "ab", 3)
    t = perturb(rng, t, 2)
    trace = []
    canonicalize(t, trace=trace)
    eng = engine_for("ab")
    for before, after in trace:
        for k in range(5):
            assert eng.project(before, k) == eng.project(after, k), (before, after, k)


@given(st.integers(0, 2**32))
@settings(max_examples=150, deadline=None)
def test_perturbations_are_equal(seed):
    rng = random.Random(seed)
    t = random_term(rng, "abc", 2)
    u = perturb(rng, t, 2)
    # completeness is a hypothesis; soundness is the cross-check
    equal(t, u, crosscheck=True)
    assert separate(t, u, 3) is None


def test_perturbation_completeness_sample():
    rng = random.Random(11)
    misses = 0
    for _ in range(200):
        t = random_term(rng, "ab", 2)
        if not equal(t, perturb(rng, t, 2), crosscheck=True):
            misses += 1
    assert misses <= 2


@given(st.integers(0, 2**32))
@settings(max_examples=100, deadline=None)
def test_equal_is_equivalence(seed):
    rng = random.Random(seed)
    t = random_term(rng, "ab", 2)
    u, v = perturb(rng, t, 1), perturb(rng, t, 2)
    if equal(t, u) and equal(u, v):
        assert equal(t, v) and equal(v, t)
    assert equal(t, t)


def _bank(n=8, seed=5):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        d = fa.minimize(random_dfa(rng, "abc", rng.randint(2, 4)))
        m, _ = fa.transition_monoid(d)
        if len(m) <= 50 and is_aperiodic(m):
            out.append(m)
    return out


BANK = _bank()


@given(st.integers(0, 2**32))
@settings(max_examples=100, deadline=None)
def test_equal_implies_same_evaluation(seed):
    rng = random.Random(seed)
    t1, t2 = random_pair(rng, "abc", 3)
    if equal(t1, t2):
        for m in BANK:
            h = {x: rng.randrange(len(m)) for x in "abc"}
            assert evaluate(t1, m, h) == evaluate(t2, m, h)
