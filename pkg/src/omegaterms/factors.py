"""Finite prefixes, suffixes and factors of omega-terms, and their regular J-classes.

For a term t, P(t), S(t) and F(t) are the finite words lying R-, L- and
J-above t. They are regular, and are built here by structural recursion as
minimal DFAs over a fixed alphabet (the content of the term unless given).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Optional

from . import automata as fa
from .automata import Dfa, Nfa
from .efclass import KClassEngine
from .regword import canonicalize, engine_for, primitive_root, top_idempotent
from .term import (EMPTY, Alphabet, Concat, OmegaPower, OmegaTerm, Power,
                   TermError, concat, content, is_finite_word, reverse, to_text)


class SubstitutionError(TermError):
    pass


def _alphabet_of(t: OmegaTerm, alphabet) -> tuple[str, ...]:
    if alphabet is not None:
        letters = tuple(Alphabet.of(alphabet).letters)
        missing = content(t) - set(letters)
        if missing:
            raise TermError(f"letters {sorted(missing)} not in alphabet {''.join(letters)}")
        return letters
    return tuple(sorted(content(t)))


def _words(ws, alpha) -> Nfa:
    return fa.from_words(ws, alpha)


def _nfa(d: Dfa) -> Nfa:
    return fa.to_nfa(d)


def _min(n: Nfa) -> Dfa:
    return fa.minimize(fa.determinize(n))


def _children(t: OmegaTerm) -> tuple:
    if isinstance(t, Concat):
        return t.children
    if isinstance(t, Power):
        return (t.base,) * t.exponent
    return (t,)


# --- direct recursions ---------------------------------------------------------


@lru_cache(maxsize=None)
def _prefix(t: OmegaTerm, alpha: tuple) -> Dfa:
    w = is_finite_word(t)
    if w is not None:
        return _min(_words([w[:i] for i in range(len(w) + 1)], alpha))
    if isinstance(t, OmegaPower):
        s = t.base
        ws = is_finite_word(s)
        if ws is not None:  # nonempty, or t would be finite
            return _min(fa.concat(fa.star(_words([ws], alpha)), _nfa(_prefix(s, alpha))))
        return _prefix(s, alpha)
    # a product: P(t1 t2) = P(t1) u w1 P(t2) while the left factor is finite
    parts = []
    done = ""
    for c in _children(t):
        parts.append(fa.concat(_words([done], alpha), _nfa(_prefix(c, alpha))))
        wc = is_finite_word(c)
        if wc is None:
            break
        done += wc
    return _min(fa.union_all(parts, alpha))


@lru_cache(maxsize=None)
def _suffix(t: OmegaTerm, alpha: tuple) -> Dfa:
    return _min(fa.reverse(_nfa(_prefix(reverse(t), alpha))))


@lru_cache(maxsize=None)
def _factor(t: OmegaTerm, alpha: tuple) -> Dfa:
    w = is_finite_word(t)
    if w is not None:
        return _min(_words({w[i:j] for i in range(len(w) + 1) for j in range(i, len(w) + 1)},
                           alpha))
    if isinstance(t, OmegaPower):
        s = t.base
        ws = is_finite_word(s)
        middle = fa.star(_words([ws], alpha)) if ws is not None else _words([""], alpha)
        across = fa.concat_all([_nfa(_suffix(s, alpha)), middle, _nfa(_prefix(s, alpha))],
                               alpha)
        return _min(fa.union(_nfa(_factor(s, alpha)), across))
    kids = _children(t)
    head, rest = kids[0], concat(*kids[1:])
    parts = [_nfa(_factor(head, alpha)), _nfa(_factor(rest, alpha)),
             fa.concat(_nfa(_suffix(head, alpha)), _nfa(_prefix(rest, alpha)))]
    return _min(fa.union_all(parts, alpha))


def prefix_lang(t: OmegaTerm, alphabet=None) -> Dfa:
    """Minimal DFA of the finite words R-above t."""
    return _prefix(t, _alphabet_of(t, alphabet))


def suffix_lang(t: OmegaTerm, alphabet=None) -> Dfa:
    """Minimal DFA of the finite words L-above t."""
    return _suffix(t, _alphabet_of(t, alphabet))


def factor_lang(t: OmegaTerm, alphabet=None) -> Dfa:
    """Minimal DFA of the finite words J-above t."""
    return _factor(t, _alphabet_of(t, alphabet))


LANGS = {"prefix": prefix_lang, "suffix": suffix_lang, "factor": factor_lang}


def language(t: OmegaTerm, which: str, alphabet=None) -> Dfa:
    try:
        return LANGS[which](t, alphabet)
    except KeyError:
        raise ValueError(f"unknown language {which!r}; expected prefix, suffix or factor") \
            from None


# --- the substitution formulas ----------------------------------------------------


def substitution_factor_lang(v: OmegaTerm, mapping: Mapping[str, OmegaTerm], which: str,
                             alphabet=None) -> Dfa:
    """P, S or F of f(v) for a non-erasing substitution f, assembled from the
    languages of v and of the images f(b) through quotients and images of
    the letters with finite images."""
    if which not in LANGS:
        raise ValueError(f"unknown language {which!r}")
    B = tuple(sorted(mapping))
    missing = content(v) - set(B)
    if missing:
        raise SubstitutionError(f"substitution undefined on {sorted(missing)}")
    for b in B:
        if is_finite_word(mapping[b]) == "":
            raise SubstitutionError(f"substitution erases letter {b!r}")
    if alphabet is None:
        A = tuple(sorted(frozenset().union(*(content(mapping[b]) for b in B))))
    else:
        A = tuple(Alphabet.of(alphabet).letters)
    finite = {b: is_finite_word(mapping[b]) for b in B}
    C = [b for b in B if finite[b] is not None]
    fmap = {b: finite[b] for b in C}
    eps_A = _words([""], A)

    def f_image(lang: Nfa) -> Nfa:
        # f(C* n L): drop non-C transitions, then substitute the finite images
        return fa.image(fa.restrict(lang, C), fmap, A)

    def lang_of(b, kind) -> Nfa:
        if b is None:
            return eps_A
        return _nfa(LANGS[kind](mapping[b], A))

    letters_or_eps = (None,) + B
    if which == "prefix":
        pv = _nfa(prefix_lang(v, B))
        parts = [fa.concat(f_image(pv if b is None else fa.right_quotient(pv, b)),
                           lang_of(b, "prefix")) for b in letters_or_eps]
    elif which == "suffix":
        sv = _nfa(suffix_lang(v, B))
        parts = [fa.concat(lang_of(b, "suffix"),
                           f_image(sv if b is None else fa.left_quotient(sv, b)))
                 for b in letters_or_eps]
    else:
        fv = _nfa(factor_lang(v, B))
        parts = [lang_of(b, "factor") for b in sorted(content(v))]
        for b1 in letters_or_eps:
            left = fv if b1 is None else fa.left_quotient(fv, b1)
            for b2 in letters_or_eps:
                mid = left if b2 is None else fa.right_quotient(left, b2)
                parts.append(fa.concat_all([lang_of(b1, "suffix"), f_image(mid),
                                            lang_of(b2, "prefix")], A))
    return _min(fa.union_all(parts, A))


# --- regular J-classes ---------------------------------------------------------------

VERIFIED = "verified"
UNVERIFIED = "unverified-dedupe"


@dataclass(frozen=True)
class RegClass:
    """A regular J-class above a term, named by an idempotent in normal form."""
    idempotent: OmegaTerm
    status: str = VERIFIED
    merged: tuple = ()  # (term, reason) pairs folded into this class

    def __str__(self):
        text = to_text(self.idempotent)
        return text + (" UNVERIFIED" if self.status == UNVERIFIED else "")


@dataclass(frozen=True)
class _Candidate:
    source: OmegaTerm  # the omega power s^w it came from (EMPTY for the finite case)
    canonical: OmegaTerm
    idempotent: OmegaTerm
    finite_root: Optional[str]


def _candidates(t: OmegaTerm, out: list):
    if isinstance(t, OmegaPower):
        _candidates(t.base, out)
        canon = canonicalize(t)
        e = top_idempotent(canon)
        if e is None:  # the base denotes the empty word
            out.append(_Candidate(EMPTY, EMPTY, EMPTY, ""))
            return
        w = is_finite_word(t.base)
        root = "".join(primitive_root(tuple(w))) if w else None
        out.append(_Candidate(t, canon, e, root))
    elif isinstance(t, (Concat, Power)):
        for c in _children(t):
            _candidates(c, out)
    else:
        out.append(_Candidate(EMPTY, EMPTY, EMPTY, ""))


def _is_rotation(u: str, v: str) -> bool:
    return len(u) == len(v) and u in v + v


def regular_jclasses(t: OmegaTerm, kmax: int = 2,
                     engine: Optional[KClassEngine] = None) -> list[RegClass]:
    """The regular J-classes above t, one idempotent per class.

    Candidates from the recursion are merged when their normal forms or
    idempotents coincide, or when both come from finite bases whose primitive
    roots are conjugate. Remaining pairs must be told apart by their factor
    languages or by the J-classes of their k-projections (k <= kmax); pairs
    that neither separates stay separate and are flagged unverified.
    """
    cands: list[_Candidate] = []
    _candidates(t, cands)
    alpha = Alphabet(tuple(sorted(content(t)))) if content(t) else Alphabet(("a",))
    engine = engine or engine_for(alpha)
    groups: list[list] = []  # [representative candidate, merges]
    for cand in cands:
        home = None
        for g in groups:
            rep = g[0]
            if cand.canonical == rep.canonical:
                home, reason = g, "identical"
            elif (cand.finite_root and rep.finite_root
                  and _is_rotation(cand.finite_root, rep.finite_root)):
                home, reason = g, "rotation"
            elif (cand.idempotent == rep.idempotent
                  and not _separated(cand.idempotent, rep.canonical, kmax, engine)):
                # s^w = u e v with e a rotation of s^w, hence J-equivalent to it
                home, reason = g, "same-idempotent"
            if home is not None:
                break
        if home is None:
            groups.append([cand, []])
        elif cand.source is not EMPTY or reason != "identical":
            home[1].append((cand.source, reason))
    result = []
    for i, (rep, merges) in enumerate(groups):
        status = VERIFIED
        for j, (other, _) in enumerate(groups):
            if i != j and not _separated(rep.idempotent, other.idempotent, kmax, engine):
                status = UNVERIFIED
                break
        result.append(RegClass(rep.idempotent, status, tuple(merges)))
    return result


def _separated(e: OmegaTerm, f: OmegaTerm, kmax: int, engine: KClassEngine) -> bool:
    """Sound test that e and f are not J-equivalent: J-equivalent elements
    have the same finite factors and J-equivalent k-projections."""
    alpha = tuple(sorted(content(e) | content(f)))
    if _factor(e, alpha) != _factor(f, alpha):
        return True
    for k in range(1, kmax + 1):
        pe, pf = engine.project(e, k), engine.project(f, k)
        if not engine.j_equivalent(pe, pf):
            return True
    return False


# --- report ----------------------------------------------------------------------------


@dataclass
class FactorReport:
    term: OmegaTerm
    prefix_dfa: Dfa
    suffix_dfa: Dfa
    factor_dfa: Dfa
    reg_jclasses: list = field(default_factory=list)

    @classmethod
    def build(cls, t: OmegaTerm, alphabet=None, kmax: int = 2) -> "FactorReport":
        return cls(t, prefix_lang(t, alphabet), suffix_lang(t, alphabet),
                   factor_lang(t, alphabet), regular_jclasses(t, kmax))


__all__ = ["prefix_lang", "suffix_lang", "factor_lang", "language", "substitution_factor_lang",
           "regular_jclasses", "RegClass", "FactorReport", "SubstitutionError", "VERIFIED",
           "UNVERIFIED"]
