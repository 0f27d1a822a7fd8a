"""Independent reference computations used by the tests.

Nothing here calls into the code under test except for parsing/AST types.
"""
from __future__ import annotations

import itertools
import re

from omegaterms.efclass import ef_game_oracle
from omegaterms.term import Concat, Empty, Letter, OmegaPower, Power


def words(alphabet: str, maxlen: int, minlen: int = 0):
    for n in range(minlen, maxlen + 1):
        for tup in itertools.product(alphabet, repeat=n):
            yield "".join(tup)


def spell(t, n: int) -> str:
    """Replace each omega power by its n-th power and flatten."""
    if isinstance(t, Empty):
        return ""
    if isinstance(t, Letter):
        return t.symbol
    if isinstance(t, Concat):
        return "".join(spell(c, n) for c in t.children)
    if isinstance(t, Power):
        return spell(t.base, n) * t.exponent
    if isinstance(t, OmegaPower):
        return spell(t.base, n) * n
    raise TypeError(t)


def unfolding_sets(t, n: int, maxlen: int):
    """Prefixes, suffixes and factors of length <= maxlen of the n-unfolding."""
    w = spell(t, n)
    pre = {w[:i] for i in range(min(len(w), maxlen) + 1)}
    suf = {w[len(w) - i:] for i in range(min(len(w), maxlen) + 1)}
    fac = {w[i:j] for i in range(len(w) + 1) for j in range(i, min(len(w), i + maxlen) + 1)}
    return pre, suf, fac


def ef_partition(ws, k: int) -> list[list[str]]:
    """Partition words into k-classes by pairwise game search."""
    blocks: list[list[str]] = []
    for w in ws:
        for b in blocks:
            if ef_game_oracle(b[0], w, k):
                b.append(w)
                break
        else:
            blocks.append([w])
    return blocks


def regex_lang(pattern: str, alphabet: str, maxlen: int) -> set[str]:
    rx = re.compile(pattern)
    return {w for w in words(alphabet, maxlen) if rx.fullmatch(w)}


def residual_count(member, alphabet: str, depth: int, probe: int) -> int:
    """Number of distinct left residuals u^-1 L for |u| <= depth, each
    identified by membership of u v for |v| <= probe (Myhill-Nerode)."""
    tails = list(words(alphabet, probe))
    sigs = {tuple(member(u + v) for v in tails) for u in words(alphabet, depth)}
    return len(sigs)


def brute_monoid_table(elements, mul):
    """Multiplication table from a Python callable."""
    index = {x: i for i, x in enumerate(elements)}
    return tuple(tuple(index[mul(x, y)] for y in elements) for x in elements)


def transformation_monoid(maps):
    """Closure of a list of state maps (tuples) under composition, left to right."""
    n = len(maps[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for f in frontier:
            for g in maps:
                h = tuple(g[f[q]] for q in range(n))
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen
