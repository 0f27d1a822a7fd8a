"""k-equivalence classes of finite words.

Two words are k-equivalent when they satisfy the same first-order sentences
of quantifier depth at most k. For k >= 1 a class is determined by the set
of *position types* of a word: triples (class of the left ray at depth k-1,
letter, class of the right ray at depth k-1). Classes are interned per
depth, so equal type sets get equal ids.

:func:`ef_game_oracle` decides the same relation by brute-force search of the
Ehrenfeucht-Fraisse game and shares no code with :class:`KClassEngine`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

from .term import (Alphabet, Concat, Empty, Letter, OmegaPower, OmegaTerm, Power)


class ResourceLimitError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class KClassId:
    depth: int
    id: int

    def __str__(self):
        return f"k{self.depth}#{self.id}"


EMPTY_TAG = "empty-word-class"
TOP_TAG = "⊤"


def omega_exponent(k: int) -> int:
    """The exponent 2^k - 1 (at least 1) that stands in for omega at depth k."""
    return max(1, 2 ** k - 1)


@dataclass
class _Level:
    data: list = field(default_factory=list)
    reps: list = field(default_factory=list)
    index: dict = field(default_factory=dict)
    mul: dict = field(default_factory=dict)


class KClassEngine:
    """Interning tables and memo caches for one alphabet.

    Not thread safe: confine an engine to one thread at a time.
    """

    def __init__(self, alphabet: Union[Alphabet, str], class_cap: int = 5_000_000,
                 memo_word_len: int = 256):
        self.alphabet = Alphabet.of(alphabet)
        self.class_cap = class_cap
        self.memo_word_len = memo_word_len
        self._levels: list[_Level] = []
        self._classify_memo: dict = {}
        self._project_memo: dict = {}

    # -- interning --

    def _level(self, k: int) -> _Level:
        while len(self._levels) <= k:
            lvl = _Level()
            self._levels.append(lvl)
            if len(self._levels) == 1:
                lvl.data.append(TOP_TAG)
                lvl.reps.append("")
                lvl.index[TOP_TAG] = 0
        return self._levels[k]

    def _intern(self, k: int, data, w: str) -> KClassId:
        lvl = self._level(k)
        i = lvl.index.get(data)
        if i is None:
            if len(lvl.data) >= self.class_cap:
                raise ResourceLimitError(
                    f"more than {self.class_cap} classes at depth {k}")
            i = len(lvl.data)
            lvl.data.append(data)
            lvl.reps.append(w)
            lvl.index[data] = i
        else:
            rep = lvl.reps[i]
            if len(w) < len(rep) or (len(w) == len(rep) and
                                     self.alphabet.word_key(w) < self.alphabet.word_key(rep)):
                lvl.reps[i] = w
        return KClassId(k, i)

    def representative(self, c: KClassId) -> str:
        return self._level(c.depth).reps[c.id]

    def defining_data(self, c: KClassId):
        return self._level(c.depth).data[c.id]

    def num_classes(self, k: int) -> int:
        return len(self._level(k).data)

    # -- core operations --

    def classify(self, w: str, k: int) -> KClassId:
        if k < 0:
            raise ValueError("depth must be nonnegative")
        for c in w:
            if c not in self.alphabet:
                raise ValueError(f"letter {c!r} not in alphabet {self.alphabet}")
        return self._classify(w, k)

    def _classify(self, w: str, k: int) -> KClassId:
        if k == 0:
            self._level(0)
            return KClassId(0, 0)
        if not w:
            return self._intern(k, EMPTY_TAG, "")
        key = (w, k)
        memo = len(w) <= self.memo_word_len
        if memo:
            hit = self._classify_memo.get(key)
            if hit is not None:
                return hit
        n = len(w)
        letters = {a: self._classify(a, k - 1) for a in set(w)}
        prefix = [None] * (n + 1)
        prefix[0] = self._classify("", k - 1)
        for i, a in enumerate(w):
            prefix[i + 1] = self.mul(prefix[i], letters[a])
        suffix = [None] * (n + 1)
        suffix[n] = prefix[0]
        for i in range(n - 1, -1, -1):
            suffix[i] = self.mul(letters[w[i]], suffix[i + 1])
        data = frozenset((prefix[i].id, w[i], suffix[i + 1].id) for i in range(n))
        c = self._intern(k, data, w)
        if memo:
            self._classify_memo[key] = c
        return c

    def mul(self, c1: KClassId, c2: KClassId) -> KClassId:
        if c1.depth != c2.depth:
            raise ValueError(f"depth mismatch: {c1} * {c2}")
        k = c1.depth
        if k == 0:
            return c1
        lvl = self._level(k)
        key = (c1.id, c2.id)
        hit = lvl.mul.get(key)
        if hit is not None:
            return hit
        if lvl.data[c1.id] == EMPTY_TAG:
            res = c2
        elif lvl.data[c2.id] == EMPTY_TAG:
            res = c1
        else:
            res = self._classify(lvl.reps[c1.id] + lvl.reps[c2.id], k)
        lvl.mul[key] = res
        return res

    def power(self, c: KClassId, n: int) -> KClassId:
        result = self._classify("", c.depth)
        base = c
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def omega(self, c: KClassId) -> KClassId:
        return self.power(c, omega_exponent(c.depth))

    def project(self, t: OmegaTerm, k: int) -> KClassId:
        key = (t, k)
        hit = self._project_memo.get(key)
        if hit is not None:
            return hit
        if isinstance(t, Empty):
            res = self._classify("", k)
        elif isinstance(t, Letter):
            res = self.classify(t.symbol, k)
        elif isinstance(t, Concat):
            res = self._classify("", k)
            for child in t.children:
                res = self.mul(res, self.project(child, k))
        elif isinstance(t, Power):
            res = self.power(self.project(t.base, k), t.exponent)
        elif isinstance(t, OmegaPower):
            res = self.omega(self.project(t.base, k))
        else:
            raise TypeError(t)
        self._project_memo[key] = res
        return res

    # -- J-order in the finite quotient, by search over two-sided multiples --

    def j_below(self, e: KClassId, f: KClassId, cap: int = 100_000) -> bool:
        """Whether e lies in the two-sided ideal generated by f."""
        if e.depth != f.depth:
            raise ValueError("depth mismatch")
        k = e.depth
        gens = [self._classify(a, k) for a in self.alphabet]
        seen = {f}
        queue = deque([f])
        while queue:
            x = queue.popleft()
            if x == e:
                return True
            for g in gens:
                for y in (self.mul(g, x), self.mul(x, g)):
                    if y not in seen:
                        if len(seen) >= cap:
                            raise ResourceLimitError(f"ideal search exceeded {cap} elements")
                        seen.add(y)
                        queue.append(y)
        return False

    def j_equivalent(self, e: KClassId, f: KClassId) -> bool:
        return self.j_below(e, f) and self.j_below(f, e)


def quotient_monoid(alphabet: Union[Alphabet, str], k: int, cap: int = 100_000,
                    engine: KClassEngine | None = None):
    """The monoid of k-classes of finite words with its letter map.

    Elements are numbered in the order they are reached by breadth-first
    search from the empty word, multiplying by letters on the right, so
    element i is labelled with a shortlex-least word of its class.
    """
    from .monoid import FiniteMonoid

    alphabet = Alphabet.of(alphabet)
    engine = engine or KClassEngine(alphabet)
    one = engine.classify("", k)
    gens = [engine.classify(a, k) for a in alphabet]
    order = [one]
    index = {one: 0}
    queue = deque([one])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = engine.mul(x, g)
            if y not in index:
                if len(order) >= cap:
                    raise ResourceLimitError(
                        f"quotient monoid exceeds cap {cap} ({len(order)} classes found so far)")
                index[y] = len(order)
                order.append(y)
                queue.append(y)
    table = tuple(tuple(index[engine.mul(x, y)] for y in order) for x in order)
    labels = tuple(engine.representative(x) or "1" for x in order)
    monoid = FiniteMonoid(table, 0, labels, check=False)
    letter_map = {a: index[g] for a, g in zip(alphabet, gens)}
    return monoid, letter_map, order


# --- independent game oracle -------------------------------------------------


def ef_game_oracle(u: str, v: str, k: int, max_len: int = 64) -> bool:
    """Whether the existential player wins the k-round EF game on (u, v).

    Plain game-tree search over pebble configurations, memoized on the set of
    pebbled pairs.
    """
    if len(u) > max_len or len(v) > max_len:
        raise ResourceLimitError(f"oracle word length bound {max_len} exceeded")
    return _ef_wins(u, v, k, frozenset())


def _consistent(u: str, v: str, pairs: frozenset, i: int, j: int) -> bool:
    if u[i] != v[j]:
        return False
    for (p, q) in pairs:
        if (p < i) != (q < j) or (p == i) != (q == j):
            return False
    return True


@lru_cache(maxsize=1_000_000)
def _ef_wins(u: str, v: str, rounds: int, pairs: frozenset) -> bool:
    if rounds == 0:
        return True
    # spoiler picks in u, duplicator answers in v, and vice versa
    for i in range(len(u)):
        if not any(_consistent(u, v, pairs, i, j)
                   and _ef_wins(u, v, rounds - 1, pairs | {(i, j)})
                   for j in range(len(v))):
            return False
    for j in range(len(v)):
        if not any(_consistent(u, v, pairs, i, j)
                   and _ef_wins(u, v, rounds - 1, pairs | {(i, j)})
                   for i in range(len(u))):
            return False
    return True
