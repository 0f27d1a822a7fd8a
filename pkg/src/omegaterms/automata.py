"""Small finite-automata toolkit: NFAs with epsilon moves, DFAs, minimization.

Automata are immutable values over an explicit alphabet (a tuple of letters,
whose order fixes the canonical numbering of minimized DFAs).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

EPS = None


class AutomatonLimitError(RuntimeError):
    pass


DFA_STATE_CAP = 100_000
MONOID_CAP = 100_000


@dataclass(frozen=True)
class Nfa:
    alphabet: tuple[str, ...]
    nstates: int
    edges: frozenset  # of (src, letter or None, dst)
    initial: frozenset
    accepting: frozenset

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "edges", frozenset(self.edges))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        for (p, a, q) in self.edges:
            if not (0 <= p < self.nstates and 0 <= q < self.nstates):
                raise ValueError(f"edge {(p, a, q)} out of range")
            if a is not None and a not in self.alphabet:
                raise ValueError(f"edge letter {a!r} not in alphabet")
        if not all(0 <= q < self.nstates for q in self.initial | self.accepting):
            raise ValueError("state out of range")

    def _adjacency(self):
        adj: dict = {}
        for (p, a, q) in self.edges:
            adj.setdefault((p, a), set()).add(q)
        return adj

    def closure(self, states: Iterable[int], adj=None) -> frozenset:
        adj = adj if adj is not None else self._adjacency()
        seen = set(states)
        stack = list(seen)
        while stack:
            p = stack.pop()
            for q in adj.get((p, EPS), ()):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return frozenset(seen)

    def accepts(self, word: str) -> bool:
        adj = self._adjacency()
        cur = self.closure(self.initial, adj)
        for c in word:
            nxt = set()
            for p in cur:
                nxt.update(adj.get((p, c), ()))
            cur = self.closure(nxt, adj)
        return bool(cur & self.accepting)


@dataclass(frozen=True)
class Dfa:
    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]  # delta[state][letter index]
    initial: int
    accepting: frozenset

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "delta", tuple(tuple(r) for r in self.delta))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        n = len(self.delta)
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        for row in self.delta:
            if len(row) != len(self.alphabet) or not all(0 <= q < n for q in row):
                raise ValueError("transition function is not total")

    @property
    def nstates(self) -> int:
        return len(self.delta)

    def step(self, q: int, letter: str) -> int:
        return self.delta[q][self.alphabet.index(letter)]

    def run(self, word: str, q: Optional[int] = None) -> int:
        q = self.initial if q is None else q
        idx = {a: i for i, a in enumerate(self.alphabet)}
        for c in word:
            q = self.delta[q][idx[c]]
        return q

    def accepts(self, word: str) -> bool:
        return self.run(word) in self.accepting

    def live_states(self) -> frozenset:
        """States from which an accepting state is reachable."""
        rev: dict[int, set] = {}
        for p, row in enumerate(self.delta):
            for q in row:
                rev.setdefault(q, set()).add(p)
        live = set(self.accepting)
        stack = list(live)
        while stack:
            q = stack.pop()
            for p in rev.get(q, ()):
                if p not in live:
                    live.add(p)
                    stack.append(p)
        return frozenset(live)


# --- constructions -------------------------------------------------------------


def _merge_alphabets(*alphabets: Sequence[str]) -> tuple[str, ...]:
    out: list[str] = []
    for alpha in alphabets:
        for a in alpha:
            if a not in out:
                out.append(a)
    return tuple(out)


def from_words(words: Iterable[str], alphabet: Sequence[str]) -> Nfa:
    """Trie automaton accepting exactly ``words``."""
    alphabet = tuple(alphabet)
    edges = set()
    accepting = set()
    children: dict = {}
    n = 1
    for w in words:
        q = 0
        for c in w:
            if c not in alphabet:
                raise ValueError(f"letter {c!r} not in alphabet")
            nxt = children.get((q, c))
            if nxt is None:
                nxt = children[(q, c)] = n
                n += 1
                edges.add((q, c, nxt))
            q = nxt
        accepting.add(q)
    return Nfa(alphabet, n, edges, {0}, accepting)


def empty_language(alphabet: Sequence[str]) -> Nfa:
    return Nfa(tuple(alphabet), 1, (), {0}, ())


def epsilon_language(alphabet: Sequence[str]) -> Nfa:
    return from_words([""], alphabet)


def _shift(n: Nfa, offset: int):
    return ({(p + offset, a, q + offset) for (p, a, q) in n.edges},
            {q + offset for q in n.initial}, {q + offset for q in n.accepting})


def union(n1: Nfa, n2: Nfa) -> Nfa:
    e2, i2, f2 = _shift(n2, n1.nstates)
    return Nfa(_merge_alphabets(n1.alphabet, n2.alphabet), n1.nstates + n2.nstates,
               set(n1.edges) | e2, set(n1.initial) | i2, set(n1.accepting) | f2)


def union_all(ns: Sequence[Nfa], alphabet: Sequence[str]) -> Nfa:
    out = empty_language(alphabet)
    for n in ns:
        out = union(out, n)
    return out


def concat(n1: Nfa, n2: Nfa) -> Nfa:
    e2, i2, f2 = _shift(n2, n1.nstates)
    edges = set(n1.edges) | e2
    edges |= {(f, EPS, i) for f in n1.accepting for i in i2}
    return Nfa(_merge_alphabets(n1.alphabet, n2.alphabet), n1.nstates + n2.nstates,
               edges, n1.initial, f2)


def concat_all(ns: Sequence[Nfa], alphabet: Sequence[str]) -> Nfa:
    out = epsilon_language(alphabet)
    for n in ns:
        out = concat(out, n)
    return out


def star(n: Nfa) -> Nfa:
    e, i, f = _shift(n, 1)
    edges = e | {(0, EPS, q) for q in i} | {(q, EPS, 0) for q in f}
    return Nfa(n.alphabet, n.nstates + 1, edges, {0}, {0})


def reverse(n: Nfa) -> Nfa:
    return Nfa(n.alphabet, n.nstates, {(q, a, p) for (p, a, q) in n.edges},
               n.accepting, n.initial)


def restrict(n: Nfa, letters: Iterable[str]) -> Nfa:
    """Intersection with C* for the letter set C: drops all other transitions."""
    keep = set(letters)
    return Nfa(n.alphabet, n.nstates,
               {(p, a, q) for (p, a, q) in n.edges if a is None or a in keep},
               n.initial, n.accepting)


def left_quotient(n: Nfa, letter: str) -> Nfa:
    """a^{-1} L = {u : a u in L}."""
    adj = n._adjacency()
    start = n.closure(n.initial, adj)
    after = set()
    for p in start:
        after.update(adj.get((p, letter), ()))
    return Nfa(n.alphabet, n.nstates, n.edges, after, n.accepting)


def right_quotient(n: Nfa, letter: str) -> Nfa:
    """L a^{-1} = {u : u a in L}."""
    return reverse(left_quotient(reverse(n), letter))


def image(n: Nfa, mapping: Mapping[str, str], alphabet: Optional[Sequence[str]] = None) -> Nfa:
    """Homomorphic image under letters -> finite words (empty words allowed)."""
    out_alpha = tuple(alphabet) if alphabet is not None else _merge_alphabets(*mapping.values())
    edges = set()
    count = n.nstates
    for (p, a, q) in n.edges:
        if a is None:
            edges.add((p, EPS, q))
            continue
        w = mapping[a]
        if not w:
            edges.add((p, EPS, q))
            continue
        prev = p
        for i, c in enumerate(w):
            nxt = q if i == len(w) - 1 else count
            if nxt == count:
                count += 1
            edges.add((prev, c, nxt))
            prev = nxt
    return Nfa(out_alpha, count, edges, n.initial, n.accepting)


def with_alphabet(n: Nfa, alphabet: Sequence[str]) -> Nfa:
    return Nfa(_merge_alphabets(n.alphabet, alphabet), n.nstates, n.edges, n.initial,
               n.accepting)


# --- determinization and minimization ------------------------------------------


def determinize(n: Nfa, cap: Optional[int] = None) -> Dfa:
    """Subset construction; the empty subset becomes an explicit sink."""
    cap = cap or DFA_STATE_CAP
    adj = n._adjacency()
    start = n.closure(n.initial, adj)
    index = {start: 0}
    order = [start]
    delta: list[list[int]] = []
    i = 0
    while i < len(order):
        cur = order[i]
        row = []
        for a in n.alphabet:
            nxt = set()
            for p in cur:
                nxt.update(adj.get((p, a), ()))
            target = n.closure(nxt, adj)
            j = index.get(target)
            if j is None:
                if len(order) >= cap:
                    raise AutomatonLimitError(f"DFA exceeds {cap} states")
                j = index[target] = len(order)
                order.append(target)
            row.append(j)
        delta.append(row)
        i += 1
    accepting = {j for j, s in enumerate(order) if s & n.accepting}
    return Dfa(n.alphabet, delta, 0, accepting)


def _reachable(d: Dfa) -> list[int]:
    seen = {d.initial}
    order = [d.initial]
    i = 0
    while i < len(order):
        for q in d.delta[order[i]]:
            if q not in seen:
                seen.add(q)
                order.append(q)
        i += 1
    return order


def minimize(d: Dfa) -> Dfa:
    """Minimal complete DFA with canonical numbering.

    Live states are numbered in breadth-first order from the initial state
    (letters in alphabet order); the dead state, if any, comes last.
    """
    reach = _reachable(d)
    # Moore partition refinement on the reachable part
    block = {q: (1 if q in d.accepting else 0) for q in reach}
    nblocks = len(set(block.values()))
    while True:
        sig = {q: (block[q],) + tuple(block[r] for r in d.delta[q]) for q in reach}
        ids: dict = {}
        new = {q: ids.setdefault(sig[q], len(ids)) for q in reach}
        if len(ids) == nblocks:
            block = new
            break
        block, nblocks = new, len(ids)
    rep = {}
    for q in reach:
        rep.setdefault(block[q], q)
    quotient = {b: tuple(block[r] for r in d.delta[q]) for b, q in rep.items()}
    accepting_blocks = {block[q] for q in reach if q in d.accepting}
    # dead block: cannot reach an accepting block
    live = set(accepting_blocks)
    changed = True
    while changed:
        changed = False
        for b, row in quotient.items():
            if b not in live and any(r in live for r in row):
                live.add(b)
                changed = True
    start = block[d.initial]
    numbering: dict[int, int] = {}
    queue = deque()
    if start in live:
        numbering[start] = 0
        queue.append(start)
    while queue:
        b = queue.popleft()
        for r in quotient[b]:
            if r in live and r not in numbering:
                numbering[r] = len(numbering)
                queue.append(r)
    dead = [b for b in quotient if b not in live]
    if dead:
        sink = len(numbering)
        for b in dead:
            numbering[b] = sink
    n = len(set(numbering.values()))
    delta = [None] * n
    for b, row in quotient.items():
        delta[numbering[b]] = tuple(numbering[r] for r in row)
    accepting = {numbering[b] for b in accepting_blocks}
    return Dfa(d.alphabet, tuple(delta), numbering[start], accepting)


def to_nfa(d: Dfa) -> Nfa:
    edges = {(p, a, q) for p, row in enumerate(d.delta) for a, q in zip(d.alphabet, row)}
    return Nfa(d.alphabet, d.nstates, edges, {d.initial}, d.accepting)


def minimal(n: Nfa, alphabet: Optional[Sequence[str]] = None) -> Dfa:
    if alphabet is not None:
        n = with_alphabet(n, alphabet)
    return minimize(determinize(n))


def _align(d1: Dfa, d2: Dfa) -> tuple[Dfa, Dfa]:
    if d1.alphabet == d2.alphabet:
        return d1, d2
    alpha = _merge_alphabets(d1.alphabet, d2.alphabet)
    return minimal(to_nfa(d1), alpha), minimal(to_nfa(d2), alpha)


def equivalent(d1: Dfa, d2: Dfa) -> bool:
    d1, d2 = _align(d1, d2)
    return minimize(d1) == minimize(d2)


def contains(d: Dfa, w: str) -> bool:
    return d.accepts(w)


def is_subset(d1: Dfa, d2: Dfa) -> bool:
    """Language inclusion by search over the product automaton."""
    d1, d2 = _align(d1, d2)
    start = (d1.initial, d2.initial)
    seen = {start}
    stack = [start]
    while stack:
        p, q = stack.pop()
        if p in d1.accepting and q not in d2.accepting:
            return False
        for i in range(len(d1.alphabet)):
            nxt = (d1.delta[p][i], d2.delta[q][i])
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return True


def enumerate_words(d: Dfa, maxlen: int) -> list[str]:
    """Accepted words of length <= maxlen in shortlex order."""
    live = d.live_states()
    out = []
    layer = [("", d.initial)] if d.initial in live else []
    for length in range(maxlen + 1):
        out.extend(w for w, q in layer if q in d.accepting)
        if length == maxlen:
            break
        layer = [(w + a, r) for w, q in layer for a, r in zip(d.alphabet, d.delta[q])
                 if r in live]
    return out


def is_finite_language(d: Dfa) -> bool:
    """No cycle through live reachable states."""
    live = d.live_states()
    reach = [q for q in _reachable(d) if q in live]
    color: dict[int, int] = {}

    def cyclic(q) -> bool:
        color[q] = 1
        for r in d.delta[q]:
            if r not in live:
                continue
            if color.get(r) == 1:
                return True
            if r not in color and cyclic(r):
                return True
        color[q] = 2
        return False

    return not any(q not in color and cyclic(q) for q in reach)


# --- transition monoid -----------------------------------------------------------


def transition_monoid(d: Dfa, cap: Optional[int] = None):
    """The monoid of state maps induced by words, with the letter map.

    Elements are numbered in breadth-first order and labelled with a
    shortlex-least word inducing them (``1`` for the identity).
    """
    from .monoid import FiniteMonoid

    cap = cap or MONOID_CAP
    n = d.nstates
    identity = tuple(range(n))
    gens = [tuple(d.delta[q][i] for q in range(n)) for i in range(len(d.alphabet))]
    order = [identity]
    labels = ["1"]
    index = {identity: 0}
    i = 0
    while i < len(order):
        f = order[i]
        for a, g in zip(d.alphabet, gens):
            h = tuple(g[f[q]] for q in range(n))  # first f, then the letter
            if h not in index:
                if len(order) >= cap:
                    raise AutomatonLimitError(f"transition monoid exceeds {cap} elements")
                index[h] = len(order)
                order.append(h)
                labels.append((labels[i] if labels[i] != "1" else "") + a)
        i += 1
    # x * y = apply x then y
    table = tuple(tuple(index[tuple(y[x[q]] for q in range(n))] for y in order) for x in order)
    letter_map = {a: index[g] for a, g in zip(d.alphabet, gens)}
    return FiniteMonoid(table, 0, tuple(labels), check=len(order) <= 60), letter_map


# --- text and DOT output ---------------------------------------------------------


def _printed_states(d: Dfa) -> list[int]:
    live = d.live_states()
    return [q for q in _reachable(d) if q in live]


def to_text(d: Dfa) -> str:
    """Line format; dead states and edges into them are omitted."""
    d = minimize(d)
    states = _printed_states(d)
    lines = [f"dfa {len(states)} {''.join(d.alphabet)}"]
    for q in states:
        flags = (" initial" if q == d.initial else "") + (" accepting" if q in d.accepting else "")
        lines.append(f"state {q}{flags}")
    keep = set(states)
    for q in states:
        for a, r in zip(d.alphabet, d.delta[q]):
            if r in keep:
                lines.append(f"edge {q} {a} {r}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Dfa:
    """Parse the line format; missing transitions go to a fresh dead state."""
    alphabet = None
    n = None
    initial = None
    accepting = set()
    edges: dict[tuple[int, str], int] = {}
    for raw in text.splitlines():
        parts = raw.split()
        if not parts:
            continue
        if parts[0] == "dfa":
            n = int(parts[1])
            alphabet = tuple(parts[2]) if len(parts) > 2 else ()
        elif parts[0] == "state":
            q = int(parts[1])
            if "initial" in parts[2:]:
                initial = q
            if "accepting" in parts[2:]:
                accepting.add(q)
        elif parts[0] == "edge":
            edges[(int(parts[1]), parts[2])] = int(parts[3])
        else:
            raise ValueError(f"unknown line {raw!r}")
    if n is None or alphabet is None:
        raise ValueError("missing 'dfa' header")
    sink = n
    delta = [tuple(edges.get((q, a), sink) for a in alphabet) for q in range(n)]
    delta.append(tuple(sink for _ in alphabet))
    return Dfa(alphabet, delta, sink if initial is None else initial, accepting)


def to_dot(d: Dfa, name: str = "dfa") -> str:
    d = minimize(d)
    states = _printed_states(d)
    keep = set(states)
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point];']
    for q in states:
        shape = "doublecircle" if q in d.accepting else "circle"
        lines.append(f"  q{q} [shape={shape}, label=\"{q}\"];")
    if d.initial in keep:
        lines.append(f"  __start -> q{d.initial};")
    for q in states:
        labels: dict[int, list[str]] = {}
        for a, r in zip(d.alphabet, d.delta[q]):
            if r in keep:
                labels.setdefault(r, []).append(a)
        for r in sorted(labels):
            lines.append(f"  q{q} -> q{r} [label=\"{','.join(labels[r])}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
