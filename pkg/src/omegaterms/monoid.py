"""Finite monoids given by multiplication table."""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .term import Concat, Empty, Letter, OmegaPower, OmegaTerm, Power


class MonoidError(ValueError):
    pass


ASSOCIATIVITY_CHECK_BOUND = 200


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    table: tuple[tuple[int, ...], ...]
    identity: int
    labels: Optional[tuple[str, ...]] = None
    check: bool = True

    def __post_init__(self):
        table = tuple(tuple(row) for row in self.table)
        object.__setattr__(self, "table", table)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
        n = len(table)
        if n == 0:
            raise MonoidError("empty monoid")
        if any(len(row) != n for row in table):
            raise MonoidError("multiplication table is not square")
        if any(not 0 <= x < n for row in table for x in row):
            raise MonoidError("table entry out of range")
        if not 0 <= self.identity < n:
            raise MonoidError("identity out of range")
        e = self.identity
        for x in range(n):
            if table[e][x] != x or table[x][e] != x:
                raise MonoidError(f"identity law fails at element {x}")
        if self.check:
            if n <= ASSOCIATIVITY_CHECK_BOUND:
                self._check_associative()
            else:
                warnings.warn(f"monoid of size {n} > {ASSOCIATIVITY_CHECK_BOUND}: "
                              "associativity trusted, not checked")

    def _check_associative(self):
        t = self.table
        r = range(len(t))
        for x, y in itertools.product(r, r):
            xy = t[x][y]
            row_y = t[y]
            row_xy = t[xy]
            row_x = t[x]
            for z in r:
                if row_xy[z] != row_x[row_y[z]]:
                    raise MonoidError(f"not associative at ({x}, {y}, {z})")

    def __len__(self):
        return len(self.table)

    def __eq__(self, other):
        return (isinstance(other, FiniteMonoid) and self.table == other.table
                and self.identity == other.identity)

    def __hash__(self):
        return hash((self.table, self.identity))

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def product(self, xs: Sequence[int]) -> int:
        acc = self.identity
        for x in xs:
            acc = self.table[acc][x]
        return acc

    def power(self, x: int, n: int) -> int:
        result, base = self.identity, x
        while n:
            if n & 1:
                result = self.table[result][base]
            n >>= 1
            if n:
                base = self.table[base][base]
        return result

    def label(self, x: int) -> str:
        if self.labels is not None:
            return self.labels[x]
        return str(x)


def is_aperiodic(m: FiniteMonoid) -> bool:
    n = len(m)
    for x in m.elements:
        p = m.power(x, n)
        if m.mul(p, x) != p:
            return False
    return True


def omega_power(m: FiniteMonoid, x: int) -> int:
    """The unique idempotent among the powers x, x^2, x^3, ..."""
    seen = {}
    powers = []
    y = x
    while y not in seen:
        seen[y] = len(powers)
        powers.append(y)
        y = m.mul(y, x)
    start = seen[y]
    period = len(powers) - start
    # x^n is idempotent for the unique multiple n of the period inside the cycle
    n = period * (start // period + 1) if start else period
    return powers[n - 1]


def idempotents(m: FiniteMonoid) -> list[int]:
    return [x for x in m.elements if m.mul(x, x) == x]


@dataclass(frozen=True)
class GreenStructure:
    """Green's quasi-orders and equivalence classes of a finite monoid.

    ``r_ideal[x]`` is the set xM, ``l_ideal[x]`` is Mx and ``j_ideal[x]`` is
    MxM; ``x <=_R y`` iff x is in yM, and so on.
    """
    r_ideal: tuple[frozenset, ...]
    l_ideal: tuple[frozenset, ...]
    j_ideal: tuple[frozenset, ...]
    r_classes: tuple[frozenset, ...]
    l_classes: tuple[frozenset, ...]
    j_classes: tuple[frozenset, ...]
    h_classes: tuple[frozenset, ...]
    idempotents: frozenset

    def r_leq(self, x, y) -> bool:
        return x in self.r_ideal[y]

    def l_leq(self, x, y) -> bool:
        return x in self.l_ideal[y]

    def j_leq(self, x, y) -> bool:
        return x in self.j_ideal[y]


def _classes(ideals) -> tuple[frozenset, ...]:
    by_ideal: dict[frozenset, set] = {}
    for x, ideal in enumerate(ideals):
        by_ideal.setdefault(ideal, set()).add(x)
    return tuple(sorted((frozenset(c) for c in by_ideal.values()), key=min))


def green(m: FiniteMonoid) -> GreenStructure:
    t = m.table
    elems = m.elements
    r_ideal = tuple(frozenset(t[x][y] for y in elems) for x in elems)
    l_ideal = tuple(frozenset(t[y][x] for y in elems) for x in elems)
    j_ideal = tuple(frozenset(t[z][y] for y in r_ideal[x] for z in elems) for x in elems)
    r_classes = _classes(r_ideal)
    l_classes = _classes(l_ideal)
    j_classes = _classes(j_ideal)
    h_classes = _classes(tuple((r_ideal[x], l_ideal[x]) for x in elems))
    return GreenStructure(r_ideal, l_ideal, j_ideal, r_classes, l_classes, j_classes,
                          h_classes, frozenset(idempotents(m)))


def evaluate(t: OmegaTerm, m: FiniteMonoid, h: Mapping[str, int]) -> int:
    """Interpret ``t`` in ``m`` with letters sent to elements by ``h``."""
    if isinstance(t, Empty):
        return m.identity
    if isinstance(t, Letter):
        return h[t.symbol]
    if isinstance(t, Concat):
        return m.product([evaluate(c, m, h) for c in t.children])
    if isinstance(t, Power):
        return m.power(evaluate(t.base, m, h), t.exponent)
    if isinstance(t, OmegaPower):
        return omega_power(m, evaluate(t.base, m, h))
    raise TypeError(t)


# --- text format -------------------------------------------------------------


def to_text(m: FiniteMonoid) -> str:
    lines = [f"monoid {len(m)}", f"identity {m.identity}"]
    for i, row in enumerate(m.table):
        lines.append(f"row {i}: " + " ".join(map(str, row)))
    if m.labels is not None:
        for i, name in enumerate(m.labels):
            lines.append(f"label {i} {name}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> FiniteMonoid:
    n = identity = None
    rows: dict[int, tuple[int, ...]] = {}
    labels: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "monoid":
                n = int(rest)
            elif head == "identity":
                identity = int(rest)
            elif head == "row":
                idx, _, entries = rest.partition(":")
                rows[int(idx)] = tuple(int(x) for x in entries.split())
            elif head == "label":
                idx, _, name = rest.strip().partition(" ")
                labels[int(idx)] = name.strip()
            else:
                raise MonoidError(f"line {lineno}: unknown directive {head!r}")
        except ValueError as exc:
            if isinstance(exc, MonoidError):
                raise
            raise MonoidError(f"line {lineno}: malformed {raw!r}") from None
    if n is None or identity is None:
        raise MonoidError("missing 'monoid' or 'identity' line")
    if sorted(rows) != list(range(n)):
        raise MonoidError(f"expected rows 0..{n - 1}")
    label_tuple = None
    if labels:
        label_tuple = tuple(labels.get(i, str(i)) for i in range(n))
    return FiniteMonoid(tuple(rows[i] for i in range(n)), identity, label_tuple)


def cyclic_group(n: int) -> FiniteMonoid:
    return FiniteMonoid(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), 0)


def u1() -> FiniteMonoid:
    """The monoid {1, 0} with 0 absorbing; element 0 is the identity here."""
    return FiniteMonoid(((0, 1), (1, 1)), 0, ("1", "0"))
