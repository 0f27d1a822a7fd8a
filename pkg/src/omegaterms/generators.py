"""Random omega-terms, equality-preserving perturbations and random automata.

Used by the test-suite and the experiment scripts; every generator takes an
explicit ``random.Random``.
"""
from __future__ import annotations

import random
from typing import Sequence

from .term import (Concat, Letter, OmegaPower, OmegaTerm, Power, concat, omega, omega_depth,
                   power)


def random_term(rng: random.Random, letters: Sequence[str], depth: int = 3,
                max_width: int = 3, p_omega: float = 0.45) -> OmegaTerm:
    """A random term of omega-depth at most ``depth``."""
    width = rng.randint(1, max_width)
    parts = []
    for _ in range(width):
        if depth > 0 and rng.random() < p_omega:
            parts.append(omega(random_term(rng, letters, depth - 1, max_width, p_omega)))
        elif rng.random() < 0.1:
            parts.append(power(Letter(rng.choice(letters)), rng.randint(2, 3)))
        else:
            parts.append(Letter(rng.choice(letters)))
    return concat(*parts)


def _nodes(t: OmegaTerm, path=()):
    yield path, t
    if isinstance(t, Concat):
        for i, c in enumerate(t.children):
            yield from _nodes(c, path + (i,))
    elif isinstance(t, (OmegaPower, Power)):
        yield from _nodes(t.base, path + (0,))


def _replace(t: OmegaTerm, path, new: OmegaTerm) -> OmegaTerm:
    if not path:
        return new
    i, rest = path[0], path[1:]
    if isinstance(t, Concat):
        children = list(t.children)
        children[i] = _replace(children[i], rest, new)
        return concat(*children)
    if isinstance(t, OmegaPower):
        return omega(_replace(t.base, rest, new))
    if isinstance(t, Power):
        return power(_replace(t.base, rest, new), t.exponent)
    raise ValueError(path)


def _rewrite_omega(rng: random.Random, node: OmegaPower) -> OmegaTerm:
    x = node.base
    choice = rng.randrange(6)
    if choice == 0:
        return omega(node)
    if choice == 1:
        return concat(x, node)
    if choice == 2:
        return concat(node, x)
    if choice == 3:
        return concat(node, node)
    if choice == 4:
        return omega(power(x, rng.randint(2, 4)))
    parts = x.children if isinstance(x, Concat) else (x,)
    if len(parts) < 2:
        return concat(x, node)
    cut = rng.randrange(1, len(parts))
    left, right = concat(*parts[:cut]), concat(*parts[cut:])
    # (xy)^w = x (yx)^w y
    return concat(left, omega(concat(right, left)), right)


def perturb(rng: random.Random, t: OmegaTerm, steps: int = 2) -> OmegaTerm:
    """Apply ``steps`` random identities of the free aperiodic monoid inside ``t``."""
    for _ in range(steps):
        targets = [(p, n) for p, n in _nodes(t) if isinstance(n, OmegaPower)]
        if not targets:
            return t
        path, node = rng.choice(targets)
        t = _replace(t, path, _rewrite_omega(rng, node))
    return t


def random_pair(rng: random.Random, letters: Sequence[str], depth: int = 3):
    """Half of the pairs are perturbations of one term, the rest independent."""
    t1 = random_term(rng, letters, depth)
    if rng.random() < 0.5:
        for _ in range(20):
            t2 = perturb(rng, t1, rng.randint(1, 3))
            if omega_depth(t2) <= depth:
                return t1, t2
        return t1, t1
    return t1, random_term(rng, letters, depth)


def random_dfa(rng: random.Random, letters: Sequence[str], nstates: int):
    from .automata import Dfa

    delta = tuple(tuple(rng.randrange(nstates) for _ in letters) for _ in range(nstates))
    accepting = frozenset(q for q in range(nstates) if rng.random() < 0.5)
    return Dfa(tuple(letters), delta, 0, accepting)
