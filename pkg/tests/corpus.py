"""Shared term corpus: hand-picked shapes plus seeded random terms."""
import random

from omegaterms.generators import random_term
from omegaterms.term import parse

FIXED = ["1", "a", "(ab)^w", "a^w b a^w", "(a^w b)^w", "b(a^w b)^w a", "((ab)^w c)^w",
         "(ab)^3 c^w", "a^w (ba)^w"]


def corpus(n=50, seed=2024):
    rng = random.Random(seed)
    fixed = [parse(s) for s in FIXED]
    return fixed + [random_term(rng, "abc", rng.randint(0, 3)) for _ in range(n - len(fixed))]
