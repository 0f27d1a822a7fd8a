"""Omega-terms in the free pro-aperiodic monoid: k-classes, normal forms,
factor languages and finite monoids."""
from .efclass import KClassEngine, KClassId, ef_game_oracle, omega_exponent, quotient_monoid
from .factors import (factor_lang, prefix_lang, regular_jclasses, substitution_factor_lang,
                      suffix_lang)
from .monoid import FiniteMonoid, evaluate, green, is_aperiodic, omega_power
from .regword import canonicalize, equal, separate, unfold
from .term import Alphabet, OmegaTerm, parse, substitute, to_text

__all__ = ["KClassEngine", "KClassId", "ef_game_oracle", "omega_exponent", "quotient_monoid",
           "factor_lang", "prefix_lang", "regular_jclasses", "substitution_factor_lang",
           "suffix_lang", "FiniteMonoid", "evaluate", "green", "is_aperiodic", "omega_power",
           "canonicalize", "equal", "separate", "unfold", "Alphabet", "OmegaTerm", "parse",
           "substitute", "to_text"]
