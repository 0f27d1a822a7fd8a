"""Command-line front end.

Exit status: 0 for success (and EQUAL), 1 for DISTINCT, 2 for any error.
Results go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import automata as fa
from .efclass import KClassEngine, ResourceLimitError, quotient_monoid
from .factors import SubstitutionError, language, regular_jclasses
from .monoid import MonoidError, evaluate, from_text as monoid_from_text, is_aperiodic
from .monoid import to_text as monoid_to_text
from .regword import (InconsistencyError, UnfoldLimitError, _joint_alphabet, canonicalize,
                      equal, separate, unfold)
from .term import Alphabet, TermError, content, parse, to_text


@dataclass
class Config:
    alphabet: Optional[str] = None
    kmax: int = 4
    cap_classes: int = 5_000_000
    cap_dfa: int = 100_000
    cap_monoid: int = 100_000
    cap_word: int = 1_000_000
    crosscheck: bool = True
    format: str = "text"

    def __post_init__(self):
        for name in ("cap_classes", "cap_dfa", "cap_monoid", "cap_word"):
            if getattr(self, name) <= 0:
                raise ValueError(f"--{name.replace('_', '-')} must be positive")
        if self.kmax < 0:
            raise ValueError("--kmax must be nonnegative")
        if self.format not in ("text", "dot"):
            raise ValueError("--format must be text or dot")
        if self.alphabet is not None:
            Alphabet.of(self.alphabet)

    @classmethod
    def from_args(cls, args) -> "Config":
        return cls(alphabet=args.alphabet, kmax=args.kmax, cap_classes=args.cap_classes,
                   cap_dfa=args.cap_dfa, cap_monoid=args.cap_monoid, cap_word=args.cap_word,
                   crosscheck=not args.no_crosscheck, format=args.format)

    def engine(self, *terms) -> KClassEngine:
        alpha = Alphabet.of(self.alphabet) if self.alphabet else _joint_alphabet(*terms)
        return KClassEngine(alpha, class_cap=self.cap_classes)


def _term(text: str, config: Config):
    return parse(text, config.alphabet)


def _out(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# --- commands ------------------------------------------------------------------


def cmd_eq(t1: str, t2: str, config: Config) -> int:
    u, v = _term(t1, config), _term(t2, config)
    engine = config.engine(u, v)
    if equal(u, v, crosscheck=config.crosscheck, kcheck=config.kmax, engine=engine):
        _out(f"EQUAL\n{to_text(canonicalize(u))}\n{to_text(canonicalize(v))}")
        return 0
    witness = separate(u, v, config.kmax, engine)
    if witness is None:
        _out(f"DISTINCT (no ≡_k witness ≤ {config.kmax})\n"
             f"{to_text(canonicalize(u))}\n{to_text(canonicalize(v))}")
    else:
        k, c1, c2 = witness
        _out(f"DISTINCT at k={k}\n"
             f"{c1} {engine.representative(c1) or '1'}\n"
             f"{c2} {engine.representative(c2) or '1'}")
    return 1


def cmd_canon(t: str, config: Config) -> int:
    _out(to_text(canonicalize(_term(t, config), config.alphabet)))
    return 0


def cmd_project(t: str, k: int, config: Config) -> int:
    u = _term(t, config)
    engine = config.engine(u)
    c = engine.project(u, k)
    _out(f"{c} {engine.representative(c) or '1'}")
    return 0


def _dfa_out(d, config: Config) -> str:
    return fa.to_dot(d) if config.format == "dot" else fa.to_text(d)


def cmd_factors(t: str, which: str, config: Config) -> int:
    u = _term(t, config)
    _out(_dfa_out(language(u, which, config.alphabet), config))
    return 0


def cmd_regjs(t: str, config: Config) -> int:
    u = _term(t, config)
    for rc in regular_jclasses(u, engine=config.engine(u)):
        _out(str(rc))
    return 0


def _assignment(text: str, m) -> dict:
    names = {m.label(x): x for x in m.elements}
    h = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        letter, sep, value = part.partition("=")
        if not sep or len(letter.strip()) != 1:
            raise ValueError(f"bad assignment {part!r}; expected letter=element")
        value = value.strip()
        if value in names:
            h[letter.strip()] = names[value]
        elif value.isdigit() and int(value) < len(m):
            h[letter.strip()] = int(value)
        else:
            raise ValueError(f"unknown monoid element {value!r}")
    return h


def cmd_eval(t: str, monoid_file: str, assignment: str, config: Config) -> int:
    u = _term(t, config)
    with open(monoid_file) as fh:
        m = monoid_from_text(fh.read())
    h = _assignment(assignment, m)
    missing = content(u) - set(h)
    if missing:
        raise ValueError(f"no value assigned to {sorted(missing)}")
    if not is_aperiodic(m):
        print("warning: monoid is not aperiodic", file=sys.stderr)
    x = evaluate(u, m, h)
    _out(f"{x} {m.label(x)}")
    return 0


def cmd_quotient(k: int, config: Config) -> int:
    if not config.alphabet:
        raise ValueError("quotient needs an alphabet (-A)")
    engine = KClassEngine(config.alphabet, class_cap=config.cap_classes)
    m, _, _ = quotient_monoid(config.alphabet, k, cap=config.cap_monoid, engine=engine)
    _out(monoid_to_text(m))
    return 0


def cmd_unfold(t: str, n: int, config: Config) -> int:
    _out(unfold(_term(t, config), n, max_len=config.cap_word) or "1")
    return 0


# --- argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-A", "--alphabet", help="alphabet as a string of letters, e.g. ab")
    common.add_argument("--kmax", type=int, default=4, help="largest depth for separation")
    common.add_argument("--no-crosscheck", action="store_true",
                        help="skip the projection check of claimed equalities")
    common.add_argument("--format", choices=("text", "dot"), default="text")
    common.add_argument("--cap-classes", type=int, default=5_000_000)
    common.add_argument("--cap-dfa", type=int, default=100_000)
    common.add_argument("--cap-monoid", type=int, default=100_000)
    common.add_argument("--cap-word", type=int, default=1_000_000)

    p = argparse.ArgumentParser(prog="omegaterms",
                                description="omega-terms over the free aperiodic monoid")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eq", parents=[common], help="decide equality of two terms")
    s.add_argument("t1")
    s.add_argument("t2")
    s = sub.add_parser("canon", parents=[common], help="print the normal form")
    s.add_argument("term")
    s = sub.add_parser("project", parents=[common], help="k-class of a term")
    s.add_argument("term")
    s.add_argument("-k", type=int, required=True)
    s = sub.add_parser("factors", parents=[common], help="prefix/suffix/factor DFA")
    s.add_argument("term")
    s.add_argument("--which", choices=("prefix", "suffix", "factor"), default="factor")
    s = sub.add_parser("regjs", parents=[common], help="regular J-classes above a term")
    s.add_argument("term")
    s = sub.add_parser("eval", parents=[common], help="evaluate a term in a finite monoid")
    s.add_argument("term")
    s.add_argument("monoid", help="monoid file")
    s.add_argument("assignment", help="letter=element pairs, e.g. a=0,b=1")
    s = sub.add_parser("quotient", parents=[common], help="monoid of k-classes")
    s.add_argument("-k", type=int, required=True)
    s = sub.add_parser("unfold", parents=[common], help="replace omega by an integer power")
    s.add_argument("term")
    s.add_argument("n", type=int)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = Config.from_args(args)
        fa.DFA_STATE_CAP = config.cap_dfa
        fa.MONOID_CAP = config.cap_monoid
        if args.command == "eq":
            return cmd_eq(args.t1, args.t2, config)
        if args.command == "canon":
            return cmd_canon(args.term, config)
        if args.command == "project":
            if args.k < 0:
                raise ValueError("-k must be nonnegative")
            return cmd_project(args.term, args.k, config)
        if args.command == "factors":
            return cmd_factors(args.term, args.which, config)
        if args.command == "regjs":
            return cmd_regjs(args.term, config)
        if args.command == "eval":
            return cmd_eval(args.term, args.monoid, args.assignment, config)
        if args.command == "quotient":
            if args.k < 0:
                raise ValueError("-k must be nonnegative")
            return cmd_quotient(args.k, config)
        if args.command == "unfold":
            return cmd_unfold(args.term, args.n, config)
    except (TermError, SubstitutionError, MonoidError, ResourceLimitError,
            fa.AutomatonLimitError, UnfoldLimitError, InconsistencyError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    parser.error(f"unknown command {args.command}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
