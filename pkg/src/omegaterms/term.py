"""Omega-terms over a finite alphabet: AST, parser, printer, substitution.

Terms are immutable. The smart constructors :func:`concat`, :func:`omega`
and :func:`power` only normalize associativity and units; no algebraic
identity beyond ``1^w = 1`` is applied here.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Union


class TermError(ValueError):
    pass


class ParseError(TermError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class AlphabetError(TermError):
    pass


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise AlphabetError("alphabet must be nonempty")
        if len(set(letters)) != len(letters):
            raise AlphabetError(f"duplicate letters in alphabet {''.join(letters)!r}")
        for c in letters:
            if len(c) != 1 or not ("a" <= c <= "z"):
                raise AlphabetError(f"letters must be single lowercase characters, got {c!r}")

    @classmethod
    def of(cls, spec: Union[str, Iterable[str], "Alphabet"]) -> "Alphabet":
        if isinstance(spec, Alphabet):
            return spec
        return cls(tuple(spec))

    def index(self, letter: str) -> int:
        return self.letters.index(letter)

    def __contains__(self, letter) -> bool:
        return letter in self.letters

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return "".join(self.letters)

    def word_key(self, word: str) -> tuple:
        """Shortlex key: shorter first, then lexicographic in alphabet order."""
        return (len(word), tuple(self.letters.index(c) for c in word))


# --- AST ---------------------------------------------------------------------


class OmegaTerm:
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Empty(OmegaTerm):
    pass


@dataclass(frozen=True)
class Letter(OmegaTerm):
    symbol: str


@dataclass(frozen=True)
class Concat(OmegaTerm):
    children: tuple[OmegaTerm, ...]


@dataclass(frozen=True)
class OmegaPower(OmegaTerm):
    base: OmegaTerm


@dataclass(frozen=True)
class Power(OmegaTerm):
    base: OmegaTerm
    exponent: int


EMPTY = Empty()


def concat(*terms: OmegaTerm) -> OmegaTerm:
    children: list[OmegaTerm] = []
    for t in terms:
        if isinstance(t, Empty):
            continue
        if isinstance(t, Concat):
            children.extend(t.children)
        else:
            children.append(t)
    if not children:
        return EMPTY
    if len(children) == 1:
        return children[0]
    return Concat(tuple(children))


def omega(base: OmegaTerm) -> OmegaTerm:
    # the omega power of the empty word is the empty word
    if isinstance(base, Empty):
        return EMPTY
    return OmegaPower(base)


def power(base: OmegaTerm, exponent: int) -> OmegaTerm:
    if exponent < 0:
        raise TermError(f"negative exponent {exponent}")
    if exponent == 0 or isinstance(base, Empty):
        return EMPTY
    if exponent == 1:
        return base
    return Power(base, exponent)


def word(w: str) -> OmegaTerm:
    """The term spelling the finite word ``w``."""
    return concat(*(Letter(c) for c in w))


# --- parsing -----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, alphabet: Optional[Alphabet]):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0
        self._skip()

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def advance(self) -> str:
        c = self.text[self.pos]
        self.pos += 1
        self._skip()
        return c

    def parse_term(self) -> OmegaTerm:
        if self.peek() == "1":
            self.advance()
            t = EMPTY
        else:
            t = self.parse_seq()
        if self.pos != len(self.text):
            raise ParseError(f"unexpected {self.peek()!r}", self.pos)
        return t

    def parse_seq(self) -> OmegaTerm:
        factors = [self.parse_factor()]
        while self.peek() and (self.peek() == "(" or self.peek().isalpha()):
            factors.append(self.parse_factor())
        return concat(*factors)

    def parse_factor(self) -> OmegaTerm:
        atom = self.parse_atom()
        if self.peek() != "^":
            return atom
        self.advance()
        c = self.peek()
        if c == "w":
            self.advance()
            return omega(atom)
        if c.isdigit():
            start = self.pos
            digits = ""
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                digits += self.text[self.pos]
                self.pos += 1
            self._skip()
            if not digits:
                raise ParseError("expected exponent", start)
            return power(atom, int(digits))
        raise ParseError("expected 'w' or an integer after '^'", self.pos)

    def parse_atom(self) -> OmegaTerm:
        c = self.peek()
        if c == "(":
            self.advance()
            inner = self.parse_seq()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.advance()
            return inner
        if c and "a" <= c <= "z":
            pos = self.pos
            self.advance()
            if self.alphabet is not None and c not in self.alphabet:
                raise AlphabetError(
                    f"letter {c!r} at position {pos} not in alphabet {self.alphabet}")
            return Letter(c)
        if not c:
            raise ParseError("unexpected end of input", self.pos)
        raise ParseError(f"unexpected {c!r}", self.pos)


def parse(text: str, alphabet: Union[Alphabet, str, None] = None) -> OmegaTerm:
    """Parse ``text`` with the term grammar, e.g. ``"(ab)^w a"``.

    If ``alphabet`` is given, letters outside it raise :class:`AlphabetError`.
    """
    if alphabet is not None:
        alphabet = Alphabet.of(alphabet)
    return _Parser(text, alphabet).parse_term()


# --- printing ----------------------------------------------------------------


def _factor_text(t: OmegaTerm) -> str:
    if isinstance(t, Letter):
        return t.symbol
    if isinstance(t, OmegaPower):
        return _exp_base_text(t.base) + "^w"
    if isinstance(t, Power):
        return _exp_base_text(t.base) + f"^{t.exponent}"
    raise TypeError(t)


def _exp_base_text(base: OmegaTerm) -> str:
    if isinstance(base, Letter):
        return base.symbol
    return "(" + to_text(base) + ")"


def to_text(t: OmegaTerm) -> str:
    if isinstance(t, Empty):
        return "1"
    if isinstance(t, Concat):
        return "".join(_factor_text(c) for c in t.children)
    return _factor_text(t)


# --- transformations ---------------------------------------------------------


def transform(t: OmegaTerm, on_letter: Callable[[Letter], OmegaTerm]) -> OmegaTerm:
    if isinstance(t, Empty):
        return t
    if isinstance(t, Letter):
        return on_letter(t)
    if isinstance(t, Concat):
        return concat(*(transform(c, on_letter) for c in t.children))
    if isinstance(t, OmegaPower):
        return omega(transform(t.base, on_letter))
    if isinstance(t, Power):
        return power(transform(t.base, on_letter), t.exponent)
    raise TypeError(t)


def substitute(t: OmegaTerm, mapping: Mapping[str, OmegaTerm]) -> OmegaTerm:
    """Replace every letter ``b`` of ``t`` by ``mapping[b]``."""
    def on_letter(x: Letter) -> OmegaTerm:
        try:
            return mapping[x.symbol]
        except KeyError:
            raise TermError(f"substitution undefined on letter {x.symbol!r}") from None
    return transform(t, on_letter)


def reverse(t: OmegaTerm) -> OmegaTerm:
    """Mirror image: reverses every concatenation."""
    if isinstance(t, Concat):
        return concat(*(reverse(c) for c in reversed(t.children)))
    if isinstance(t, OmegaPower):
        return omega(reverse(t.base))
    if isinstance(t, Power):
        return power(reverse(t.base), t.exponent)
    return t


def content(t: OmegaTerm) -> frozenset[str]:
    if isinstance(t, Letter):
        return frozenset(t.symbol)
    if isinstance(t, Concat):
        return frozenset().union(*(content(c) for c in t.children))
    if isinstance(t, (OmegaPower, Power)):
        return content(t.base)
    return frozenset()


def is_finite_word(t: OmegaTerm) -> Optional[str]:
    """The finite word denoted by ``t``, or None if ``t`` has a nontrivial omega power."""
    if isinstance(t, Empty):
        return ""
    if isinstance(t, Letter):
        return t.symbol
    if isinstance(t, Concat):
        parts = []
        for c in t.children:
            w = is_finite_word(c)
            if w is None:
                return None
            parts.append(w)
        return "".join(parts)
    if isinstance(t, Power):
        w = is_finite_word(t.base)
        return None if w is None else w * t.exponent
    if isinstance(t, OmegaPower):
        return "" if is_finite_word(t.base) == "" else None
    raise TypeError(t)


def omega_depth(t: OmegaTerm) -> int:
    """Maximal nesting of omega powers."""
    if isinstance(t, Concat):
        return max(omega_depth(c) for c in t.children)
    if isinstance(t, OmegaPower):
        return 1 + omega_depth(t.base)
    if isinstance(t, Power):
        return omega_depth(t.base)
    return 0


def count_omega(t: OmegaTerm) -> int:
    if isinstance(t, Concat):
        return sum(count_omega(c) for c in t.children)
    if isinstance(t, OmegaPower):
        return 1 + count_omega(t.base)
    if isinstance(t, Power):
        return count_omega(t.base)
    return 0


def size(t: OmegaTerm) -> int:
    if isinstance(t, Concat):
        return sum(size(c) for c in t.children)
    if isinstance(t, (OmegaPower, Power)):
        return 1 + size(t.base)
    if isinstance(t, Letter):
        return 1
    return 0
