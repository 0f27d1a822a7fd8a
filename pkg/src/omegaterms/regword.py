"""Normal forms for omega-terms and the word problem in the free aperiodic monoid.

A normal form is a flat sequence of *items*: letters and omega powers whose
bases are again normal forms. Every rewrite below is an isomorphism of the
saturated words the terms denote (built from finite words, concatenation and
rho-powers), so it never changes the element of the free pro-aperiodic monoid:

* ``(x^w)^w -> x^w`` and ``(x^n)^w -> x^w``: a base is replaced by its
  primitive root, and a base of the shape ``u (vu)^w v`` is already
  idempotent;
* ``x x^w -> x^w``, ``x^w x -> x^w`` and ``x^w x^w -> x^w``: absorption, also
  through the first/last item of a base (``a (a^w b)^w -> (a^w b)^w``);
* ``(xy)^w = x (yx)^w y``: every base is rotated to its least rotation in a
  fixed total order on normal forms, and rotations that expose a
  simplification at the seam of a base are carried out;
* between two omega powers of finite words, the finite middle is chosen
  of least length among the equivalent cut positions.

Equality of normal forms is therefore sound for the word problem. Distinct
normal forms for equal elements would be a gap in the rewrite system, not a
wrong answer; :func:`equal` can cross-check against the k-projections.
"""
from __future__ import annotations

from typing import Iterable, Optional, Union

from .efclass import KClassEngine, KClassId
from .term import (Alphabet, Concat, Empty, Letter, OmegaPower, OmegaTerm, Power,
                   concat, content)


class InconsistencyError(AssertionError):
    """A k-projection refutes an equality claimed by the normal forms."""


class UnfoldLimitError(RuntimeError):
    pass


Items = tuple


def items_of(t: OmegaTerm) -> Items:
    if isinstance(t, Empty):
        return ()
    if isinstance(t, Concat):
        return t.children
    return (t,)


def to_term(items: Iterable[OmegaTerm]) -> OmegaTerm:
    return concat(*items)


def _is_word(items: Items) -> bool:
    return all(isinstance(x, Letter) for x in items)


def primitive_root(seq: tuple) -> tuple:
    """Shortest r with seq = r^m, by the failure function."""
    n = len(seq)
    if n <= 1:
        return seq
    fail = [0] * n
    j = 0
    for i in range(1, n):
        while j and seq[i] != seq[j]:
            j = fail[j - 1]
        if seq[i] == seq[j]:
            j += 1
        fail[i] = j
    p = n - fail[-1]
    return seq[:p] if n % p == 0 else seq


class Normalizer:
    """Computes normal forms; memoizes per instance, optionally records rewrites.

    With ``trace`` set to a list, every rewrite step is appended to it as a
    pair ``(before, after)`` of terms denoting the same element.
    """

    def __init__(self, alphabet: Optional[Alphabet] = None, trace: Optional[list] = None):
        order = alphabet.letters if alphabet is not None else None
        self._letter_rank = (lambda c: order.index(c)) if order else ord
        self.trace = trace
        self._memo: dict = {}
        self._key_memo: dict = {}
        self._rank_memo: dict = {}
        self._absorb_memo: dict = {}

    # -- total order on items --

    def rank(self, item: OmegaTerm) -> int:
        if isinstance(item, Letter):
            return 0
        r = self._rank_memo.get(item)
        if r is None:
            r = 1 + max(self.rank(x) for x in items_of(item.base))
            self._rank_memo[item] = r
        return r

    def key(self, item: OmegaTerm) -> tuple:
        if isinstance(item, Letter):
            return (0, 0, self._letter_rank(item.symbol))
        k = self._key_memo.get(item)
        if k is None:
            k = (self.rank(item), 1, self.seq_key(items_of(item.base)))
            self._key_memo[item] = k
        return k

    def seq_key(self, seq: Items) -> tuple:
        return tuple(self.key(x) for x in seq)

    # -- entry points --

    def normalize(self, t: OmegaTerm) -> OmegaTerm:
        return to_term(self.nf(t))

    def nf(self, t: OmegaTerm) -> Items:
        hit = self._memo.get(t)
        if hit is not None:
            return hit
        if isinstance(t, Empty):
            res = ()
        elif isinstance(t, Letter):
            res = (t,)
        elif isinstance(t, Concat):
            res = self.nf_seq(tuple(x for c in t.children for x in self.nf(c)))
        elif isinstance(t, Power):
            res = self.nf_seq(self.nf(t.base) * t.exponent)
        elif isinstance(t, OmegaPower):
            res = self.nf_seq(self.nf_omega(self.nf(t.base)))
        else:
            raise TypeError(t)
        self._memo[t] = res
        return res

    def _record(self, before: Items, after: Items):
        if self.trace is not None and before != after:
            self.trace.append((to_term(before), to_term(after)))

    # -- omega powers --

    def nf_omega(self, base: Items) -> Items:
        """Items equal to base^w, with the omega power's base in normal form.

        ``base`` must be a normal form. The result may carry context items
        around the omega power; callers pass it through :meth:`nf_seq`.
        """
        if not base:
            return ()
        original = (OmegaPower(to_term(base)),)
        root = primitive_root(base)
        if len(root) == 1 and isinstance(root[0], OmegaPower):
            self._record(original, root)
            return root
        if root != base:
            self._record(original, (OmegaPower(to_term(root)),))
        # an idempotent base u (vu)^w v = (uv)^w is its own omega power
        for i, x in enumerate(root):
            if isinstance(x, OmegaPower) and root[i + 1:] + root[:i] == items_of(x.base):
                self._record(original, root)
                return root
        for i in range(1, len(root)):
            rot = root[i:] + root[:i]
            simpler = self.nf_seq(rot)
            if simpler != rot:
                out = root[:i] + (OmegaPower(to_term(rot)),) + root[i:]
                self._record(original, out)
                return self.nf_seq(root[:i] + self.nf_omega(simpler) + root[i:])
        j = min(range(len(root)), key=lambda i: self.seq_key(root[i:] + root[:i]))
        out = root[:j] + (OmegaPower(to_term(root[j:] + root[:j])),) + root[j:]
        self._record((OmegaPower(to_term(root)),), out)
        return out

    # -- absorption patterns --

    def left_absorbers(self, item: OmegaPower) -> list[Items]:
        """Item sequences p with p . item = item."""
        key = ("L", item)
        pats = self._absorb_memo.get(key)
        if pats is None:
            base = items_of(item.base)
            pats = [base, (item,)]
            if isinstance(base[0], OmegaPower):
                pats += self.left_absorbers(base[0])
            self._absorb_memo[key] = pats
        return pats

    def right_absorbers(self, item: OmegaPower) -> list[Items]:
        """Item sequences p with item . p = item."""
        key = ("R", item)
        pats = self._absorb_memo.get(key)
        if pats is None:
            base = items_of(item.base)
            pats = [base, (item,)]
            if isinstance(base[-1], OmegaPower):
                pats += self.right_absorbers(base[-1])
            self._absorb_memo[key] = pats
        return pats

    def _swallows_right(self, item: OmegaPower, seq: Items) -> bool:
        """Whether item . seq = item, by greedy stripping of absorbed prefixes."""
        pats = self.right_absorbers(item)
        while seq:
            for p in pats:
                if seq[:len(p)] == p:
                    seq = seq[len(p):]
                    break
            else:
                return False
        return True

    def _swallows_left(self, item: OmegaPower, seq: Items) -> bool:
        pats = self.left_absorbers(item)
        while seq:
            for p in pats:
                if len(p) <= len(seq) and seq[len(seq) - len(p):] == p:
                    seq = seq[:len(seq) - len(p)]
                    break
            else:
                return False
        return True

    # -- sequences --

    def nf_seq(self, seq: Items) -> Items:
        """Normal form of a sequence of normal-form items."""
        seq = self._fixpoint(tuple(seq))
        while True:
            shorter = self._unroll(seq)
            if shorter is None:
                return seq
            seq = self._fixpoint(shorter)

    def _fixpoint(self, seq: Items, seams: bool = True) -> Items:
        while True:
            step = self._step(seq, seams)
            if step is None:
                return seq
            self._record(seq, step)
            seq = step

    def _unroll(self, seq: Items) -> Optional[Items]:
        """Lookahead: x^w = x x^w = x^w x; keep an unrolled copy only if the
        sequence then normalizes to something strictly shorter."""
        for i, item in enumerate(seq):
            if not isinstance(item, OmegaPower):
                continue
            base = items_of(item.base)
            cands = [seq[:i] + base + seq[i:], seq[:i + 1] + base + seq[i + 1:]]
            # x^w r = x^w p r when x = p q and q r = r; dually on the left
            if i + 1 < len(seq) and isinstance(seq[i + 1], OmegaPower):
                cands += [seq[:i + 1] + base[:cut] + seq[i + 1:]
                          for cut in range(1, len(base))
                          if self._swallows_left(seq[i + 1], base[cut:])]
            if i >= 1 and isinstance(seq[i - 1], OmegaPower):
                cands += [seq[:i] + base[cut:] + seq[i:]
                          for cut in range(1, len(base))
                          if self._swallows_right(seq[i - 1], base[:cut])]
            # several copies, when an omega power a few letters away may absorb them
            left = self._nearest_omega(seq, i, -1)
            if left is not None:
                reach = max(map(len, self.right_absorbers(seq[left])))
                cands += [seq[:i] + base * c + seq[i:]
                          for c in range(2, reach // len(base) + 2)]
            right = self._nearest_omega(seq, i, 1)
            if right is not None:
                reach = max(map(len, self.left_absorbers(seq[right])))
                cands += [seq[:i + 1] + base * c + seq[i + 1:]
                          for c in range(2, reach // len(base) + 2)]
            for cand in cands:
                trace, self.trace = self.trace, None
                try:
                    # seam rules may undo a partial unroll right away, so try both
                    outs = [self._fixpoint(cand, seams) for seams in (True, False)]
                finally:
                    self.trace = trace
                out = min(outs, key=len)
                if len(out) < len(seq):
                    self._record(seq, cand)
                    self._record(cand, out)
                    return out
        return None

    @staticmethod
    def _nearest_omega(seq: Items, i: int, direction: int) -> Optional[int]:
        """Index of the closest omega power beyond a nonempty run of letters."""
        j = i + direction
        while 0 <= j < len(seq) and isinstance(seq[j], Letter):
            j += direction
        if j == i + direction or not 0 <= j < len(seq):
            return None
        return j

    def _step(self, seq: Items, seams: bool = True) -> Optional[Items]:
        n = len(seq)
        for i, item in enumerate(seq):
            if not isinstance(item, OmegaPower):
                continue
            for p in self.left_absorbers(item):
                m = len(p)
                if m <= i and seq[i - m:i] == p:
                    return seq[:i - m] + seq[i:]
            for p in self.right_absorbers(item):
                m = len(p)
                if i + 1 + m <= n and seq[i + 1:i + 1 + m] == p:
                    return seq[:i + 1] + seq[i + 1 + m:]
            if not seams:
                continue
            base = items_of(item.base)
            # l p item -> l item when base = q p and l absorbs q on its right
            for cut in range(1, len(base)):
                p = base[cut:]
                m = len(p)
                j = i - m
                if j >= 1 and seq[j:i] == p and isinstance(seq[j - 1], OmegaPower) \
                        and self._swallows_right(seq[j - 1], base[:cut]):
                    return seq[:j] + seq[i:]
            # item p r -> item r when base = p q and r absorbs q on its left
            for cut in range(1, len(base)):
                p = base[:cut]
                m = len(p)
                j = i + 1 + m
                if j < n and seq[i + 1:j] == p and isinstance(seq[j], OmegaPower) \
                        and self._swallows_left(seq[j], base[cut:]):
                    return seq[:i + 1] + seq[j:]
        return self._letter_seams(seq) if seams else None

    def _letter_seams(self, seq: Items) -> Optional[Items]:
        n = len(seq)
        for i, item in enumerate(seq):
            if not isinstance(item, OmegaPower):
                continue
            r = items_of(item.base)
            if not _is_word(r):
                continue
            j = i + 1
            while j < n and isinstance(seq[j], Letter):
                j += 1
            if j == n or not isinstance(seq[j], OmegaPower):
                continue
            s = items_of(seq[j].base)
            if not _is_word(s) or r == s:
                continue
            middle = _shortest_middle(r, seq[i + 1:j], s)
            if middle != seq[i + 1:j]:
                return seq[:i + 1] + middle + seq[j:]
        return None


def _shortest_middle(r: Items, middle: Items, s: Items) -> Items:
    """Least-length middle m' with r^w m s^w = r^w m' s^w, r and s primitive words.

    The two-sided infinite word ...rrr m sss... can be cut into a left part
    that is a left-infinite power of r and a right part that is a power of s
    in several ways when the periodic regions overlap; pick the cut pair with
    the shortest middle, the rightmost one on ties.
    """
    lr, ls = len(r), len(s)
    reps = len(middle) // min(lr, ls) + 3
    w = r * reps + middle + s * reps
    total = len(w)
    p_max = 0
    while p_max + lr <= total and w[p_max:p_max + lr] == r:
        p_max += lr
    q_min = total
    while q_min - ls >= 0 and w[q_min - ls:q_min] == s:
        q_min -= ls
    best = None
    d = p_max - q_min
    imax = max(0, d) // lr + 1
    jmax = max(0, d) // ls + 1
    for i in range(imax + 1):
        for j in range(jmax + 1):
            p = p_max - i * lr
            q = q_min + j * ls
            if p > q or p < 0 or q > total:
                continue
            cand = (q - p, -p)
            if best is None or cand < best[0]:
                best = (cand, p, q)
    if best is None:
        return middle
    _, p, q = best
    return tuple(w[p:q])


# --- public API ----------------------------------------------------------------


def canonicalize(t: OmegaTerm, alphabet: Union[Alphabet, str, None] = None,
                 trace: Optional[list] = None) -> OmegaTerm:
    """The normal form of ``t`` as a term without integer powers."""
    alpha = Alphabet.of(alphabet) if alphabet is not None else None
    return Normalizer(alpha, trace).normalize(t)


def top_idempotent(nf: OmegaTerm) -> Optional[OmegaTerm]:
    """The omega-power item of greatest rank in a normal form."""
    best = None
    norm = Normalizer()
    for x in items_of(nf):
        if isinstance(x, OmegaPower) and (best is None or norm.rank(x) > norm.rank(best)):
            best = x
    return best


_ENGINES: dict[tuple, KClassEngine] = {}


def engine_for(alphabet: Union[Alphabet, str, Iterable[str]]) -> KClassEngine:
    """A shared engine per alphabet (engines are not thread safe)."""
    alpha = Alphabet.of(tuple(alphabet) if not isinstance(alphabet, Alphabet) else alphabet)
    eng = _ENGINES.get(alpha.letters)
    if eng is None:
        eng = _ENGINES[alpha.letters] = KClassEngine(alpha)
    return eng


def _joint_alphabet(*terms: OmegaTerm) -> Alphabet:
    letters = sorted(frozenset().union(*(content(t) for t in terms)))
    return Alphabet(tuple(letters or ("a",)))


def separate(t1: OmegaTerm, t2: OmegaTerm, kmax: int = 4,
             engine: Optional[KClassEngine] = None) -> Optional[tuple[int, KClassId, KClassId]]:
    """Least k <= kmax whose projections differ, with both classes, or None."""
    engine = engine or engine_for(_joint_alphabet(t1, t2))
    for k in range(kmax + 1):
        c1 = engine.project(t1, k)
        c2 = engine.project(t2, k)
        if c1 != c2:
            return k, c1, c2
    return None


def equal(t1: OmegaTerm, t2: OmegaTerm, crosscheck: bool = False, kcheck: int = 4,
          engine: Optional[KClassEngine] = None) -> bool:
    """Whether t1 and t2 denote the same element of the free aperiodic monoid."""
    same = canonicalize(t1) == canonicalize(t2)
    if same and crosscheck:
        witness = separate(t1, t2, kcheck, engine)
        if witness is not None:
            k, c1, c2 = witness
            raise InconsistencyError(
                f"normal forms agree but depth-{k} projections differ ({c1} != {c2})")
    return same


def unfold(t: OmegaTerm, n: int, max_len: int = 1_000_000) -> str:
    """The finite word obtained by replacing every omega power by an n-th power."""
    if n < 1:
        raise ValueError("unfolding exponent must be at least 1")

    def length(x: OmegaTerm) -> int:
        if isinstance(x, Letter):
            return 1
        if isinstance(x, Concat):
            return sum(length(c) for c in x.children)
        if isinstance(x, Power):
            return x.exponent * length(x.base)
        if isinstance(x, OmegaPower):
            return n * length(x.base)
        return 0

    total = length(t)
    if total > max_len:
        raise UnfoldLimitError(f"unfolding has length {total} > {max_len}")

    def spell(x: OmegaTerm) -> str:
        if isinstance(x, Letter):
            return x.symbol
        if isinstance(x, Concat):
            return "".join(spell(c) for c in x.children)
        if isinstance(x, Power):
            return spell(x.base) * x.exponent
        if isinstance(x, OmegaPower):
            return spell(x.base) * n
        return ""

    return spell(t)


__all__ = ["canonicalize", "equal", "separate", "unfold", "Normalizer", "primitive_root",
           "InconsistencyError", "UnfoldLimitError", "engine_for", "top_idempotent",
           "items_of", "to_term"]
