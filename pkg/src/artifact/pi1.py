"""The surface group pi1(N_g) = < x1..xg | x1^2 x2^2 ... xg^2 >.

Letters are nonzero ints: ``i`` is x_i and ``-i`` its inverse.  Elements are
tuples of letters in normal form.

For g >= 3 normal forms come from shortlex Knuth-Bendix completion over the
order x1 < ... < xg < X1 < ... < Xg, which terminates with 8g rules.  For
g = 2 (the Klein bottle group) a dedicated normal form t^m a^n is used, with
a = x1 and t = x1 x2, where a t a^-1 = t^-1.
"""

from __future__ import annotations

import enum
import functools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

__all__ = [
    "Word",
    "CompletionError",
    "RewritingSystem",
    "knuth_bendix",
    "SurfaceGroup",
    "KleinBottleGroup",
    "GroupElement",
    "HomologyClassZ",
    "Status",
    "ConjugacyResult",
    "FiniteQuotient",
    "make_group",
    "free_reduce",
    "inverse",
    "relator",
    "format_word",
]

Word = tuple[int, ...]


def free_reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for c in w:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-c for c in reversed(w))


def relator(g: int) -> Word:
    return tuple(i for i in range(1, g + 1) for _ in (0, 1))


def format_word(w: Sequence[int]) -> str:
    """``x1x2X1`` style rendering; the empty word prints as ``1``."""
    if not w:
        return "1"
    return "".join(f"x{c}" if c > 0 else f"X{-c}" for c in w)


# --- rewriting -------------------------------------------------------------


class CompletionError(RuntimeError):
    """Knuth-Bendix exceeded its rule budget."""


@dataclass(frozen=True)
class RewritingSystem:
    rules: dict
    maxlen: int

    def normalize(self, w: Iterable[int]) -> Word:
        # Stack rewriting: only suffixes of the stack can newly match.
        rules, maxlen = self.rules, self.maxlen
        stack: list[int] = []
        pending = list(w)
        pending.reverse()
        while pending:
            stack.append(pending.pop())
            n = len(stack)
            for length in range(1, min(maxlen, n) + 1):
                rhs = rules.get(tuple(stack[n - length:]))
                if rhs is not None:
                    del stack[n - length:]
                    pending.extend(reversed(rhs))
                    break
        return tuple(stack)


def knuth_bendix(relators: Sequence[Word], order: Sequence[int], max_rules: int = 2000) -> RewritingSystem:
    """Shortlex completion of the group presentation on ``order``'s letters."""
    rank = {c: i for i, c in enumerate(order)}

    def key(w):
        return (len(w), [rank[c] for c in w])

    rules: dict[Word, Word] = {}
    maxlen = 0

    def reduce(w: Word) -> Word:
        return RewritingSystem(rules, maxlen).normalize(w) if rules else tuple(w)

    def add(a: Word, b: Word) -> bool:
        nonlocal maxlen
        a, b = reduce(a), reduce(b)
        if a == b:
            return False
        lhs, rhs = (a, b) if key(a) > key(b) else (b, a)
        rules[lhs] = rhs
        maxlen = max(maxlen, len(lhs))
        return True

    for c in order:
        add((c, -c), ())
    for r in relators:
        add(tuple(r), ())

    seen: set = set()
    while True:
        # inter-reduce until stable
        changed = True
        while changed:
            changed = False
            for lhs in list(rules):
                rhs = rules.pop(lhs)
                maxlen = max((len(x) for x in rules), default=0)
                a, b = reduce(lhs), reduce(rhs)
                if a == b:
                    changed = True
                    continue
                new = (a, b) if key(a) > key(b) else (b, a)
                if new != (lhs, rhs):
                    changed = True
                rules[new[0]] = new[1]
                maxlen = max(maxlen, len(new[0]))
        pairs = []
        items = list(rules.items())
        for l1, r1 in items:
            for l2, r2 in items:
                if (l1, l2) in seen:
                    continue
                seen.add((l1, l2))
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] == l2[:k]:
                        pairs.append((r1 + l2[k:], l1[:-k] + r2))
                if len(l2) < len(l1):
                    for i in range(len(l1) - len(l2) + 1):
                        if l1[i:i + len(l2)] == l2:
                            pairs.append((r1, l1[:i] + r2 + l1[i + len(l2):]))
        added = sum(add(a, b) for a, b in pairs)
        if len(rules) > max_rules:
            raise CompletionError(f"rule budget {max_rules} exceeded")
        if not added:
            return RewritingSystem(dict(rules), max(len(x) for x in rules))


# --- invariants ------------------------------------------------------------


@dataclass(frozen=True)
class HomologyClassZ:
    """A class in Z^g / <(2,...,2)>, stored with last coordinate in {0, 1}."""

    vector: tuple[int, ...]

    @classmethod
    def from_vector(cls, v: Sequence[int]) -> "HomologyClassZ":
        k = v[-1] // 2
        return cls(tuple(x - 2 * k for x in v))

    def __add__(self, other: "HomologyClassZ") -> "HomologyClassZ":
        return HomologyClassZ.from_vector([a + b for a, b in zip(self.vector, other.vector)])

    def is_zero(self) -> bool:
        return not any(self.vector)


class Status(enum.Enum):
    YES = "yes"
    NO = "no"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ConjugacyResult:
    status: Status
    witness: Optional[Word] = None
    reason: str = ""

    def __bool__(self) -> bool:  # pragma: no cover - guard against misuse
        raise TypeError("use .status; Inconclusive must not be coerced to a boolean")


# --- finite quotients ------------------------------------------------------


def _pmul(p, q):
    """Permutation product p*q acting on the left: (p*q)(i) = p(q(i))."""
    return tuple(p[i] for i in q)


def _pinv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


@dataclass(frozen=True)
class FiniteQuotient:
    """A homomorphism pi1(N_g) -> S_n given by generator images."""

    images: tuple[tuple[int, ...], ...]
    elements: frozenset = field(compare=False, repr=False)

    @property
    def degree(self) -> int:
        return len(self.images[0])

    def of(self, w: Iterable[int]):
        p = tuple(range(self.degree))
        for c in w:
            q = self.images[c - 1] if c > 0 else _pinv(self.images[-c - 1])
            p = _pmul(p, q)
        return p

    def conjugators(self, pairs):
        """Elements h of the image group with h a h^-1 = b for every (a, b)."""
        return [h for h in self.elements if all(_pmul(_pmul(h, a), _pinv(h)) == b for a, b in pairs)]


def _closure(gens):
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    todo = [ident]
    while todo:
        p = todo.pop()
        for gperm in gens:
            q = _pmul(p, gperm)
            if q not in seen:
                seen.add(q)
                todo.append(q)
    return frozenset(seen)


@functools.lru_cache(maxsize=None)
def _finite_quotients(g: int, count: int = 6, seed: int = 20240519) -> tuple[FiniteQuotient, ...]:
    import itertools

    rng = random.Random(seed)
    out = []
    for degree in (4, 5, 6):
        perms = list(itertools.permutations(range(degree)))
        squares: dict = {}
        for p in perms:
            squares.setdefault(_pmul(p, p), p)
        tries = 0
        made = 0
        while made < count // 3 + 1 and tries < 500:
            tries += 1
            imgs = [rng.choice(perms) for _ in range(g - 1)]
            acc = tuple(range(degree))
            for p in imgs:
                acc = _pmul(acc, _pmul(p, p))
            root = squares.get(_pinv(acc))
            if root is None:
                continue
            imgs.append(root)
            elems = _closure(imgs)
            # skip abelian images: homology already sees everything they see
            if all(_pmul(a, b) == _pmul(b, a) for a in imgs for b in imgs):
                continue
            out.append(FiniteQuotient(tuple(imgs), elems))
            made += 1
    return tuple(out)


# --- groups ----------------------------------------------------------------


@dataclass(frozen=True)
class GroupElement:
    group: "SurfaceGroup"
    word: Word

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.group.element(self.word + other.word)

    def inverse(self) -> "GroupElement":
        return self.group.element(inverse(self.word))

    def __str__(self) -> str:
        return format_word(self.word)


class SurfaceGroup:
    """pi1(N_g) with a complete rewriting system (g >= 3)."""

    def __init__(self, g: int, max_rules: int = 2000):
        if g < 2:
            raise ValueError("genus must be at least 2")
        self.g = g
        self.letters: tuple[int, ...] = tuple(range(1, g + 1)) + tuple(-i for i in range(1, g + 1))
        self.relator = relator(g)
        self._system: Optional[RewritingSystem] = None
        self._max_rules = max_rules

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.g})"

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and other.g == self.g

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.g))

    def __reduce__(self):
        return (make_group, (self.g,))

    # rewriting
    @property
    def system(self) -> RewritingSystem:
        if self._system is None:
            self._system = knuth_bendix([self.relator], self.letters, self._max_rules)
        return self._system

    def normalize(self, w: Iterable[int]) -> Word:
        return self.system.normalize(w)

    def element(self, w: Iterable[int]) -> GroupElement:
        return GroupElement(self, self.normalize(w))

    def is_identity(self, w) -> bool:
        word = w.word if isinstance(w, GroupElement) else w
        return self.normalize(word) == ()

    def equal(self, u: Iterable[int], v: Iterable[int]) -> bool:
        return self.normalize(tuple(u) + inverse(tuple(v))) == ()

    # abelian invariants
    def exponent_sums(self, w: Iterable[int]) -> list[int]:
        v = [0] * self.g
        for c in w:
            v[abs(c) - 1] += 1 if c > 0 else -1
        return v

    def abelianize_z(self, w) -> HomologyClassZ:
        word = w.word if isinstance(w, GroupElement) else w
        return HomologyClassZ.from_vector(self.exponent_sums(word))

    def abelianize_z2(self, w) -> tuple[int, ...]:
        word = w.word if isinstance(w, GroupElement) else w
        return tuple(x % 2 for x in self.exponent_sums(word))

    def orientation_character(self, w) -> int:
        word = w.word if isinstance(w, GroupElement) else w
        return -1 if len(word) % 2 else 1  # exponent-sum parity equals length parity

    def finite_quotients(self) -> tuple[FiniteQuotient, ...]:
        return _finite_quotients(self.g)

    # conjugacy
    def conj(self, c: Sequence[int], w: Sequence[int]) -> Word:
        """Normal form of c w c^-1."""
        return self.normalize(tuple(c) + tuple(w) + inverse(c))

    def minimize(self, w: Iterable[int], plateau_depth: int = 3) -> tuple[Word, Word]:
        """A short conjugate m of w together with c such that m = c w c^-1."""
        nf = self.normalize
        cur = nf(w)
        c: Word = ()
        stable = 0
        while True:
            n = len(cur)
            k = 0
            while k < n // 2 and cur[k] == -cur[n - 1 - k]:
                k += 1
            if k:
                c = nf(inverse(cur[:k]) + c)
                cur = nf(cur[k:n - k])
                stable = 0
                continue
            if n <= 1:
                return cur, c
            half = cur[: n // 2]
            rotated = nf(cur[n // 2:] + half)
            c = nf(inverse(half) + c)
            if len(rotated) < n:
                stable = 0
            else:
                stable += 1
            cur = rotated
            if stable >= 2:
                break
        while True:
            best = min(((self.conj((l,), cur), l) for l in self.letters), key=lambda t: len(t[0]))
            if len(best[0]) < len(cur):
                cur, c = best[0], nf((best[1],) + c)
                continue
            found = self._plateau_descent(cur, plateau_depth)
            if found is None:
                return cur, c
            cur, c = found[0], nf(found[1] + c)

    def _plateau_descent(self, w: Word, depth: int):
        frontier = {w: ()}
        seen = {w}
        for _ in range(depth):
            nxt = {}
            for u, cu in frontier.items():
                for l in self.letters:
                    v = self.conj((l,), u)
                    if len(v) < len(w):
                        return v, self.normalize((l,) + cu)
                    if len(v) == len(w) and v not in seen:
                        seen.add(v)
                        nxt[v] = self.normalize((l,) + cu)
            frontier = nxt
        return None

    def _invariant_mismatch(self, u: Word, v: Word) -> Optional[str]:
        if self.abelianize_z(u) != self.abelianize_z(v):
            return "homology_z"
        if self.orientation_character(u) != self.orientation_character(v):
            return "orientation_character"
        for i, q in enumerate(self.finite_quotients()):
            if not q.conjugators([(q.of(u), q.of(v))]):
                return f"finite_quotient[{i}]"
        return None

    def is_conjugate(self, u: Iterable[int], v: Iterable[int], bound: int = 16,
                     max_states: int = 50000) -> ConjugacyResult:
        """Decide whether c u c^-1 = v for some c, with a verified witness on Yes."""
        u, v = self.normalize(u), self.normalize(v)
        reason = self._invariant_mismatch(u, v)
        if reason:
            return ConjugacyResult(Status.NO, reason=reason)
        mu, cu = self.minimize(u)
        mv, cv = self.minimize(v)
        meet = self._bidirectional(mu, mv, bound, max_states)
        if meet is None:
            return ConjugacyResult(Status.INCONCLUSIVE, reason=f"no conjugator within bound {bound}")
        p, q = meet  # p mu p^-1 = q mv q^-1
        witness = self.normalize(inverse(cv) + inverse(q) + p + cu)
        if self.conj(witness, u) != v:  # pragma: no cover - defensive
            return ConjugacyResult(Status.INCONCLUSIVE, reason="witness failed verification")
        return ConjugacyResult(Status.YES, witness=witness)

    def _bidirectional(self, a: Word, b: Word, bound: int, max_states: int):
        if a == b:
            return (), ()
        cap = max(len(a), len(b)) + 2
        sides = [{a: ()}, {b: ()}]
        frontiers = [deque([a]), deque([b])]
        depth = [0, 0]
        while depth[0] + depth[1] < bound and any(frontiers):
            side = 0 if (depth[0] <= depth[1] and frontiers[0]) or not frontiers[1] else 1
            seen, other = sides[side], sides[1 - side]
            nxt: deque = deque()
            for w in frontiers[side]:
                cw = seen[w]
                for l in self.letters:
                    x = self.conj((l,), w)
                    if len(x) > cap or x in seen:
                        continue
                    cx = (l,) + cw
                    seen[x] = cx
                    if x in other:
                        pa, pb = (cx, other[x]) if side == 0 else (other[x], cx)
                        return self.normalize(pa), self.normalize(pb)
                    nxt.append(x)
                if len(seen) > max_states:
                    return None
            frontiers[side] = nxt
            depth[side] += 1
        return None


class KleinBottleGroup(SurfaceGroup):
    """pi1(N_2) via the normal form t^m a^n (a = x1, t = x1 x2, a t a^-1 = t^-1)."""

    _COORD = {1: (0, 1), -1: (0, -1), 2: (-1, -1), -2: (-1, 1)}

    def __init__(self):
        super().__init__(2)

    def __reduce__(self):
        return (make_group, (2,))

    @staticmethod
    def _mul(x, y):
        m, n = x
        p, q = y
        return (m + (p if n % 2 == 0 else -p), n + q)

    def coords(self, w: Iterable[int]) -> tuple[int, int]:
        acc = (0, 0)
        for c in w:
            acc = self._mul(acc, self._COORD[c])
        return acc

    @staticmethod
    def word_of(m: int, n: int) -> Word:
        t = (1, 2) if m >= 0 else (-2, -1)
        a = (1,) if n >= 0 else (-1,)
        return free_reduce(t * abs(m) + a * abs(n))

    def normalize(self, w: Iterable[int]) -> Word:
        return self.word_of(*self.coords(w))

    def is_conjugate(self, u, v, bound: int = 16, max_states: int = 50000) -> ConjugacyResult:
        (m, n), (m2, n2) = self.coords(u), self.coords(v)
        if n != n2:
            return ConjugacyResult(Status.NO, reason="homology_z")
        # conjugating t^m a^n by t^p a^q gives t^(p(1-(-1)^n) + (-1)^q m) a^n
        for q in (0, 1):
            s = -1 if q else 1
            if n % 2 == 0:
                if m2 == s * m:
                    p = 0
                else:
                    continue
            else:
                if (m2 - s * m) % 2:
                    continue
                p = (m2 - s * m) // 2
            witness = self.normalize(self.word_of(p, 0) + ((1,) if q else ()))
            return ConjugacyResult(Status.YES, witness=witness)
        reason = "homology_z" if (m - m2) % 2 else "klein_class"
        return ConjugacyResult(Status.NO, reason=reason)


@functools.lru_cache(maxsize=None)
def make_group(g: int) -> SurfaceGroup:
    if g < 2:
        raise ValueError("genus must be at least 2")
    return KleinBottleGroup() if g == 2 else SurfaceGroup(g)
