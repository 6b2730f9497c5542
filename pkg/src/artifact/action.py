"""Mapping classes acting on pi1(N_g), and equality up to inner automorphisms.

Model: crosscaps 1..g sit in a row with the basepoint to the right of the
last one, and x_i is the loop through crosscap i.  The generator images below
are one self-consistent choice of twist and slide directions; the relation
suite in the tests pins them down.

* ``Twist(i)`` (j = i+1): x_i -> x_i X_j X_i, x_j -> x_i x_j x_j.
* ``y``: x1 -> X2 X1 x2, x2 -> X2 x1 x1 x2 x2.
* ``b`` is the twist about the curve through crosscaps 1..4.

Each fixes every other generator on the nose.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .notation import GeneratorWord, GenLetter, Kind, NotationError, word as parse_word
from .pi1 import (
    ConjugacyResult,
    HomologyClassZ,
    Status,
    SurfaceGroup,
    Word,
    free_reduce,
    inverse,
    make_group,
)

__all__ = [
    "Automorphism",
    "CurveClass",
    "generator_automorphism",
    "evaluate",
    "is_inner",
    "outer_equal",
    "apply_to_class",
    "class_matches",
    "homology_matrix_z",
    "homology_matrix_z2",
    "genus2_class",
    "DEFAULT_BOUND",
    "DEFAULT_POWER_BOUND",
]

DEFAULT_BOUND = 16
DEFAULT_POWER_BOUND = 8

WordLike = Union[GeneratorWord, str]


def _as_word(w: WordLike, genus: Optional[int] = None) -> GeneratorWord:
    if isinstance(w, GeneratorWord):
        return w
    if genus is None:
        raise ValueError("a genus is needed to parse a word string")
    return parse_word(w, genus)


# --- automorphisms ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Automorphism:
    """Generator images in normal form; ``inverse_images`` may be filled lazily."""

    group: SurfaceGroup
    images: tuple[Word, ...]
    _inverse: Optional[tuple[Word, ...]] = field(default=None, repr=False)
    _source: Optional[GeneratorWord] = field(default=None, repr=False)

    @property
    def genus(self) -> int:
        return self.group.g

    def __call__(self, w: Iterable[int]) -> Word:
        return self.apply(w)

    def apply(self, w: Iterable[int]) -> Word:
        out: list[int] = []
        for c in w:
            out.extend(self.images[c - 1] if c > 0 else inverse(self.images[-c - 1]))
        return self.group.normalize(out)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self o other``: ``other`` acts first."""
        return Automorphism(self.group, tuple(self.apply(im) for im in other.images))

    @functools.cached_property
    def inverse_images(self) -> tuple[Word, ...]:
        if self._inverse is not None:
            return self._inverse
        if self._source is None:
            raise ValueError("inverse unknown for an automorphism built from bare images")
        return _evaluate_inverse(self._source).images

    def inverse(self) -> "Automorphism":
        return Automorphism(self.group, self.inverse_images, self.images)

    def is_identity(self) -> bool:
        return all(im == self.group.normalize((i,)) for i, im in enumerate(self.images, 1))

    def well_defined(self) -> bool:
        """The relator maps to the identity of the group."""
        return self.apply(self.group.relator) == ()

    def exact_inverse(self) -> bool:
        inv = self.inverse()
        return self.compose(inv).is_identity() and inv.compose(self).is_identity()

    def __eq__(self, other) -> bool:
        return isinstance(other, Automorphism) and self.group == other.group and self.images == other.images

    def __hash__(self) -> int:
        return hash((self.group, self.images))


def identity(group: SurfaceGroup) -> Automorphism:
    ims = tuple(group.normalize((i,)) for i in range(1, group.g + 1))
    return Automorphism(group, ims, ims)


def inner(group: SurfaceGroup, u: Sequence[int]) -> Automorphism:
    """Conjugation x -> u x u^-1."""
    ims = tuple(group.conj(u, (i,)) for i in range(1, group.g + 1))
    inv = tuple(group.conj(inverse(u), (i,)) for i in range(1, group.g + 1))
    return Automorphism(group, ims, inv)


_Y_FWD = {1: (-2, -1, 2), 2: (-2, 1, 1, 2, 2)}
_Y_INV = {1: (1, 1, 2, -1, -2, -1, -1), 2: (1, 1, 2)}
_B_FWD = {
    1: (1, 2, 3, -4, -3, -3, -2, -2, -1),
    2: (1, 2, 2, 3, 3, 4, -3),
    3: (3, -4, -3, -3, -2, -2, -1, 2, 3),
    4: (-3, -2, 1, 2, 2, 3, 3, 4, 4),
}
_B_INV = {
    1: (1, 1, 2, 2, 3, 3, 4, -3, -2),
    2: (2, 3, -4, -3, -3, -2, -2, -1, 2),
    3: (-2, 1, 2, 2, 3, 3, 4),
    4: (-4, -3, -3, -2, -2, -1, 2, 3, 4),
}


def _twist_maps(i: int):
    j = i + 1
    fwd = {i: (i, -j, -i), j: (i, j, j)}
    inv = {i: (i, i, j), j: (-j, -i, j)}
    return fwd, inv


def _raw_images(letter: GenLetter) -> tuple[dict, dict]:
    if letter.kind is Kind.TWIST:
        fwd, inv = _twist_maps(letter.index)
    elif letter.kind is Kind.SLIDE:
        fwd, inv = _Y_FWD, _Y_INV
    else:
        fwd, inv = _B_FWD, _B_INV
    return (fwd, inv) if letter.sign > 0 else (inv, fwd)


def _cyclic_conjugate(u: Word, v: Word) -> bool:
    if len(u) != len(v):
        return False
    return any(u[k:] + u[:k] == v for k in range(len(u) or 1))


class ValidationError(RuntimeError):
    """A generator formula is inconsistent with the surface relation."""


@functools.lru_cache(maxsize=None)
def generator_automorphism(group: SurfaceGroup, letter: GenLetter) -> Automorphism:
    if not letter.admissible(group.g):
        raise NotationError(f"letter {letter} is not admissible at genus {group.g}")
    fwd, inv = _raw_images(letter)
    g = group.g
    free_f = tuple(fwd.get(i, (i,)) for i in range(1, g + 1))
    free_i = tuple(inv.get(i, (i,)) for i in range(1, g + 1))
    # the free image of the relator must be a cyclic conjugate of R or R^-1
    rel_img = free_reduce(x for c in group.relator for x in free_f[c - 1])
    core = rel_img
    while len(core) >= 2 and core[0] == -core[-1]:
        core = core[1:-1]
    if not (_cyclic_conjugate(core, group.relator) or _cyclic_conjugate(core, inverse(group.relator))):
        raise ValidationError(f"{letter}: relator image {core} is not a conjugate of the relator")
    phi = Automorphism(group, tuple(group.normalize(w) for w in free_f),
                       tuple(group.normalize(w) for w in free_i))
    if not phi.exact_inverse():
        raise ValidationError(f"{letter}: stored inverse is not inverse")
    return phi


def evaluate(w: WordLike, genus: Optional[int] = None) -> Automorphism:
    """The automorphism of a generator word; the rightmost letter acts first."""
    w = _as_word(w, genus)
    group = make_group(w.genus)
    acc = identity(group).images
    for letter in reversed(w.letters):
        phi = generator_automorphism(group, letter)
        acc = tuple(phi.apply(im) for im in acc)
    return Automorphism(group, acc, None, w)


def _evaluate_inverse(w: GeneratorWord) -> Automorphism:
    group = make_group(w.genus)
    acc = identity(group).images
    for letter in w.letters:
        phi = generator_automorphism(group, letter.inverse())
        acc = tuple(phi.apply(im) for im in acc)
    return Automorphism(group, acc)


# --- innerness -------------------------------------------------------------


def is_inner(phi: Automorphism, bound: int = DEFAULT_BOUND,
             power_bound: int = DEFAULT_POWER_BOUND) -> ConjugacyResult:
    """Decide whether ``phi`` is conjugation by some u; the witness is u."""
    G = phi.group
    g = G.g
    for i, im in enumerate(phi.images, 1):
        if G.abelianize_z(im) != G.abelianize_z((i,)):
            return ConjugacyResult(Status.NO, reason="homology_z")
    for k, q in enumerate(G.finite_quotients()):
        pairs = [(q.of((i,)), q.of(im)) for i, im in enumerate(phi.images, 1)]
        if not q.conjugators(pairs):
            return ConjugacyResult(Status.NO, reason=f"finite_quotient[{k}]")
    first = G.is_conjugate((1,), phi.images[0], bound=bound)
    if first.status is not Status.YES:
        return first
    u = first.witness
    # all solutions of u x1 u^-1 = phi(x1) are u x1^k
    for k in sorted(range(-power_bound, power_bound + 1), key=abs):
        uk = G.normalize(u + ((1,) * k if k >= 0 else (-1,) * -k))
        if all(G.conj(uk, (i,)) == phi.images[i - 1] for i in range(1, g + 1)):
            return ConjugacyResult(Status.YES, witness=uk)
    return ConjugacyResult(Status.INCONCLUSIVE, reason=f"no conjugator up to power bound {power_bound}")


def outer_equal(u: WordLike, v: WordLike, genus: Optional[int] = None, bound: int = DEFAULT_BOUND,
                power_bound: int = DEFAULT_POWER_BOUND) -> ConjugacyResult:
    """Whether u and v are the same mapping class (via the outer action for g >= 3)."""
    u, v = _as_word(u, genus), _as_word(v, genus)
    if u.genus != v.genus:
        raise ValueError("words of different genus")
    if u.genus == 2:
        same = genus2_class(u) == genus2_class(v)
        return ConjugacyResult(Status.YES if same else Status.NO, reason="" if same else "genus2_class")
    inv_v = GeneratorWord(v.genus, tuple(x.inverse() for x in reversed(v.letters)))
    return is_inner(evaluate(u + inv_v), bound, power_bound)


# --- curves ----------------------------------------------------------------


@dataclass(frozen=True)
class CurveClass:
    """The curve through crosscaps ``indices``, modelled by x_{i1} ... x_{il}."""

    indices: tuple[int, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.indices or list(self.indices) != sorted(set(self.indices)) or self.indices[0] < 1:
            raise ValueError("indices must be a nonempty increasing tuple of positive ints")

    @classmethod
    def gamma(cls, *indices: int) -> "CurveClass":
        return cls(tuple(indices), "g" + ",".join(map(str, indices)))

    @classmethod
    def alpha(cls, i: int) -> "CurveClass":
        return cls((i, i + 1), f"a{i}")

    @classmethod
    def beta(cls) -> "CurveClass":
        return cls((1, 2, 3, 4), "b")

    @classmethod
    def mu(cls, i: int) -> "CurveClass":
        return cls((i,), f"m{i}")

    @classmethod
    def parse(cls, text: str) -> "CurveClass":
        """``g1``, ``g3,5``, ``a2``, ``b``, ``m1`` (as used by the CLI and data files)."""
        t = text.strip()
        try:
            if t == "b":
                return cls.beta()
            head, rest = t[0], t[1:]
            nums = tuple(int(x) for x in rest.split(","))
            if head == "g":
                return cls.gamma(*nums)
            if head == "a" and len(nums) == 1:
                return cls.alpha(nums[0])
            if head == "m" and len(nums) == 1:
                return cls.mu(nums[0])
        except (ValueError, IndexError):
            pass
        raise ValueError(f"unknown curve {text!r}")

    @property
    def element(self) -> Word:
        return self.indices

    @property
    def one_sided(self) -> bool:
        return len(self.indices) % 2 == 1

    def __str__(self) -> str:
        return self.label or "g" + ",".join(map(str, self.indices))


def apply_to_class(phi: Automorphism, c: CurveClass) -> Word:
    if c.indices[-1] > phi.genus:
        raise ValueError(f"curve {c} does not exist at genus {phi.genus}")
    return phi.apply(c.element)


def class_matches(phi: Automorphism, c: CurveClass, target: CurveClass, inverted: bool,
                  bound: int = DEFAULT_BOUND) -> ConjugacyResult:
    """Is phi(c) conjugate to the target (or its inverse when ``inverted``)?"""
    t = target.element if not inverted else inverse(target.element)
    return phi.group.is_conjugate(apply_to_class(phi, c), t, bound=bound)


# --- homology --------------------------------------------------------------


def _canonical_columns(m: np.ndarray) -> np.ndarray:
    shift = m[-1, :] // 2
    return m - 2 * shift[np.newaxis, :]


def homology_matrix_z(w: Union[WordLike, Automorphism], genus: Optional[int] = None) -> np.ndarray:
    """Action on Z^g/<(2,...,2)>; columns are canonical representatives."""
    phi = w if isinstance(w, Automorphism) else evaluate(w, genus)
    G = phi.group
    m = np.array([G.exponent_sums(im) for im in phi.images], dtype=np.int64).T
    return _canonical_columns(m)


def homology_matrix_z2(w: Union[WordLike, Automorphism], genus: Optional[int] = None) -> np.ndarray:
    return homology_matrix_z(w, genus) % 2


def z_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of two homology_matrix_z results, canonicalized."""
    return _canonical_columns(a @ b)


def z_is_identity(m: np.ndarray) -> bool:
    return bool((m == np.eye(m.shape[0], dtype=m.dtype)).all())


def genus2_class(w: WordLike) -> tuple[int, int]:
    """(twist parity, slide parity): a complete invariant of M(N_2) = Z2 + Z2."""
    w = _as_word(w, 2)
    if w.genus != 2:
        raise ValueError("genus2_class needs a genus-2 word")
    twists = slides = 0
    for x in w.letters:
        if x.kind is Kind.BETA:
            raise NotationError("b does not exist at genus 2")
        if x.kind is Kind.TWIST:
            twists += 1
        else:
            slides += 1
    return twists % 2, slides % 2


def homology_class_of(group: SurfaceGroup, w: Iterable[int]) -> HomologyClassZ:
    return group.abelianize_z(tuple(w))
