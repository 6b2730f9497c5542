"""Free-group algebra on generator words.

Nothing here knows about mapping-class relations; ``reduce`` only cancels
adjacent inverse pairs.  Relation-aware equality lives in :mod:`artifact.action`.
"""

from __future__ import annotations

from .notation import GeneratorWord, GenLetter

__all__ = ["reduce", "invert", "concat", "conjugate", "rotate", "power"]


def _cancel(letters) -> tuple[GenLetter, ...]:
    out: list[GenLetter] = []
    for x in letters:
        if out and out[-1] == x.inverse():
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def reduce(w: GeneratorWord) -> GeneratorWord:
    return GeneratorWord(w.genus, _cancel(w.letters))


def invert(w: GeneratorWord) -> GeneratorWord:
    return GeneratorWord(w.genus, tuple(x.inverse() for x in reversed(w.letters)))


def concat(*ws: GeneratorWord) -> GeneratorWord:
    if not ws:
        raise ValueError("concat needs at least one word")
    genus = ws[0].genus
    letters: list[GenLetter] = []
    for w in ws:
        if w.genus != genus:
            raise ValueError("cannot concatenate words of different genus")
        letters.extend(w.letters)
    return GeneratorWord(genus, tuple(letters))


def conjugate(w: GeneratorWord, c: GeneratorWord) -> GeneratorWord:
    """``reduce(c . w . c^-1)``."""
    return reduce(concat(c, w, invert(c)))


def rotate(w: GeneratorWord, k: int) -> GeneratorWord:
    """Cyclic rotation moving the first ``k`` letters to the end.

    Equals ``conjugate(w, invert(prefix))`` up to free reduction.
    """
    if not w.letters:
        return w
    k %= len(w.letters)
    return GeneratorWord(w.genus, w.letters[k:] + w.letters[:k])


def power(w: GeneratorWord, n: int) -> GeneratorWord:
    base = w if n >= 0 else invert(w)
    return GeneratorWord(w.genus, base.letters * abs(n))
