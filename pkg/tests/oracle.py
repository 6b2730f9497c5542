"""Brute-force word-problem oracle, independent of the rewriting engine.

The identity words of pi1(N_g) up to a length cap are saturated from the empty
word by inserting any cyclic rotation of R or R^-1 at any position and freely
reducing, keeping results within the cap.
"""

from __future__ import annotations

import itertools


def _free_reduce(w):
    out = []
    for c in w:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def relator_variants(g):
    r = tuple(i for i in range(1, g + 1) for _ in (0, 1))
    inv = tuple(-c for c in reversed(r))
    return {w[k:] + w[:k] for w in (r, inv) for k in range(len(w))}


def identity_words(g, cap=12):
    rels = relator_variants(g)
    seen = {()}
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            for p in range(len(w) + 1):
                for r in rels:
                    v = _free_reduce(w[:p] + r + w[p:])
                    if len(v) <= cap and v not in seen:
                        seen.add(v)
                        nxt.append(v)
        frontier = nxt
    return frozenset(seen)


def reduced_words(g, max_len):
    letters = list(range(1, g + 1)) + [-i for i in range(1, g + 1)]
    yield ()
    for n in range(1, max_len + 1):
        for w in itertools.product(letters, repeat=n):
            if all(w[i] != -w[i + 1] for i in range(n - 1)):
                yield w
