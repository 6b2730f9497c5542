"""Involution signatures, NSK-maps, conjugacy classification, and blowups.

Only the signatures that involutions produce are modelled: every period is 2
and every period cycle is empty, so a signature is the tuple (h, sign, r, k).
Images into Z2 are stored as 0 (the identity) and 1 (the generator X).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from typing import Optional, Sequence

__all__ = [
    "NecError",
    "NecSignature",
    "NskMap",
    "FixedPointProfile",
    "BlowupKind",
    "RefinedKind",
    "Table2Row",
    "FlowEdge",
    "surface_genus",
    "n_count",
    "m_count",
    "topologically_conjugate",
    "fixed_point_profile",
    "blowup",
    "refined_blowup",
    "load_table2",
    "expand_row",
    "classify",
    "named_classes",
    "blowup_flow",
]


class NecError(ValueError):
    pass


@dataclass(frozen=True)
class NecSignature:
    h: int
    sign: str  # "+" or "-"
    r: int
    k: int

    def __post_init__(self):
        if self.sign not in ("+", "-"):
            raise NecError(f"sign must be '+' or '-', got {self.sign!r}")
        if min(self.h, self.r, self.k) < 0:
            raise NecError("signature entries must be non-negative")
        if self.sign == "-" and self.h < 1:
            raise NecError("a non-orientable quotient needs h >= 1")

    @property
    def genus(self) -> int:
        return surface_genus(self)

    @property
    def handle_generators(self) -> int:
        return 2 * self.h if self.sign == "+" else self.h

    @property
    def generator_count(self) -> int:
        return self.handle_generators + self.r + 2 * self.k

    def __str__(self) -> str:
        cones = ",".join(["2"] * self.r) or "-"
        cycles = ",".join(["(-)"] * self.k) or "-"
        return f"({self.h},{self.sign},[{cones}],{{{cycles}}})"


def surface_genus(sig: NecSignature) -> int:
    """Genus of the non-orientable surface double-covering the quotient."""
    if sig.sign == "+":
        return 4 * sig.h + 2 * sig.k + sig.r - 2
    return 2 * sig.h + 2 * sig.k + sig.r - 2


@dataclass(frozen=True)
class FixedPointProfile:
    isolated: int
    one_sided: int
    two_sided: int

    def __post_init__(self):
        if min(self.isolated, self.one_sided, self.two_sided) < 0:
            raise NecError("profile counts must be non-negative")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.isolated, self.one_sided, self.two_sided)

    def __str__(self) -> str:
        return f"({self.isolated},{self.one_sided},{self.two_sided})"


@dataclass(frozen=True)
class NskMap:
    """A surjection Gamma -> Z2 with a non-orientable surface-group kernel."""

    signature: NecSignature
    images: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        sig = self.signature
        if len(self.images) != sig.generator_count:
            raise NecError(f"{self.name}: expected {sig.generator_count} images, got {len(self.images)}")
        if any(v not in (0, 1) for v in self.images):
            raise NecError("images must be 0 or 1")
        if not all(self.x_images) or not all(self.c_images):
            raise NecError(f"{self.name}: cone and reflection generators must map to X")
        if (sum(self.x_images) + sum(self.e_images)) % 2:
            raise NecError(f"{self.name}: the long relation does not map to 1")
        if not any(self.images):
            raise NecError(f"{self.name}: map is not surjective")
        if surface_genus(sig) < 1:
            raise NecError(f"{self.name}: signature has no surface cover")

    @property
    def genus(self) -> int:
        return surface_genus(self.signature)

    def _slice(self, start: int, length: int) -> tuple[int, ...]:
        return self.images[start:start + length]

    @property
    def handle_images(self):
        return self._slice(0, self.signature.handle_generators)

    @property
    def x_images(self):
        return self._slice(self.signature.handle_generators, self.signature.r)

    @property
    def e_images(self):
        s = self.signature
        return self._slice(s.handle_generators + s.r, s.k)

    @property
    def c_images(self):
        s = self.signature
        return self._slice(s.handle_generators + s.r + s.k, s.k)

    def __str__(self) -> str:
        imgs = ", ".join("X" if v else "1" for v in self.images)
        return f"{self.name or 'theta'}: {self.signature} -> ({imgs})"


def n_count(theta: NskMap) -> int:
    """Number of e_j sent to X."""
    return sum(theta.e_images)


def m_count(theta: NskMap) -> int:
    """Number of glide reflections d_j sent to X (non-orientable quotients only)."""
    if theta.signature.sign != "-":
        raise NecError("m is defined only for a non-orientable quotient")
    return sum(theta.handle_images)


def topologically_conjugate(a: NskMap, b: NskMap) -> bool:
    if a.signature != b.signature:
        return False
    n = n_count(a)
    if n != n_count(b):
        return False
    sig = a.signature
    if sig.r == 0 and n == 0 and sig.sign == "-":
        ma, mb = m_count(a), m_count(b)
        return ma % 2 == mb % 2 and (ma == 0) == (mb == 0)
    return True


def fixed_point_profile(theta: NskMap) -> FixedPointProfile:
    n = n_count(theta)
    return FixedPointProfile(theta.signature.r, n, theta.signature.k - n)


# --- blowups ---------------------------------------------------------------


class BlowupKind(str, Enum):
    ISOLATED = "isolated"
    ON_CURVE = "on_reflection_curve"


class RefinedKind(str, Enum):
    ISOLATED = "isolated"
    ON_ONE_SIDED = "on_one_sided"
    ON_TWO_SIDED = "on_two_sided"

    @property
    def coarse(self) -> BlowupKind:
        return BlowupKind.ISOLATED if self is RefinedKind.ISOLATED else BlowupKind.ON_CURVE


def blowup(sig: NecSignature, kind) -> NecSignature:
    kind = BlowupKind(kind)
    if kind is BlowupKind.ISOLATED:
        if sig.r < 1:
            raise NecError("no isolated fixed point to blow up")
        return NecSignature(sig.h, sig.sign, sig.r - 1, sig.k + 1)
    if sig.k < 1:
        raise NecError("no reflection curve to blow up on")
    return NecSignature(sig.h, sig.sign, sig.r + 1, sig.k)


def refined_blowup(p: FixedPointProfile, kind) -> FixedPointProfile:
    kind = RefinedKind(kind)
    r, n, t = p.as_tuple()
    if kind is RefinedKind.ISOLATED:
        if r < 1:
            raise NecError("no isolated fixed point to blow up")
        return FixedPointProfile(r - 1, n + 1, t)
    if kind is RefinedKind.ON_ONE_SIDED:
        if n < 1:
            raise NecError("no one-sided reflection curve")
        return FixedPointProfile(r + 1, n - 1, t + 1)
    if t < 1:
        raise NecError("no two-sided reflection curve")
    return FixedPointProfile(r + 1, n + 1, t - 1)


# --- NSK-map table ----------------------------------------------------------


@dataclass(frozen=True)
class Table2Row:
    genus: int
    row: int
    signature: NecSignature
    name: str
    pattern: tuple[str, ...]  # "1", "X" or "1/X"


def _parse_table2(text: str) -> list[Table2Row]:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cols = [c.strip() for c in line.split("|")]
        if len(cols) != 5:
            raise NecError(f"table line {lineno}: expected 5 columns")
        h, sign, r, k = cols[2].split()
        pattern = tuple(cols[4].split())
        if any(p not in ("1", "X", "1/X") for p in pattern):
            raise NecError(f"table line {lineno}: bad image entry")
        rows.append(Table2Row(int(cols[0]), int(cols[1]), NecSignature(int(h), sign, int(r), int(k)),
                              cols[3], pattern))
    return rows


def load_table2(path: Optional[str] = None) -> list[Table2Row]:
    if path is None:
        text = resources.files("artifact.data").joinpath("table2.txt").read_text(encoding="ascii")
    else:
        with open(path, encoding="ascii") as fh:
            text = fh.read()
    return _parse_table2(text)


def expand_row(row: Table2Row) -> list[NskMap]:
    """Every explicit NSK-map allowed by the row's "1/X" choices."""
    choices = [(0, 1) if p == "1/X" else ((1,) if p == "X" else (0,)) for p in row.pattern]
    return [NskMap(row.signature, tuple(c), row.name) for c in itertools.product(*choices)]


def classify(maps: Sequence[NskMap]) -> list[list[NskMap]]:
    """Partition into topological-conjugacy classes, in order of first appearance."""
    classes: list[list[NskMap]] = []
    for theta in maps:
        for cls in classes:
            if topologically_conjugate(cls[0], theta):
                cls.append(theta)
                break
        else:
            classes.append([theta])
    return classes


def named_classes(genus: Optional[int] = None, rows: Optional[Sequence[Table2Row]] = None) -> dict[str, NskMap]:
    """Class label -> representative.

    A row whose choices fall into several classes gets ``,t`` suffixes in
    order of increasing m (only the genus-4 row 8 does this).
    """
    rows = load_table2() if rows is None else rows
    out: dict[str, NskMap] = {}
    for row in rows:
        if genus is not None and row.genus != genus:
            continue
        classes = classify(expand_row(row))
        if len(classes) == 1:
            rep = classes[0][0]
            out[row.name] = rep
            continue
        classes.sort(key=lambda c: m_count(c[0]))
        for t, cls in enumerate(classes, 1):
            label = f"{row.name},{t}"
            out[label] = NskMap(cls[0].signature, cls[0].images, label)
    for label, theta in out.items():
        if theta.name != label:
            out[label] = NskMap(theta.signature, theta.images, label)
    return out


@dataclass(frozen=True)
class FlowEdge:
    source: str
    kind: RefinedKind
    target: Optional[str]
    target_signature: NecSignature
    target_profile: FixedPointProfile

    @property
    def coarse_kind(self) -> BlowupKind:
        return self.kind.coarse


def blowup_flow(source_genus: int) -> list[FlowEdge]:
    """All blowup edges from genus ``source_genus`` classes to genus + 1 classes.

    Targets are matched on signature and fixed-point profile together.
    """
    if source_genus not in (2, 4):
        raise NecError("blowup flows are tabulated from genus 2 and 4 only")
    sources = named_classes(source_genus)
    targets = named_classes(source_genus + 1)
    edges = []
    for label, theta in sources.items():
        prof = fixed_point_profile(theta)
        for kind in RefinedKind:
            try:
                new_prof = refined_blowup(prof, kind)
            except NecError:
                continue
            new_sig = blowup(theta.signature, kind.coarse)
            hits = [t for t, th in targets.items()
                    if th.signature == new_sig and fixed_point_profile(th) == new_prof]
            edges.append(FlowEdge(label, kind, hits[0] if len(hits) == 1 else None, new_sig, new_prof))
    return edges
