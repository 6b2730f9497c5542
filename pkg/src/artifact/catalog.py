"""The involution catalog and its verification harness.

Every check returns a :class:`CheckResult`; nothing here raises on a failed
check, so a batch run always reports everything it tried.
"""

from __future__ import annotations

import functools
import time
from dataclasses import dataclass
from importlib import resources
from typing import Any, Callable, Optional, Sequence

import numpy as np

from . import nec
from .action import (
    DEFAULT_BOUND,
    DEFAULT_POWER_BOUND,
    CurveClass,
    class_matches,
    evaluate,
    genus2_class,
    homology_matrix_z,
    homology_matrix_z2,
    is_inner,
    outer_equal,
    z_is_identity,
)
from .notation import GeneratorWord, word as parse_word
from .pi1 import Status, format_word, make_group
from .words import concat, invert

__all__ = [
    "ExpectedAction",
    "InvolutionRecord",
    "YijWord",
    "Derivation",
    "CheckResult",
    "InconclusiveError",
    "load_catalog",
    "record",
    "yij_word",
    "yij_table",
    "derivations",
    "EXTRA_ACTION_CLAIMS",
    "relation_instances",
    "is_involution",
    "check_involution",
    "check_nontrivial",
    "verify_expected_actions",
    "verify_action_claim",
    "verify_derivations",
    "verify_rel_y_ij",
    "verify_relations",
    "verify_classifier",
    "verify_blowup",
    "verify_all",
    "all_checks",
]


# --- records ---------------------------------------------------------------


@dataclass(frozen=True)
class ExpectedAction:
    source: CurveClass
    target: CurveClass
    inverted: bool

    @classmethod
    def parse(cls, text: str) -> "ExpectedAction":
        src, _, dst = text.partition(">")
        inverted = dst.endswith("'")
        return cls(CurveClass.parse(src), CurveClass.parse(dst.rstrip("'")), inverted)

    def __str__(self) -> str:
        return f"{self.source}>{self.target}{chr(39) if self.inverted else ''}"


@dataclass(frozen=True)
class InvolutionRecord:
    label: str
    word_text: str
    signature: nec.NecSignature
    profile: nec.FixedPointProfile
    expected_actions: tuple[ExpectedAction, ...] = ()
    action_word_text: Optional[str] = None
    action_conjugator: Optional[str] = None

    @property
    def genus(self) -> int:
        return int(self.label.split(";")[0])

    @property
    def word(self) -> GeneratorWord:
        return parse_word(self.word_text, self.genus)

    @property
    def action_word(self) -> GeneratorWord:
        return parse_word(self.action_word_text or self.word_text, self.genus)


def _parse_catalog(text: str) -> list[InvolutionRecord]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cols = [c.strip() for c in line.split("|")]
        if len(cols) != 7:
            raise ValueError(f"catalog line {lineno}: expected 7 columns, got {len(cols)}")
        label, wtext, sig, prof, acts, aword, conj = cols
        h, sign, r, k = sig.split()
        pr = tuple(int(x) for x in prof.split())
        rec = InvolutionRecord(
            label,
            wtext,
            nec.NecSignature(int(h), sign, int(r), int(k)),
            nec.FixedPointProfile(*pr),
            tuple(ExpectedAction.parse(a) for a in acts.split()),
            aword or None,
            conj or None,
        )
        rec.word  # parse eagerly so bad data fails at load time
        out.append(rec)
    labels = [r.label for r in out]
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate catalog labels")
    return out


_CACHE: dict = {}


def load_catalog(path: Optional[str] = None) -> list[InvolutionRecord]:
    if path is not None:
        with open(path, encoding="ascii") as fh:
            return _parse_catalog(fh.read())
    if "default" not in _CACHE:
        text = resources.files("artifact.data").joinpath("catalog.txt").read_text(encoding="ascii")
        _CACHE["default"] = _parse_catalog(text)
    return list(_CACHE["default"])


def record(label: str) -> InvolutionRecord:
    for r in load_catalog():
        if r.label == label:
            return r
    raise KeyError(label)


# --- crosscap-slide words Y_{i,j} ------------------------------------------


@dataclass(frozen=True)
class YijWord:
    i: int
    j: int
    genus: int
    text: str

    @property
    def word(self) -> GeneratorWord:
        return parse_word(self.text, self.genus)


def _inv_text(letters: Sequence[str]) -> str:
    return "".join(x[:-1] if x.endswith("'") else x + "'" for x in reversed(letters))


def yij_word(i: int, j: int, genus: int) -> YijWord:
    """The word for the slide of crosscap i along the curve through crosscaps i and j."""
    g = genus
    if j == i + 1 and 1 <= i <= g - 1:
        prefix = [str(x) for k in range(i, 1, -1) for x in (k - 1, k)]
        ys = "y" if i % 2 else "y'"
        return YijWord(i, j, g, "".join(prefix) + ys + _inv_text(prefix))
    if i == j + 1 and 1 <= j <= g - 1:
        prefix = [str(x) for k in range(j, 1, -1) for x in (k - 1, k)] + ["1"]
        ys = "y" if j % 2 else "y'"
        return YijWord(i, j, g, "".join(prefix) + ys + _inv_text(prefix))
    if (i, j) == (g, 1):
        prefix = [f"{k}'" for k in range(g - 1, 0, -1)]
        return YijWord(i, j, g, "".join(prefix) + "y'" + _inv_text(prefix))
    if (i, j) == (g, g - 1):
        prefix = [x for k in range(g - 1, 1, -1) for x in (f"{k - 1}'", f"{k}'")]
        return YijWord(i, j, g, "".join(prefix) + "y" + _inv_text(prefix))
    raise ValueError(f"no word for Y_{{{i},{j}}} at genus {g}")


# Y_{5,3} is derived in the construction of the genus-5 class 2, not by the general formula.
Y53_TEXT = "3234123y21y'1'2'y'3'2'1'4'3'2'3'"


def yij_table(genus: int) -> list[YijWord]:
    g = genus
    pairs = [(i, i + 1) for i in range(1, g)] + [(i + 1, i) for i in range(1, g)]
    pairs += [(g, 1)] if (g, 1) not in pairs else []
    pairs += [(g, g - 1)] if (g, g - 1) not in pairs else []
    seen, out = set(), []
    for i, j in pairs:
        w = yij_word(i, j, g)
        if (i, j) not in seen:
            seen.add((i, j))
            out.append(w)
    if g == 5:
        out.append(YijWord(5, 3, 5, Y53_TEXT))
    return out


# --- derivation chains -----------------------------------------------------


@dataclass(frozen=True)
class Derivation:
    """Claim: ``conjugator^-1 . lhs . conjugator`` is the mapping class of ``rhs``."""

    check_id: str
    genus: int
    lhs: str
    rhs: str
    conjugator: str = ""
    note: str = ""


def _y(i: int, j: int, g: int) -> str:
    return yij_word(i, j, g).text


def _ybar(i: int, j: int, g: int) -> str:
    return _inv_text(_split_letters(_y(i, j, g)))


def _split_letters(text: str) -> list[str]:
    return [str(x) for x in parse_word(text, 5).letters]


@functools.lru_cache(maxsize=None)
def derivations() -> tuple[Derivation, ...]:
    w = {r.label: r.word_text for r in load_catalog()}
    return (
        Derivation("deriv:4;2,1", 4, _y(4, 3, 4) + "y'", w["4;2,1"], note="Y43 y'"),
        Derivation("deriv:5;2", 5, Y53_TEXT + _y(4, 3, 5) + "y'", w["5;2"], "3", note="Y53 Y43 y'"),
        Derivation("deriv:4;5", 4, "3" + _ybar(4, 3, 4) + "y", w["4;5"], "y'", note="3 Y43^-1 y"),
        Derivation("deriv:5;3,2", 5, "3'" + _ybar(5, 4, 5) + "3" + _y(5, 4, 5) + _y(4, 3, 5) + "y'",
                   w["5;3,2"], "21", note="3' Y54^-1 3 Y54 Y43 y'"),
        Derivation("deriv:5;7", 5, "b'" + _ybar(5, 1, 5) + "y'23y2y'1'2'3'", w["5;7"], note="b' Y51^-1 ..."),
        Derivation("deriv:4;3", 4, "23y(23)^2 " + _y(2, 3, 4) + "y'", w["4;3"], note="23y(23)^2 Y23 y'"),
        Derivation("deriv:4;9,1", 4, "1y'23y2y'2'1'2'3'", w["4;9,1"], "1y'23y21", note="action word"),
    )


# Curve claims about words that are not catalog entries.
EXTRA_ACTION_CLAIMS = (
    ("claim:3234123y21", 5, "3234123y21", (ExpectedAction.parse("m1>g3"), ExpectedAction.parse("a1>g3,5'"))),
)


# --- check plumbing --------------------------------------------------------


class InconclusiveError(RuntimeError):
    """The engine could neither prove nor refute a claim within its bounds."""


@dataclass
class CheckResult:
    check_id: str
    kind: str
    inputs: dict
    status: str  # pass | fail | inconclusive
    witness: Any = None
    detail: str = ""
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"check_id": self.check_id, "kind": self.kind, "inputs": self.inputs,
               "status": self.status, "elapsed_ms": round(self.elapsed_ms, 3)}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


def _timed(fn: Callable[[], CheckResult]) -> CheckResult:
    t = time.perf_counter()
    res = fn()
    res.elapsed_ms = (time.perf_counter() - t) * 1000
    return res


def _status(s: Status) -> str:
    return {Status.YES: "pass", Status.NO: "fail", Status.INCONCLUSIVE: "inconclusive"}[s]


def _word_of(w, genus: Optional[int]) -> GeneratorWord:
    return w if isinstance(w, GeneratorWord) else parse_word(w, genus)


# --- checks ----------------------------------------------------------------


def is_involution(w, genus: Optional[int] = None, bound: int = DEFAULT_BOUND,
                  power_bound: int = DEFAULT_POWER_BOUND) -> bool:
    """True iff w.w is the identity class; raises InconclusiveError when undecided."""
    w = _word_of(w, genus)
    if w.genus == 2:
        return genus2_class(w + w) == (0, 0)
    res = is_inner(evaluate(w + w), bound, power_bound)
    if res.status is Status.INCONCLUSIVE:
        raise InconclusiveError(res.reason)
    return res.status is Status.YES


def check_involution(rec: InvolutionRecord, bound: int = DEFAULT_BOUND,
                     power_bound: int = DEFAULT_POWER_BOUND) -> CheckResult:
    def run():
        w = rec.word
        inputs = {"label": rec.label, "genus": rec.genus, "word": rec.word_text}
        if w.genus == 2:
            cls = genus2_class(w + w)
            return CheckResult(f"involution:{rec.label}", "involution", inputs,
                               "pass" if cls == (0, 0) else "fail", {"genus2_class": list(cls)})
        res = is_inner(evaluate(w + w), bound, power_bound)
        witness = {"conjugator": format_word(res.witness)} if res.witness is not None else None
        return CheckResult(f"involution:{rec.label}", "involution", inputs, _status(res.status),
                           witness, res.reason)
    return _timed(run)


def check_nontrivial(rec: InvolutionRecord, bound: int = DEFAULT_BOUND,
                     power_bound: int = DEFAULT_POWER_BOUND) -> CheckResult:
    """Passes when the record's word is a non-identity class (identity for 2;2)."""
    def run():
        w = rec.word
        want_trivial = rec.label == "2;2"
        inputs = {"label": rec.label, "genus": rec.genus, "word": rec.word_text, "expect_identity": want_trivial}
        if w.genus == 2:
            cls = genus2_class(w)
            trivial = cls == (0, 0)
            return CheckResult(f"nontrivial:{rec.label}", "nontrivial", inputs,
                               "pass" if trivial == want_trivial else "fail", {"genus2_class": list(cls)})
        m2 = homology_matrix_z2(w)
        if (m2 != np.eye(w.genus, dtype=m2.dtype)).any():
            return CheckResult(f"nontrivial:{rec.label}", "nontrivial", inputs,
                               "fail" if want_trivial else "pass", {"invariant": "homology_z2"})
        mz = homology_matrix_z(w)
        if not z_is_identity(mz):
            return CheckResult(f"nontrivial:{rec.label}", "nontrivial", inputs,
                               "fail" if want_trivial else "pass", {"invariant": "homology_z"})
        res = is_inner(evaluate(w), bound, power_bound)
        if res.status is Status.NO:
            return CheckResult(f"nontrivial:{rec.label}", "nontrivial", inputs,
                               "fail" if want_trivial else "pass", {"invariant": res.reason})
        if res.status is Status.YES:
            return CheckResult(f"nontrivial:{rec.label}", "nontrivial", inputs,
                               "pass" if want_trivial else "fail", {"conjugator": format_word(res.witness)})
        return CheckResult(f"nontrivial:{rec.label}", "nontrivial", inputs, "inconclusive", None, res.reason)
    return _timed(run)


def _action_results(prefix: str, w: GeneratorWord, actions, bound: int) -> list[CheckResult]:
    phi = evaluate(w)
    out = []
    for a in actions:
        def run(a=a):
            inputs = {"genus": w.genus, "word": str(w), "curve": str(a.source),
                      "target": str(a.target), "inverted": a.inverted}
            if a.source.one_sided != a.target.one_sided:
                return CheckResult(f"{prefix}:{a}", "curve_action", inputs, "fail", None,
                                   "source and target differ in sidedness")
            res = class_matches(phi, a.source, a.target, a.inverted, bound)
            wit = {"conjugator": format_word(res.witness), "length": len(res.witness)} if res.witness is not None else None
            return CheckResult(f"{prefix}:{a}", "curve_action", inputs, _status(res.status), wit, res.reason)
        out.append(_timed(run))
    return out


def verify_expected_actions(rec: InvolutionRecord, bound: int = DEFAULT_BOUND,
                            power_bound: int = DEFAULT_POWER_BOUND) -> list[CheckResult]:
    out = _action_results(f"action:{rec.label}", rec.action_word, rec.expected_actions, bound)
    if rec.action_word_text:
        c = rec.action_conjugator or "id"
        def run():
            lhs = concat(invert(parse_word(c, rec.genus)), rec.action_word, parse_word(c, rec.genus))
            res = outer_equal(lhs, rec.word, bound=bound, power_bound=power_bound)
            inputs = {"label": rec.label, "action_word": rec.action_word_text, "conjugator": c}
            wit = {"conjugator": format_word(res.witness)} if res.witness is not None else None
            return CheckResult(f"action:{rec.label}:conj", "conjugation", inputs, _status(res.status), wit, res.reason)
        out.append(_timed(run))
    return out


def verify_action_claim(check_id: str, genus: int, text: str, actions, bound: int = DEFAULT_BOUND) -> list[CheckResult]:
    return _action_results(check_id, parse_word(text, genus), actions, bound)


def verify_derivations(bound: int = DEFAULT_BOUND, power_bound: int = DEFAULT_POWER_BOUND) -> list[CheckResult]:
    return [_check_derivation(d, bound, power_bound) for d in derivations()]


def _check_derivation(d: Derivation, bound: int, power_bound: int) -> CheckResult:
    def run():
        c = parse_word(d.conjugator or "id", d.genus)
        lhs = concat(invert(c), parse_word(d.lhs, d.genus), c)
        res = outer_equal(lhs, parse_word(d.rhs, d.genus), bound=bound, power_bound=power_bound)
        inputs = {"genus": d.genus, "lhs": d.lhs, "rhs": d.rhs, "conjugator": d.conjugator or "id", "note": d.note}
        wit = {"conjugator": format_word(res.witness)} if res.witness is not None else None
        return CheckResult(d.check_id, "derivation", inputs, _status(res.status), wit, res.reason)
    return _timed(run)


def verify_rel_y_ij(genus: int, bound: int = DEFAULT_BOUND) -> list[CheckResult]:
    """x_i goes to a conjugate of x_i^-1 and every x_k, k not in {i, j}, is fixed up to conjugacy."""
    G = make_group(genus)
    out = []
    for y in yij_table(genus):
        def run(y=y):
            phi = evaluate(y.word)
            inputs = {"genus": genus, "i": y.i, "j": y.j, "word": y.text}
            witnesses = {}
            targets = [(y.i, (-y.i,))] + [(k, (k,)) for k in range(1, genus + 1) if k not in (y.i, y.j)]
            for k, t in targets:
                res = G.is_conjugate(phi.apply((k,)), t, bound=bound)
                if res.status is not Status.YES:
                    return CheckResult(f"yij:{genus}:{y.i},{y.j}", "rel_y_ij", inputs, _status(res.status),
                                       None, f"x{k}: {res.reason}")
                witnesses[f"x{k}"] = format_word(res.witness)
            return CheckResult(f"yij:{genus}:{y.i},{y.j}", "rel_y_ij", inputs, "pass", witnesses)
        out.append(_timed(run))
    return out


def relation_instances(genus: int) -> list[tuple[str, str, str]]:
    g = genus
    rels = [(f"braid:{i}", f"{i}{i + 1}{i}", f"{i + 1}{i}{i + 1}") for i in range(1, g - 1)]
    rels += [(f"disjoint:{i},{j}", f"{i}{j}", f"{j}{i}") for i in range(1, g) for j in range(i + 2, g)]
    rels.append(("slide:1y", "1y", "y1'"))
    rels += [(f"commute:y,{i}", f"y{i}", f"{i}y") for i in range(3, g)]
    if g >= 4:
        rels.append(("commute:y,b", "yb", "by"))
    return rels


def verify_relations(genus: int, bound: int = DEFAULT_BOUND, power_bound: int = DEFAULT_POWER_BOUND) -> list[CheckResult]:
    out = []
    for rid, u, v in relation_instances(genus):
        def run(rid=rid, u=u, v=v):
            res = outer_equal(u, v, genus, bound, power_bound)
            wit = {"conjugator": format_word(res.witness)} if res.witness is not None else None
            return CheckResult(f"relation:{genus}:{rid}", "relation", {"genus": genus, "lhs": u, "rhs": v},
                               _status(res.status), wit, res.reason)
        out.append(_timed(run))
    return out


def verify_classifier() -> list[CheckResult]:
    expected = {2: 5, 3: 3, 4: 14, 5: 8}
    rows = nec.load_table2()
    out = []
    for g, want in expected.items():
        def run(g=g, want=want):
            maps = [m for r in rows if r.genus == g for m in nec.expand_row(r)]
            got = len(nec.classify(maps))
            return CheckResult(f"classify:{g}", "classifier", {"genus": g, "expected": want},
                               "pass" if got == want else "fail", {"classes": got})
        out.append(_timed(run))
    cat = {r.label: r for r in load_catalog()}
    named = {}
    for g in expected:
        named.update(nec.named_classes(g, rows))

    def consistency():
        bad = []
        if set(named) != set(cat):
            bad.append(f"label sets differ: {sorted(set(named) ^ set(cat))}")
        for lab, theta in named.items():
            rec = cat.get(lab)
            if rec is None:
                continue
            if rec.signature != theta.signature or rec.profile != nec.fixed_point_profile(theta):
                bad.append(lab)
            if theta.genus != rec.genus:
                bad.append(f"{lab}: genus")
        return CheckResult("classify:catalog", "classifier", {}, "fail" if bad else "pass", None, "; ".join(bad))
    out.append(_timed(consistency))
    return out


def verify_blowup() -> list[CheckResult]:
    out = []
    for g in (2, 4):
        def run(g=g):
            edges = nec.blowup_flow(g)
            targets = {e.target for e in edges if e.target}
            want = set(nec.named_classes(g + 1))
            missing = sorted(want - targets)
            dangling = [f"{e.source}/{e.kind.value}" for e in edges if e.target is None]
            wit = [f"{e.source} --{e.kind.value}--> {e.target}" for e in edges]
            status = "pass" if not missing and not dangling else "fail"
            return CheckResult(f"blowup:{g}->{g + 1}", "blowup_flow", {"source_genus": g}, status, wit,
                               f"missing {missing} dangling {dangling}" if status == "fail" else "")
        out.append(_timed(run))
    return out


# --- aggregation -----------------------------------------------------------


def all_checks(bound: int = DEFAULT_BOUND, power_bound: int = DEFAULT_POWER_BOUND) -> list[tuple[str, Callable[[], list[CheckResult]]]]:
    """Named thunks, one per independent unit of work, in report order."""
    jobs: list[tuple[str, Callable[[], list[CheckResult]]]] = []
    for rec in load_catalog():
        jobs.append((f"involution:{rec.label}", lambda rec=rec: [check_involution(rec, bound, power_bound)]))
    for rec in load_catalog():
        jobs.append((f"nontrivial:{rec.label}", lambda rec=rec: [check_nontrivial(rec, bound, power_bound)]))
    for rec in load_catalog():
        if rec.expected_actions:
            jobs.append((f"action:{rec.label}", lambda rec=rec: verify_expected_actions(rec, bound, power_bound)))
    for cid, g, text, acts in EXTRA_ACTION_CLAIMS:
        jobs.append((cid, lambda cid=cid, g=g, text=text, acts=acts: verify_action_claim(cid, g, text, acts, bound)))
    for d in derivations():
        jobs.append((d.check_id, lambda d=d: [_check_derivation(d, bound, power_bound)]))
    for g in (3, 4, 5):
        jobs.append((f"relation:{g}", lambda g=g: verify_relations(g, bound, power_bound)))
    for g in (3, 4, 5):
        jobs.append((f"yij:{g}", lambda g=g: verify_rel_y_ij(g, bound)))
    jobs.append(("classify", verify_classifier))
    jobs.append(("blowup", verify_blowup))
    return jobs


def verify_all(bound: int = DEFAULT_BOUND, power_bound: int = DEFAULT_POWER_BOUND) -> list[CheckResult]:
    out: list[CheckResult] = []
    for _, job in all_checks(bound, power_bound):
        out.extend(job())
    return out
