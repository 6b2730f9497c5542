"""Command-line front end: ``artifact <subcommand> ...``.

Exit codes: 0 when every requested check passes, 1 when any fails (or is
inconclusive under ``--strict``), 2 on usage errors.  ``ARTIFACT_BOUND`` and
``ARTIFACT_POWER_BOUND`` override the default search bounds.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import catalog, nec
from .action import (
    DEFAULT_BOUND,
    DEFAULT_POWER_BOUND,
    CurveClass,
    apply_to_class,
    evaluate,
    genus2_class,
    homology_matrix_z,
    homology_matrix_z2,
    outer_equal,
)
from .catalog import CheckResult
from .notation import NotationError, expand, parse, to_text
from .pi1 import Status, format_word, inverse

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


# --- output ----------------------------------------------------------------


def _aggregate(results: Sequence[CheckResult], strict: bool) -> str:
    if any(r.status == "fail" for r in results):
        return "fail"
    if any(r.status == "inconclusive" for r in results):
        return "fail" if strict else "inconclusive"
    return "pass"


def _emit_checks(results: list[CheckResult], fmt: str, strict: bool, out) -> int:
    status = _aggregate(results, strict)
    counts = {s: sum(r.status == s for r in results) for s in ("pass", "fail", "inconclusive")}
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "status": status, "strict": strict,
               "summary": counts, "checks": [r.to_json() for r in results]}
        json.dump(doc, out, indent=2, sort_keys=False)
        out.write("\n")
    else:
        out.write("| check | kind | status | detail |\n|---|---|---|---|\n")
        for r in results:
            detail = r.detail or _short_witness(r.witness)
            out.write(f"| {r.check_id} | {r.kind} | {r.status} | {detail} |\n")
        out.write(f"\n**{status}**: {counts['pass']} pass, {counts['fail']} fail, "
                  f"{counts['inconclusive']} inconclusive\n")
    return 0 if status == "pass" else 1


def _short_witness(w) -> str:
    if w is None:
        return ""
    if isinstance(w, dict):
        return ", ".join(f"{k}={v}" for k, v in w.items())
    if isinstance(w, list):
        return f"{len(w)} items"
    return str(w)


def _emit_doc(doc: dict, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(doc, out, indent=2)
        out.write("\n")
        return
    for k, v in doc.items():
        if isinstance(v, list):
            out.write(f"- **{k}**:\n")
            for item in v:
                out.write(f"  - {item}\n")
        else:
            out.write(f"- **{k}**: {v}\n")


# --- job dispatch ----------------------------------------------------------


def _run_job(args: tuple[int, int, int, Optional[tuple[str, ...]]]) -> list[CheckResult]:
    index, bound, power_bound, selection = args
    jobs = _select(catalog.all_checks(bound, power_bound), selection)
    return jobs[index][1]()


def _select(jobs, selection):
    if selection is None:
        return jobs
    return [j for j in jobs if any(j[0] == s or j[0].startswith(s + ":") or j[0] == s.rstrip(":")
                                   for s in selection)]


def _run_selected(selection: Optional[tuple[str, ...]], bound: int, power_bound: int, jobs_n: int) -> list[CheckResult]:
    jobs = _select(catalog.all_checks(bound, power_bound), selection)
    if not jobs:
        raise UsageError("no checks match the selection")
    if jobs_n <= 1:
        return [r for _, fn in jobs for r in fn()]
    with ProcessPoolExecutor(max_workers=jobs_n) as pool:
        chunks = pool.map(_run_job, [(i, bound, power_bound, selection) for i in range(len(jobs))])
        return [r for chunk in chunks for r in chunk]


# --- subcommands -----------------------------------------------------------


def cmd_parse(ns) -> int:
    expr = parse(ns.word, ns.genus)
    w = expand(expr, ns.genus)
    _emit_doc({"input": ns.word, "genus": ns.genus, "normalized": to_text(expr),
               "expanded": to_text(w), "length": len(w)}, ns.format, sys.stdout)
    return 0


def _identify(phi, image, bound: int) -> list[str]:
    """Curve classes gamma_S (or inverses) conjugate to ``image``."""
    G = phi.group
    hits = []
    for n in range(1, G.g + 1):
        for S in itertools.combinations(range(1, G.g + 1), n):
            for inv in (False, True):
                target = inverse(S) if inv else S
                if G.is_conjugate(image, target, bound=bound).status is Status.YES:
                    hits.append(f"g{','.join(map(str, S))}" + ("^-1" if inv else ""))
    return hits


def cmd_eval(ns) -> int:
    w = expand(parse(ns.word, ns.genus), ns.genus)
    phi = evaluate(w)
    doc: dict = {"genus": ns.genus, "word": to_text(w),
                 "images": [f"x{i} -> {format_word(im)}" for i, im in enumerate(phi.images, 1)],
                 "identity": phi.is_identity(),
                 "homology_z2": homology_matrix_z2(phi).tolist(),
                 "homology_z": homology_matrix_z(phi).tolist()}
    if ns.genus == 2:
        doc["genus2_class"] = list(genus2_class(w))
    curves = []
    for text in ns.curve or ():
        c = CurveClass.parse(text)
        image = apply_to_class(phi, c)
        curves.append(f"{c} -> {format_word(image)} ~ {', '.join(_identify(phi, image, ns.bound)) or 'no gamma class'}")
    if curves:
        doc["curves"] = curves
    _emit_doc(doc, ns.format, sys.stdout)
    return 0


def cmd_equal(ns) -> int:
    res = outer_equal(ns.u, ns.v, ns.genus, ns.bound, ns.power_bound)
    r = CheckResult("equal", "outer_equal", {"genus": ns.genus, "u": ns.u, "v": ns.v},
                    {Status.YES: "pass", Status.NO: "fail", Status.INCONCLUSIVE: "inconclusive"}[res.status],
                    {"conjugator": format_word(res.witness)} if res.witness is not None else None, res.reason)
    return _emit_checks([r], ns.format, ns.strict, sys.stdout)


def cmd_verify(ns) -> int:
    if ns.all:
        selection = None
    elif ns.cls:
        if ns.cls not in {r.label for r in catalog.load_catalog()}:
            raise UsageError(f"unknown class {ns.cls!r}")
        selection = tuple(f"{k}:{ns.cls}" for k in ("involution", "nontrivial", "action"))
    elif ns.relations:
        gs = (ns.genus,) if ns.genus else (3, 4, 5)
        selection = tuple(f"relation:{g}" for g in gs) + tuple(f"yij:{g}" for g in gs)
    elif ns.derivations:
        selection = ("deriv",)
    else:
        raise UsageError("verify needs one of --all, --class, --relations, --derivations")
    results = _run_selected(selection, ns.bound, ns.power_bound, ns.jobs)
    return _emit_checks(results, ns.format, ns.strict, sys.stdout)


def cmd_classify(ns) -> int:
    rows = nec.load_table2()
    gs = (ns.genus,) if ns.genus else (2, 3, 4, 5)
    doc = {}
    for g in gs:
        maps = [m for r in rows if r.genus == g for m in nec.expand_row(r)]
        named = nec.named_classes(g, rows)
        doc[f"genus {g}"] = [f"{lab}: {th.signature} profile {nec.fixed_point_profile(th)}"
                             for lab, th in named.items()]
        doc[f"genus {g} classes"] = len(nec.classify(maps))
    _emit_doc(doc, ns.format, sys.stdout)
    return 0


def cmd_blowup(ns) -> int:
    edges = nec.blowup_flow(ns.source)
    doc = {"from": ns.source,
           "edges": [f"{e.source} --{e.kind.value}--> {e.target or '?'} {e.target_signature} {e.target_profile}"
                     for e in edges]}
    _emit_doc(doc, ns.format, sys.stdout)
    return 0 if all(e.target for e in edges) else 1


def cmd_report(ns) -> int:
    results = _run_selected(None, ns.bound, ns.power_bound, ns.jobs)
    if not ns.output:
        return _emit_checks(results, ns.format, ns.strict, sys.stdout)
    with open(ns.output, "w", encoding="utf-8") as out:
        return _emit_checks(results, ns.format, ns.strict, out)


# --- argument parsing ------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def _genus(text: str) -> int:
    g = int(text)
    if g < 2:
        raise argparse.ArgumentTypeError("genus must be at least 2")
    return g


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--bound", type=int, default=None, help="conjugator search bound")
    common.add_argument("--power-bound", type=int, default=None, help="centralizer power bound")
    common.add_argument("--format", choices=("json", "md"), default="md")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--strict", action=argparse.BooleanOptionalAction, default=True,
                        help="treat inconclusive results as failures (default on)")

    p = _Parser(prog="artifact", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("parse", parents=[common], help="parse and expand a word")
    s.add_argument("--genus", type=_genus, required=True)
    s.add_argument("--word", required=True)
    s.set_defaults(fn=cmd_parse)

    s = sub.add_parser("eval", parents=[common], help="evaluate a word on pi1")
    s.add_argument("--genus", type=_genus, required=True)
    s.add_argument("--word", required=True)
    s.add_argument("--curve", action="append", help="curve to push forward, e.g. g1, g3,5, a2, b, m1")
    s.set_defaults(fn=cmd_eval)

    s = sub.add_parser("equal", parents=[common], help="decide whether two words are the same class")
    s.add_argument("--genus", type=_genus, required=True)
    s.add_argument("u")
    s.add_argument("v")
    s.set_defaults(fn=cmd_equal)

    s = sub.add_parser("verify", parents=[common], help="run catalog checks")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--all", action="store_true")
    g.add_argument("--class", dest="cls", metavar="LABEL")
    g.add_argument("--relations", action="store_true")
    g.add_argument("--derivations", action="store_true")
    s.add_argument("--genus", type=_genus)
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("classify", parents=[common], help="classify the NSK-map table")
    s.add_argument("--genus", type=_genus)
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("blowup-flow", parents=[common], help="blowup edges from genus 2 or 4")
    s.add_argument("--from", dest="source", type=int, choices=(2, 4), required=True)
    s.set_defaults(fn=cmd_blowup)

    s = sub.add_parser("report", parents=[common], help="run every check and write a report")
    s.add_argument("--output", help="file to write instead of stdout")
    s.set_defaults(fn=cmd_report)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if ns.bound is None:
            ns.bound = _env_int("ARTIFACT_BOUND", DEFAULT_BOUND)
        if ns.power_bound is None:
            ns.power_bound = _env_int("ARTIFACT_POWER_BOUND", DEFAULT_POWER_BOUND)
        if ns.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        return ns.fn(ns)
    except (UsageError, NotationError, ValueError) as exc:
        sys.stderr.write(f"artifact: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
