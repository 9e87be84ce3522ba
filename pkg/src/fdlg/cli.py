"""Command-line entry point.

Machine output goes to stdout, diagnostics to stderr.  Exit codes: 0 for
success / proof found / check ok, 1 for no proof / failed check, 2 for usage
or format errors.
"""

from __future__ import annotations

import argparse
import sys

from .syntax import (parse_sequent, parse_formula, render_sequent, render,
                     ParseError, SortError)
from .kernel import (Derivation, check_derivation, derivation_to_json,
                     derivation_from_json, neg_atoms_of, iter_nodes, KernelError)
from .standardize import standard_sequent, StandardizeError
from .focus import check_strong_focalization, MinimizeError
from .search import prove, parse_sentence, SearchConfig, Lexicon, LexiconError
from .cutelim import eliminate_cuts, CutElimError
from .translate import (translate_to_fdlg, translate_to_flg, flg_to_json,
                        flg_from_json, TranslateError)
from .algebra import (builtin, parse_algebra, check_fplg_axioms,
                      check_rule_soundness, AlgebraError)
from .rules import REGISTRY

USAGE_ERRORS = (ParseError, SortError, LexiconError, AlgebraError, ValueError)


def _neg(args) -> frozenset[str]:
    return frozenset(x for x in (args.neg or "").split(",") if x)


def _read_doc(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


_RULE_LATEX = {
    "p-Id": r"p\text{-Id}", "n-Id": r"n\text{-Id}",
    "otimes_L": r"\otimes_L", "otimes_R": r"\otimes_R",
    "oplus_L": r"\oplus_L", "oplus_R": r"\oplus_R",
    "oslash_L": r"\varoslash_L", "oslash_R": r"\varoslash_R",
    "obslash_L": r"\varobslash_L", "obslash_R": r"\varobslash_R",
    "under_L": r"\backslash_L", "under_R": r"\backslash_R",
    "over_L": r"/_L", "over_R": r"/_R",
    "down_L": r"\downarrow_L", "down_R": r"\downarrow_R",
    "up_L": r"\uparrow_L", "up_R": r"\uparrow_R",
    "s-down": r"\check{\downarrow}", "s-down'": r"\check{\downarrow}",
    "s-up": r"\hat{\uparrow}", "s-up'": r"\hat{\uparrow}",
    "P-Cut": r"\text{P-Cut}", "N-Cut": r"\text{N-Cut}",
    "Pn-Cut": r"\text{Pn-Cut}", "nN-Cut": r"\text{nN-Cut}",
}


def latex_derivation(d: Derivation, color: bool = False) -> str:
    """bussproofs rendering of a derivation tree."""
    out: list[str] = []

    def label(rule: str) -> str:
        base = _RULE_LATEX.get(rule)
        if base is None:
            base = r"\texttt{" + rule.replace("\\", r"\backslash ") + "}"
        return base

    def emit(node: Derivation):
        for p in node.premises:
            emit(p)
        if not node.premises:
            out.append(r"\AXC{}")
            out.append(rf"\RL{{\footnotesize ${label(node.rule)}$}}")
            out.append(rf"\UIC{{${render(node.conclusion, 'latex', color)}$}}")
        elif len(node.premises) == 1:
            out.append(rf"\RL{{\footnotesize ${label(node.rule)}$}}")
            out.append(rf"\UIC{{${render(node.conclusion, 'latex', color)}$}}")
        else:
            out.append(rf"\RL{{\footnotesize ${label(node.rule)}$}}")
            out.append(rf"\BIC{{${render(node.conclusion, 'latex', color)}$}}")

    emit(d)
    out.append(r"\DP")
    return "\n".join(out)


def _emit_proofs(proofs, neg, as_json: bool) -> None:
    for i, d in enumerate(proofs):
        if as_json:
            print(derivation_to_json(d, neg))
        else:
            print(f"# proof {i + 1}")
            for path, node in iter_nodes(d):
                print("  " * len(path) + f"{node.rule}: {render_sequent(node.conclusion)}")


def cmd_prove(args) -> int:
    neg = _neg(args)
    goal = parse_sequent(args.sequent, neg)
    cfg = SearchConfig(max_depth=args.max_depth, max_solutions=args.max_solutions)
    proofs = prove(goal, cfg)
    if not proofs:
        print("no proof", file=sys.stderr)
        return 1
    _emit_proofs(proofs, neg, args.json)
    return 0


def cmd_check(args) -> int:
    d, _ = derivation_from_json(_read_doc(args.file))
    report = check_derivation(d)
    print(report)
    return 0 if report.ok else 1


def cmd_focalization(args) -> int:
    d, _ = derivation_from_json(_read_doc(args.file))
    report = check_derivation(d)
    if not report.ok:
        print(report)
        return 1
    foc = check_strong_focalization(d)
    print(foc)
    return 0 if foc.ok else 1


def cmd_standardize(args) -> int:
    seq = parse_sequent(args.sequent, _neg(args))
    print(render_sequent(standard_sequent(seq)))
    return 0


def cmd_translate(args) -> int:
    text = _read_doc(args.file)
    if args.to == "fdlg":
        d, neg = flg_from_json(text)
        out = translate_to_fdlg(d)
        print(derivation_to_json(out, neg or neg_atoms_of(out)))
    else:
        d, neg = derivation_from_json(text)
        out = translate_to_flg(d)
        print(flg_to_json(out, neg))
    return 0


def cmd_cutelim(args) -> int:
    d, neg = derivation_from_json(_read_doc(args.file))
    report = check_derivation(d)
    if not report.ok:
        print(report, file=sys.stderr)
        return 1
    trace: list[str] | None = [] if args.trace else None
    out = eliminate_cuts(d, trace)
    if trace:
        for line in trace:
            print(line, file=sys.stderr)
    print(derivation_to_json(out, neg))
    return 0


def cmd_parse(args) -> int:
    with open(args.lexicon, encoding="utf-8") as fh:
        lexicon = Lexicon.from_text(fh.read())
    goal = parse_formula(args.goal, lexicon.neg_atoms)
    words = args.sentence.split()
    bracketing = None
    if args.bracketing:
        import json as _json
        bracketing = _json.loads(args.bracketing)
    cfg = SearchConfig(max_depth=args.max_depth, max_solutions=args.max_solutions)
    readings = parse_sentence(words, lexicon, goal, cfg, bracketing)
    if not readings:
        print("no reading", file=sys.stderr)
        return 1
    print(f"# {len(readings)} reading(s)", file=sys.stderr)
    _emit_proofs(readings, lexicon.neg_atoms, args.json)
    return 0


def cmd_soundness(args) -> int:
    if args.algebra.startswith("builtin:"):
        alg = builtin(args.algebra.split(":", 1)[1])
    else:
        alg = parse_algebra(_read_doc(args.algebra))
    bad = check_fplg_axioms(alg)
    if bad:
        print(f"instance fails the axioms: {bad[0]}", file=sys.stderr)
        return 1
    violations = 0
    for name in sorted(REGISTRY):
        rep = check_rule_soundness(name, alg)
        status = "ok" if rep.ok else f"{len(rep.violations)} violation(s)"
        print(f"{name}: {rep.checked} checks, {status}")
        violations += len(rep.violations)
    return 0 if violations == 0 else 1


def cmd_latex(args) -> int:
    if args.sequent:
        seq = parse_sequent(args.sequent, _neg(args))
        print(render(seq, "latex", color=args.color))
        return 0
    d, _ = derivation_from_json(_read_doc(args.file))
    print(latex_derivation(d, color=args.color))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fdlg",
                                 description="focused display Lambek-Grishin toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, sequent=False, file=False):
        p.add_argument("--neg", default="", help="comma-separated negative atoms")
        p.add_argument("--json", action="store_true", help="emit the exchange format")
        if sequent:
            p.add_argument("sequent", help="sequent text, e.g. 'p .* q |- p * q'")
        if file:
            p.add_argument("file", nargs="?", default="-",
                           help="derivation document (default: stdin)")

    p = sub.add_parser("prove", help="backward focused proof search")
    common(p, sequent=True)
    p.add_argument("--max-depth", type=int, default=40)
    p.add_argument("--max-solutions", type=int, default=0)
    p.set_defaults(fn=cmd_prove)

    p = sub.add_parser("check", help="re-check a derivation document")
    common(p, file=True)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("focalization", help="strong-focalization report")
    common(p, file=True)
    p.set_defaults(fn=cmd_focalization)

    p = sub.add_parser("standardize", help="standard sequent of a sequent")
    common(p, sequent=True)
    p.set_defaults(fn=cmd_standardize)

    p = sub.add_parser("translate", help="translate a proof between the calculi")
    common(p, file=True)
    p.add_argument("--to", choices=("fdlg", "flg"), required=True)
    p.set_defaults(fn=cmd_translate)

    p = sub.add_parser("cutelim", help="eliminate cuts from a derivation")
    common(p, file=True)
    p.add_argument("--trace", action="store_true",
                   help="one line per move on stderr")
    p.set_defaults(fn=cmd_cutelim)

    p = sub.add_parser("parse", help="parsing-as-deduction over a lexicon")
    p.add_argument("sentence", help="space-separated words")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--goal", required=True)
    p.add_argument("--bracketing", default="",
                   help="nested JSON list of word indices; default right-branching")
    p.add_argument("--max-depth", type=int, default=40)
    p.add_argument("--max-solutions", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("soundness", help="validity sweep of every rule")
    p.add_argument("--algebra", default="builtin:chain2",
                   help="file or builtin:{chain2,chain3,diamond}")
    p.add_argument("--depth", type=int, default=2,
                   help="accepted for compatibility; the sweep is element-complete")
    p.set_defaults(fn=cmd_soundness)

    p = sub.add_parser("latex", help="LaTeX for a sequent or a derivation")
    p.add_argument("--neg", default="")
    p.add_argument("--color", action="store_true", help="colored turnstiles")
    p.add_argument("--sequent", default="", help="render a sequent instead of a document")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(fn=cmd_latex)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (KernelError, MinimizeError, CutElimError, TranslateError,
            StandardizeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except USAGE_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
