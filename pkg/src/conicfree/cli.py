"""Command-line interface.

Subcommands: ``analyze`` (full pipeline on a curve or arrangement),
``classify`` (singular locus only), ``theorems`` (enumeration
certificates), ``deform-check`` (tacnode-to-nodes deformation), and
``supersolvable`` (combinatorial modular point search), plus ``corpus``
to list the built-in examples and ``regress`` to recompute them.

Inputs can be ``corpus:<name>``, a file (one conic expression per line for
arrangements, a single expression otherwise, ``#`` comments allowed), or an
inline expression.  Exit codes: 0 success, 1 input error, 2 inconclusive or
hypothesis failure, 3 internal fault.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from conicfree.combinatorics import (
    IncidenceStructure,
    enumerate_nearly_free_bound,
    enumerate_theorem_char,
    enumerate_theorem_near,
    is_combinatorially_supersolvable,
)
from conicfree.corpus import CorpusNotFoundError, corpus_entries, entry, run_regression
from conicfree.freeness import check_deformation
from conicfree.jacobian import UnstableWindowError
from conicfree.linalg import DEFAULT_POLICY, EXACT_POLICY, LinalgPolicy
from conicfree.locus import ConicArrangement
from conicfree.poly import (
    HomogeneousPolynomial,
    NonHomogeneousError,
    PolynomialSyntaxError,
    ProjectivePoint,
    parse_polynomial,
)
from conicfree.report import Analysis, analysis_document, analyze_curve, render_text, to_json

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INCONCLUSIVE = 2
EXIT_INTERNAL = 3


class InputError(ValueError):
    pass


def _policy(args: argparse.Namespace) -> LinalgPolicy:
    if getattr(args, "modular_linalg", "on") == "off":
        return EXACT_POLICY
    return DEFAULT_POLICY


def _read_points_file(path: str) -> list[ProjectivePoint]:
    points = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            points.append(ProjectivePoint.parse(line))
    return points


@dataclass
class ResolvedInput:
    f: HomogeneousPolynomial
    arrangement: ConicArrangement | None
    source: str
    provenance: dict | None = None
    # a corpus entry may assert the quasi-homogeneity hypothesis for its
    # ordinary points (pencil base points); honored alongside --assume-qh
    assume_qh: bool = False


def _resolve_input(text: str) -> ResolvedInput:
    if text.startswith("corpus:"):
        name = text[len("corpus:") :]
        try:
            e = entry(name)
        except CorpusNotFoundError:
            known = ", ".join(x.name for x in corpus_entries())
            raise InputError(f"unknown corpus entry {name!r}; known: {known}")
        return ResolvedInput(
            f=e.polynomial(),
            arrangement=e.arrangement(),
            source=text,
            provenance=dict(e.provenance),
            assume_qh=e.assume_qh,
        )
    path = Path(text)
    if path.exists():
        lines = [
            line.split("#", 1)[0].strip()
            for line in path.read_text().splitlines()
        ]
        lines = [line for line in lines if line]
        if not lines:
            raise InputError(f"{text}: no expressions found")
        if len(lines) == 1:
            return ResolvedInput(parse_polynomial(lines[0]), None, text)
        arrangement = ConicArrangement.from_texts(lines)
        return ResolvedInput(arrangement.polynomial(), arrangement, text)
    return ResolvedInput(parse_polynomial(text), None, f"<expression> {text}")


def _run_analysis(args: argparse.Namespace) -> Analysis:
    resolved = _resolve_input(args.input)
    extra = _read_points_file(args.points) if args.points else None
    analysis = analyze_curve(
        resolved.f,
        arrangement=resolved.arrangement,
        source=resolved.source,
        policy=_policy(args),
        assume_qh=args.assume_qh or resolved.assume_qh,
        extra_points=extra,
        window_extend=args.window_extend,
    )
    analysis.provenance = resolved.provenance  # type: ignore[attr-defined]
    return analysis


def cmd_analyze(args: argparse.Namespace) -> int:
    analysis = _run_analysis(args)
    doc = analysis_document(
        analysis,
        supersolvable=args.supersolvable,
        provenance=getattr(analysis, "provenance", None),
    )
    print(to_json(doc) if args.json else render_text(doc))
    return EXIT_INCONCLUSIVE if analysis.inconclusive else EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    resolved = _resolve_input(args.input)
    if resolved.arrangement is None:
        raise InputError(
            "classify needs an arrangement (a corpus arrangement or a file "
            "with one conic per line)"
        )
    analysis = analyze_curve(
        resolved.f,
        arrangement=resolved.arrangement,
        source=resolved.source,
        policy=_policy(args),
        assume_qh=args.assume_qh or resolved.assume_qh,
        extra_points=_read_points_file(args.points) if args.points else None,
    )
    doc = analysis_document(analysis, provenance=resolved.provenance)
    survey_doc = {
        "schema": doc["schema"],
        "input": doc["input"],
        "survey": doc["survey"],
        "checks": doc["checks"],
    }
    if args.json:
        print(to_json(survey_doc))
    else:
        sv = survey_doc["survey"]
        print(f"input: {survey_doc['input']['source']}")
        print(
            f"survey: {len(sv['records'])} rational singular point(s), "
            f"complete = {sv['complete']}"
        )
        for rec in sv["records"]:
            tau_text = "?" if rec["tau"] is None else rec["tau"]
            print(
                f"  {rec['point']} type {rec['type']} on components "
                f"{rec['members']} (mu={rec['mu']}, tau={tau_text})"
            )
        residuals = {k: v for k, v in sv["residual_per_pair"].items() if v}
        if residuals:
            print(f"  unlocated intersection budget: {residuals}")
    if not doc["survey"]["complete"]:
        print(
            "warning: survey incomplete (irrational intersection points remain)",
            file=sys.stderr,
        )
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_theorems(args: argparse.Namespace) -> int:
    if args.kmax > 10**4:
        raise InputError("kmax is capped at 10^4")
    if args.which == "near":
        cert = enumerate_theorem_near(args.kmax)
    elif args.which == "char":
        cert = enumerate_theorem_char(args.kmax)
    else:
        cert = enumerate_nearly_free_bound(args.kmax)
    doc = {
        "schema": "conicfree-certificate/1",
        "theorem": cert.theorem,
        "kmax": cert.kmax,
        "candidates_examined": cert.candidates_examined,
        "counterexamples": list(cert.counterexamples),
        "passed": cert.passed,
    }
    if cert.admissible is not None:
        doc["admissible_k"] = list(cert.admissible)
        doc["intervals"] = {str(k): list(v) for k, v in (cert.intervals or {}).items()}
    if args.json:
        print(to_json(doc))
    else:
        print(f"theorem scan '{cert.theorem}' up to k = {cert.kmax}:")
        print(f"  candidates examined: {cert.candidates_examined}")
        if cert.admissible is not None:
            print(f"  admissible k: {sorted(cert.admissible)}")
        if cert.passed:
            print("  counterexamples: none (PASS)")
        else:
            print(f"  counterexamples: {list(cert.counterexamples)} (FAIL)")
    return EXIT_OK if cert.passed else EXIT_INCONCLUSIVE


def cmd_deform_check(args: argparse.Namespace) -> int:
    results = []
    for designator in (args.before, args.after):
        resolved = _resolve_input(designator)
        if resolved.arrangement is None:
            raise InputError(f"{designator}: deformation checking needs arrangements")
        analysis = analyze_curve(
            resolved.f,
            arrangement=resolved.arrangement,
            source=resolved.source,
            policy=_policy(args),
            assume_qh=resolved.assume_qh,
        )
        if analysis.tau is None or analysis.report is None:
            raise InputError(f"{designator}: Tjurina window unstable")
        results.append(analysis)
    before, after = results
    check = check_deformation(
        (before.report, before.survey), (after.report, after.survey)
    )
    doc = {
        "schema": "conicfree-deformation/1",
        "before": before.source,
        "after": after.source,
        "clauses": [
            {"name": c.name, "ok": c.ok, "detail": c.detail} for c in check.clauses
        ],
        "passed": check.passed,
        "conclusion": check.conclusion,
    }
    if args.json:
        print(to_json(doc))
    else:
        print(f"deformation check: {before.source} -> {after.source}")
        for c in check.clauses:
            print(f"  {'PASS' if c.ok else 'FAIL'} {c.name}: {c.detail}")
        print(f"conclusion: {check.conclusion or 'hypotheses not satisfied'}")
    return EXIT_OK if check.passed else EXIT_INCONCLUSIVE


def cmd_supersolvable(args: argparse.Namespace) -> int:
    path = Path(args.input)
    if args.incidence or (
        path.exists() and "point" in path.read_text().split(":", 1)[0]
    ):
        if not path.exists():
            raise InputError(f"{args.input}: incidence file not found")
        inc = IncidenceStructure.parse(path.read_text())
        mode = "user-incidence"
    else:
        resolved = _resolve_input(args.input)
        if resolved.arrangement is None:
            raise InputError("supersolvable needs an arrangement or incidence file")
        from conicfree.locus import survey as run_survey

        sv = run_survey(resolved.arrangement, assume_qh=args.assume_qh or resolved.assume_qh)
        if not sv.complete:
            print(
                "survey incomplete; supply incidence explicitly with --incidence",
                file=sys.stderr,
            )
            return EXIT_INCONCLUSIVE
        inc = IncidenceStructure.from_survey(sv)
        mode = "geometric"
    modular = is_combinatorially_supersolvable(inc)
    doc = {
        "schema": "conicfree-supersolvable/1",
        "mode": mode,
        "modular_point": modular,
        "supersolvable": modular is not None,
    }
    if args.json:
        print(to_json(doc))
    else:
        print(f"mode: {mode}")
        print(
            f"combinatorially supersolvable: {modular is not None}"
            + (f" (modular point {modular})" if modular else "")
        )
    return EXIT_OK


def cmd_corpus(args: argparse.Namespace) -> int:
    for e in corpus_entries():
        print(f"corpus:{e.name:28s} {e.description}")
    return EXIT_OK


def cmd_regress(args: argparse.Namespace) -> int:
    names = args.names or None
    table = run_regression(names, policy=_policy(args))
    print(table.render())
    failures = table.failures()
    print(f"{len(table.rows)} checks, {len(failures)} failures")
    return EXIT_OK if table.passed else EXIT_INCONCLUSIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conicfree",
        description="exact freeness analysis for plane curves and conic arrangements",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, points: bool = True) -> None:
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument(
            "--modular-linalg",
            choices=("on", "off"),
            default="on",
            help="certified modular linear algebra (on) or pure rational (off)",
        )
        if points:
            p.add_argument("--assume-qh", action="store_true", help="treat ordinary points of multiplicity >= 5 as quasi-homogeneous")
            p.add_argument("--points", metavar="FILE", help="extra rational points, one x:y:z per line")

    p = sub.add_parser("analyze", help="full pipeline on a curve or arrangement")
    p.add_argument("input", help="corpus:<name>, a file, or an inline expression")
    p.add_argument("--window-extend", type=int, default=0, metavar="N", help="extra Hilbert degrees for diagnostics")
    p.add_argument("--supersolvable", action="store_true", help="include the supersolvability check")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", help="singular locus survey of an arrangement")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("theorems", help="exhaustive enumeration certificates")
    p.add_argument("which", choices=("near", "char", "nfbound"))
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_theorems)

    p = sub.add_parser("deform-check", help="tacnode-to-two-nodes deformation check")
    p.add_argument("before")
    p.add_argument("after")
    common(p, points=False)
    p.set_defaults(func=cmd_deform_check)

    p = sub.add_parser("supersolvable", help="combinatorial modular point search")
    p.add_argument("input", help="arrangement, corpus:<name>, or incidence file")
    p.add_argument("--incidence", action="store_true", help="treat input as an incidence file")
    p.add_argument("--assume-qh", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--modular-linalg", choices=("on", "off"), default="on")
    p.set_defaults(func=cmd_supersolvable)

    p = sub.add_parser("corpus", help="list built-in example curves")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("regress", help="recompute expected corpus invariants")
    p.add_argument("names", nargs="*", help="entry names (default: all)")
    p.add_argument("--modular-linalg", choices=("on", "off"), default="on")
    p.set_defaults(func=cmd_regress)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        InputError,
        PolynomialSyntaxError,
        NonHomogeneousError,
        CorpusNotFoundError,
        FileNotFoundError,
        ValueError,
    ) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except UnstableWindowError as err:
        print(f"inconclusive: {err}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except Exception as err:  # pragma: no cover - internal faults
        print(f"internal error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
