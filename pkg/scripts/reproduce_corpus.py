#!/usr/bin/env python3
"""Recompute every number the built-in corpus claims, end to end.

Prints a table of the freeness data (degree, minimal relation degree, total
Tjurina number, defect, verdict) for all corpus curves, runs the three
enumeration certificates, replays the tacnode deformation check, and exits
nonzero if anything disagrees with the recorded expectations.
"""

import sys
import time

from conicfree.combinatorics import (
    enumerate_nearly_free_bound,
    enumerate_theorem_char,
    enumerate_theorem_near,
)
from conicfree.corpus import corpus_entries, run_regression
from conicfree.freeness import build_report, check_deformation
from conicfree.jacobian import JacobianContext, SyzygyWitness, mdr, total_tjurina
from conicfree.locus import survey


def freeness_table() -> None:
    print(f"{'entry':28s} {'d':>3s} {'d1':>3s} {'tau':>4s} {'nu':>3s}  verdict")
    for e in corpus_entries():
        t0 = time.time()
        f = e.polynomial()
        ctx = JacobianContext.for_curve(f)
        w = mdr(ctx)
        tau = total_tjurina(ctx)
        d1 = w.r if isinstance(w, SyzygyWitness) else w
        report = build_report(f.degree, d1, tau)
        print(
            f"{e.name:28s} {f.degree:3d} {report.d1_value():3d} {tau:4d} "
            f"{report.nu:3d}  {report.verdict:12s} ({time.time() - t0:.1f}s)"
        )


def deformation_demo() -> bool:
    results = []
    for name in ("persson_triconical", "persson_deformed"):
        e = next(x for x in corpus_entries() if x.name == name)
        ctx = JacobianContext.for_curve(e.polynomial())
        w = mdr(ctx)
        tau = total_tjurina(ctx)
        report = build_report(ctx.d, w.r, tau)
        results.append((report, survey(e.arrangement())))
    check = check_deformation(results[0], results[1])
    print("\ntacnode-to-two-nodes deformation check:")
    for clause in check.clauses:
        print(f"  {'PASS' if clause.ok else 'FAIL'} {clause.name}: {clause.detail}")
    return check.passed


def certificates() -> bool:
    near = enumerate_theorem_near(30)
    char = enumerate_theorem_char(20)
    nf = enumerate_nearly_free_bound(20)
    print("\nenumeration certificates:")
    print(
        f"  nodes+triples never nearly free (k <= 30): "
        f"{'PASS' if near.passed else 'FAIL'} "
        f"({near.candidates_examined} candidates)"
    )
    print(f"  free component counts: admissible {list(char.admissible)}")
    print(f"  nearly free component counts: admissible {list(nf.admissible)}")
    return near.passed and char.admissible == (2, 3, 4) and nf.admissible == tuple(range(2, 9))


def main() -> int:
    t0 = time.time()
    freeness_table()
    ok = deformation_demo()
    ok = certificates() and ok
    print("\nfull field-level regression against recorded expectations:")
    table = run_regression()
    failures = table.failures()
    for row in failures:
        print(f"  FAIL {row.entry} {row.field}: expected {row.expected}, got {row.got}")
    print(
        f"  {len(table.rows)} checks, {len(failures)} failures "
        f"({time.time() - t0:.1f}s total)"
    )
    return 0 if (ok and table.passed) else 1


if __name__ == "__main__":
    sys.exit(main())
