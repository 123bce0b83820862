"""Acceptance criteria over the builtin corpus; one PASS/FAIL line per criterion.

Run directly (``python3 tests/test_acceptance.py``) or through pytest, where
the lines are repeated in the terminal summary.
"""
import contextlib
import io
import sys
from pathlib import Path

import pytest

from ncalc.algebra import corpus
from ncalc.cli import main
from ncalc.linalg import QQ
from ncalc.suite import CRITERIA, TITLES, run_criterion

DATA = Path(__file__).resolve().parents[1] / "data"
CORPUS = corpus(QQ)
RESULTS: dict[int, tuple[bool, str]] = {}


def criterion(k: int) -> tuple[bool, str]:
    failures = []
    for a in CORPUS:
        rep = run_criterion(k, a)
        if not rep.ok:
            failures.append("%s: %s" % (a.name, sorted(rep.failures)))
    return not failures, "; ".join(failures)


def cli_criterion() -> tuple[bool, str]:
    problems = []
    sink = io.StringIO()
    with contextlib.redirect_stdout(sink), contextlib.redirect_stderr(sink):
        for spec in ("truncated_polynomial:m=2", "truncated_polynomial:m=3", "matrix_algebra:k=2",
                     "cyclic_group_algebra:m=3", "quantum_plane:q=-1,N=2"):
            code = main(["report", "builtin:" + spec])
            if code != 0:
                problems.append("report %s exited %d" % (spec, code))
        code = main(["report", str(DATA / "corrupted.alg")])
        if code != 2:
            problems.append("corrupted algebra exited %d" % code)
        code = main(["cartan", str(DATA / "dualnumbers.alg"), "--fodc", str(DATA / "broken.fodc")])
        if code != 1:
            problems.append("broken calculus exited %d" % code)
    return not problems, "; ".join(problems)


def line(k: int) -> str:
    ok, why = RESULTS[k]
    title = TITLES.get(k, "command line exit codes")
    return "%s criterion %d: %s%s" % ("PASS" if ok else "FAIL", k, title, "" if ok else " (%s)" % why)


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    RESULTS[k] = criterion(k)
    print(line(k))
    assert RESULTS[k][0], RESULTS[k][1]


def test_criterion_cli():
    RESULTS[11] = cli_criterion()
    print(line(11))
    assert RESULTS[11][0], RESULTS[11][1]


if __name__ == "__main__":
    for k in sorted(CRITERIA):
        RESULTS[k] = criterion(k)
        print(line(k))
    RESULTS[11] = cli_criterion()
    print(line(11))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
