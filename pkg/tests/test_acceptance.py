"""Acceptance criteria, each run through run_suite with its own class and battery.

Run directly (``python3 tests/test_acceptance.py``) or under pytest; either way
one PASS/FAIL line per criterion is printed.
"""
import time

import pytest

from findual.enumeration import InstanceClass
from findual.fixtures import mutants
from findual.suite import SuiteConfig, run_suite


def _one(kind, size, battery, **kw):
    return SuiteConfig(classes=(InstanceClass(kind, size),), batteries=(battery,), fixtures=False, **kw)


def _n(rep, prefix):
    return sum(1 for k in rep.entries if k.startswith(prefix))


def c1():
    rep = run_suite(_one("ms", 7, "filt_collapse"))
    assert _n(rep, "filt_collapse.ms.n7.") > 0
    return rep


def c2():
    rep = run_suite(_one("ms", 7, "distributivity"))
    assert _n(rep, "distributivity.ms.n7.") > 0
    return rep


def c3():
    rep = run_suite(_one("frame", 7, "coherence"))
    assert _n(rep, "coherence.frame.n7.") > 0
    return rep


def c4():
    rep = run_suite(_one("dms", 6, "roundtrip"))
    assert _n(rep, "roundtrip.dms.n6.") > 0
    return rep


def c5():
    rep = run_suite(_one("dl", 6, "equivalences", samples=10_000))
    assert rep.meta["equivalences.dl.sampled_maps"] >= 10_000
    assert _n(rep, "equivalences.dl.adequacy.") > 0
    return rep


def c6():
    rep = run_suite(SuiteConfig(
        classes=(InstanceClass("pgps", 4), InstanceClass("gps", 4)),
        batteries=("laws",),
        fixtures=False,
    ))
    assert rep.meta["laws.pgps.triples"] > 0
    return rep


def c7():
    rep = run_suite(_one("bdms", 6, "triangles"))
    assert "log.bdms.generalized_boolean_vs_boolean" in rep.meta
    return rep


def c8():
    cfg = SuiteConfig(classes=(InstanceClass("dms", 4), InstanceClass("pgps", 3)), seed=7, samples=200, mutants=True)
    a, b = run_suite(cfg), run_suite(cfg)
    assert a.dumps() == b.dumps()
    caught = {e.check_id.split(".")[1] for e in a.failures() if e.check_id.startswith("mutant.")}
    names = {n for n, _ in mutants()}
    assert len(names) == 10 and caught == names
    # everything outside the mutants stays green
    assert not [e for e in a.failures() if not e.check_id.startswith("mutant.")]
    return None


CRITERIA = [
    ("1 filt collapse, |M| <= 7", c1, 10),
    ("2 distributivity transfer, lattices <= 7", c2, 30),
    ("3 finite coherence collapse, frames <= 7", c3, 60),
    ("4 round-trip dualities, dms <= 6", c4, 120),
    ("5 morphism-class equivalences, dl <= 4 exhaustive + 10^4 sampled", c5, 300),
    ("6 category laws, spaces <= 4", c6, 60),
    ("7 bounded triangles, bdms <= 6", c7, 60),
    ("8 determinism and mutant detection", c8, None),
]


def _run(fn, limit):
    t = time.perf_counter()
    err = None
    try:
        rep = fn()
    except AssertionError as exc:
        rep, err = None, f"assertion failed: {exc}"
    dt = time.perf_counter() - t
    if err is None and rep is not None and not rep.ok:
        err = f"{len(rep.failures())} failing checks, first {rep.failures()[0].check_id}"
    if err is None and limit is not None and dt > limit:
        err = f"took {dt:.1f}s, limit {limit}s"
    return err, dt, rep


@pytest.mark.parametrize("label,fn,limit", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(label, fn, limit, capsys):
    err, dt, rep = _run(fn, limit)
    n = rep.counts()["pass"] if rep is not None else "-"
    with capsys.disabled():
        print(f"\n[{'PASS' if err is None else 'FAIL'}] criterion {label}: {dt:.2f}s, {n} checks passed" + (f" ({err})" if err else ""))
    assert err is None, err


if __name__ == "__main__":
    bad = 0
    for label, fn, limit in CRITERIA:
        err, dt, _ = _run(fn, limit)
        bad += err is not None
        print(f"[{'PASS' if err is None else 'FAIL'}] criterion {label}: {dt:.2f}s" + (f" ({err})" if err else ""))
    raise SystemExit(1 if bad else 0)
