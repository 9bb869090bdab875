"""Acceptance runs. Each test prints one PASS/FAIL line for its criterion."""

import subprocess
import sys
import time

import pytest

from contrmodel import jsonio
from contrmodel.harness import default_config, run_campaign
from contrmodel.linalg import GF, QQ
from contrmodel.retract import disk_contraction

pytestmark = pytest.mark.slow

F2, F5 = GF(2), GF(5)


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail

    return emit


def _run(name, trials, field=F5, seed=1, **kw):
    t0 = time.perf_counter()
    rep = run_campaign(name, trials, default_config(name, field, seed), **kw)
    return rep, time.perf_counter() - t0


def _fails(rep):
    return len(rep.failures)


def test_criterion_1_tricks(verdict):
    parts, total = [], 0.0
    ok = True
    for fld in (F2, F5, QQ):
        rep, dt = _run("tricks", 200, fld)
        total += dt
        ok &= rep.ok
        parts.append(f"{fld}: {_fails(rep)} failures")
    verdict(1, ok, f"{'; '.join(parts)}; {total:.1f}s, target 30s")


def test_criterion_2_contractions(verdict):
    rep, dt = _run("contractions", 500)
    verdict(2, rep.ok, f"500 contractions, {_fails(rep)} failures, {dt:.1f}s")


def test_criterion_3_path(verdict):
    # every trial checks one path object and one surjection sequence
    rep, dt = _run("path", 100)
    verdict(3, rep.ok, f"100 path objects + 100 surjections, {_fails(rep)} failures, {dt:.1f}s")


def test_criterion_4_semifree(verdict):
    # each trial: both coch factorizations, one semifree lifting square, one injective retract
    rep, dt = _run("semifree", 100)
    verdict(4, rep.ok and dt < 120, f"100 trials over F5, {_fails(rep)} failures, {dt:.1f}s")


def test_criterion_5_model_structures(verdict):
    ra, ta = _run("mc-ar", 100)
    rc, tc = _run("mc-contr", 100)
    ok = ra.ok and rc.ok and ta + tc < 180
    verdict(5, ok, f"mc-ar {_fails(ra)} failures, mc-contr {_fails(rc)} failures, {ta + tc:.1f}s")


def test_criterion_6_mutations(verdict):
    r3, _ = _run("tricks", 40, mutation="trick3-sign", shrink=False)
    rd, _ = _run("contractions", 40, mutation="drop-side-condition", shrink=False)
    ok = _fails(r3) > 0 and _fails(rd) > 0
    verdict(6, ok, f"trick3-sign {_fails(r3)}/40 failures, drop-side-condition {_fails(rd)}/40 failures")


def _cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "contrmodel.cli", *map(str, argv)], capture_output=True, check=False)
    return proc.returncode, proc.stdout


def test_criterion_7_determinism(verdict, tmp_path):
    src = tmp_path / "disk.json"
    c = disk_contraction(F5)
    src.write_text(jsonio.dumps(jsonio.diagram_to_json(c)))
    fmap = tmp_path / "pi.json"
    fmap.write_text(jsonio.dumps(jsonio.map_to_json(c.pi, standalone=True)))
    runs = [
        ("fuzz", "--campaign", "tricks", "--trials", "20", "--seed", "7"),
        ("fuzz", "--campaign", "mc-contr", "--trials", "3", "--seed", "7", "--field", "q"),
        ("fuzz", "--campaign", "contractions", "--trials", "10", "--seed", "7", "--mutation", "drop-side-condition"),
        ("factor", fmap, "--category", "coch", "--flavor", "c-fw", "--emit-cells"),
        ("trick2", src),
    ]
    same = 0
    for argv in runs:
        a, b = _cli(*argv), _cli(*argv)
        same += a == b and a[0] in (0, 1) and a[1] != b""
    verdict(7, same == len(runs), f"{same}/{len(runs)} commands byte-identical across two runs")
