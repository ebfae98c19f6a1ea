"""One line per acceptance criterion, exact equality throughout.

Criteria 4 and 5 contain a statement that is false as written
(thm-Ide-fwd, thm-amalgN2-semi-2).  Their lines print FAIL with the reason;
the remaining sub-checks are asserted here, and the refuted parts are pinned
by strict xfail tests so a silent change in either direction is caught.
"""
import re
import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE_LINES
from smlab.constructions import idealization, idealization_ids
from smlab.module import MUTATIONS, classify_submodule, make_cyclic_module
from smlab.ring import classify_ideal, make_zn
from smlab.suite import bridge_report, check_all, check_theorem, ex5_report, idealization_report

AMALG_BLOCK = ["thm-Amalg-fwd", "thm-Amalg-conv", "thm-amalgN1-semi-1", "thm-amalgN1-semi-2",
               "thm-Amalg2-1", "thm-Amalg2-2", "thm-Amalg2-3", "thm-amalgN2-semi-1",
               "thm-amalgN2-semi-2", "cor-Dup1-n", "cor-Dup1-semin", "cor-Dup2-n", "cor-Dup2-semin"]


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture(scope="module")
def reports(std):
    return {r.theorem: r for r in check_all(std, seed=0)}


def test_criterion_1_ex5():
    t0 = time.perf_counter()
    rep = ex5_report(60, 64)
    dt = time.perf_counter() - t0
    ok = rep["ok"] and rep["non_prime_powers_checked"] == 34 and dt < 5.0
    pp = {k: v["n_submodules"] for k, v in rep["prime_powers"].items()}
    record(1, ok, f"{rep['non_prime_powers_checked']} non prime powers k <= 60, violations {rep['violations']}, "
                  f"prime-power n-submodule counts {pp}, {dt:.2f} s")
    assert ok


def test_criterion_2_diagram(std):
    t0 = time.perf_counter()
    r = check_theorem("diagram", std)
    dt = time.perf_counter() - t0
    ok = r.status == "pass" and r.hypothesis_satisfied >= 500 and r.failures == 0 and dt < 60
    record(2, ok, f"{r.hypothesis_satisfied} proper submodules, {r.failures} violations, {dt:.2f} s")
    assert ok


def test_criterion_3_char1(reports):
    r = reports["thm-char1"]
    ok = r.status == "pass" and r.hypothesis_satisfied >= 50
    record(3, ok, f"{r.hypothesis_satisfied} eligible (N, m) pairs, {r.failures} disagreements")
    assert ok


def _z4_conv_instance() -> bool:
    R = make_zn(4)
    M = make_cyclic_module(4, R)
    A = idealization(R, M)
    I, N = R.ideal([2]), M.submodule([2])
    X = A.ideal_from_members(idealization_ids(A, I.members, N.members))
    return (classify_ideal(R, I)["semi_n"] and classify_submodule(N)["n_sub"]
            and classify_ideal(A, X)["semi_n"])


def test_criterion_4_idealization(reports, std):
    nil = idealization_report(std)
    fwd, conv, rem = reports["thm-Ide-fwd"], reports["thm-Ide-conv"], reports["remark-Ide"]
    supported = (nil["ok"] and conv.status == "pass" and conv.hypothesis_satisfied >= 1
                 and _z4_conv_instance() and rem.status == "pass" and rem.witness is not None)
    fwd_ok = fwd.status == "pass" and fwd.hypothesis_satisfied >= 5
    record(4, supported and fwd_ok,
           f"nilradical identity on {nil['idealizations']} idealizations; forward direction "
           f"{fwd.status} ({fwd.failures} of {fwd.hypothesis_satisfied} instances refute it, e.g. Z6(+)Z6, I = 0, N = <2>); "
           f"converse {conv.status} on {conv.hypothesis_satisfied}; remark reproduced in {rem.witness['detail']['ring']}")
    assert supported


@pytest.mark.xfail(strict=True, reason="forward idealization statement is false: I(+)N can be semi n with N not an n-submodule")
def test_criterion_4_forward_direction(reports):
    assert reports["thm-Ide-fwd"].status == "pass"


def test_criterion_5_amalgamation(reports):
    nr = reports["lemma-amalg-nilrad"]
    inside, outside = (int(x) for x in re.findall(r"(\d+) (?:rings )?with", nr.note))
    both = inside > 0 and outside > 0
    vacuous = [t for t in AMALG_BLOCK if reports[t].hypothesis_satisfied == 0]
    failing = [t for t in AMALG_BLOCK if reports[t].status != "pass"]
    counts = {t: reports[t].hypothesis_satisfied for t in AMALG_BLOCK}
    supported = (nr.status == "pass" and nr.hypothesis_satisfied >= 10 and both
                 and failing == ["thm-amalgN2-semi-2"] and not vacuous)
    record(5, supported and not failing,
           f"nilradical lemma {nr.status} on {nr.hypothesis_satisfied} rings ({nr.note}); "
           f"nonvacuous counts {counts}; vacuous {vacuous or 'none'}; failing {failing or 'none'}")
    assert supported


@pytest.mark.xfail(strict=True, reason="bar2 embedding needs phi injective; Z12 -> Z4 reduction refutes it")
def test_criterion_5_amalgN2_semi_2(reports):
    assert reports["thm-amalgN2-semi-2"].status == "pass"


def test_criterion_6_cited_lemmas(reports):
    s, m = reports["lemma-smith"], reports["lemma-majed"]
    ok = s.status == m.status == "pass" and s.hypothesis_satisfied >= 5 and m.hypothesis_satisfied >= 5
    record(6, ok, f"smith identity and rad(N) = sqrt(N:M)M on {s.hypothesis_satisfied} submodules, "
                  f"majed identity on {m.hypothesis_satisfied}")
    assert ok


def test_criterion_7_bridge(std):
    rep = bridge_report(std)
    ok = rep["ok"] and rep["ideals"] > 0
    record(7, ok, f"{rep['ideals']} proper ideals across {rep['rings']} rings, {len(rep['mismatches'])} mismatches")
    assert ok


def test_criterion_8_mutations(reports, std):
    caught = {}
    for name in MUTATIONS:
        reps = check_all(std, mutation=name)
        caught[name] = [r.theorem for r in reps
                        if r.failures > reports[r.theorem].failures and r.witness is not None]
    ok = all(caught.values()) and len(caught) == 6
    record(8, ok, "; ".join(f"{k} -> {','.join(v) or 'MISSED'}" for k, v in caught.items()))
    assert ok


def test_criterion_9_determinism(tmp_path):
    outs = []
    for i in range(2):
        p = tmp_path / f"r{i}.json"
        r = subprocess.run([sys.executable, "-m", "smlab.cli", "theorems", "--suite", "all", "--seed", "7",
                            "--out", str(p)], capture_output=True)
        assert r.returncode in (0, 1), r.stderr
        outs.append(p.read_bytes())
    ok = outs[0] == outs[1] and len(outs[0]) > 0
    record(9, ok, f"two runs, {len(outs[0])} bytes each, identical={outs[0] == outs[1]}")
    assert ok
