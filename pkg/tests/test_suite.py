import pytest

from smlab.errors import InputError
from smlab.module import MUTATIONS
from smlab.suite import (
    THEOREM_IDS,
    check_all,
    check_theorem,
    replay_witness,
    search_separating,
    summarize,
)

REFUTED = {"thm-IM-2", "thm-Ide-fwd", "thm-amalgN2-semi-2"}


@pytest.fixture(scope="module")
def reports(std):
    return {r.theorem: r for r in check_all(std, seed=0)}


def test_ids_and_order(reports):
    assert len(THEOREM_IDS) == 43
    assert list(reports) == sorted(THEOREM_IDS)


@pytest.mark.parametrize("tid", THEOREM_IDS)
def test_status(reports, tid):
    r = reports[tid]
    assert r.instances_scanned >= r.hypothesis_satisfied >= 0
    if tid in REFUTED:
        assert r.status == "fail"
        assert r.witness is not None
    else:
        assert r.status == "pass", r.witness


@pytest.mark.parametrize("tid", sorted(REFUTED | {"remark-Ide"}))
def test_witness_replays(reports, tid):
    ok, results = replay_witness(reports[tid].witness)
    assert ok, results


def test_diagram_scans_every_proper_submodule(reports, std):
    assert reports["diagram"].hypothesis_satisfied == std.proper_submodule_count()


def test_remark_ide_instance(reports):
    w = reports["remark-Ide"].witness
    assert "ring Z12pZ4 = idealization Z12 Z12_M4" in w["spec"]
    assert w["detail"]["I"] == "[0, 2, 4, 6, 8, 10]"
    assert w["detail"]["N"] == "[0, 2]"


def test_ide_conv_nonvacuous(reports):
    assert reports["thm-Ide-conv"].hypothesis_satisfied >= 1


def test_ide_fwd_witness_is_proper(reports):
    w = reports["thm-Ide-fwd"].witness
    assert ["n_sub", "W_N", False] in w["facts"]


def test_im2_failures_all_have_im_equal_m(reports):
    r = reports["thm-IM-2"]
    assert r.note.startswith(f"{r.failures} of {r.failures} failures have IM = M")


def test_minimal_catalog_vacuity(minimal):
    reps = check_all(minimal)
    s = summarize(reps)
    assert s["vacuous"], "minimal caps should leave some checks vacuous"
    for r in reps:
        if r.hypothesis_satisfied == 0:
            assert r.status == "pass"


@pytest.mark.parametrize("name", MUTATIONS)
def test_every_mutation_is_caught(reports, name, std):
    worse = [r for r in check_all(std, mutation=name) if r.failures > reports[r.theorem].failures]
    assert any(r.status == "fail" and r.witness is not None for r in worse)


def test_unknown_inputs():
    with pytest.raises(InputError):
        check_theorem("thm-nope")
    with pytest.raises(InputError):
        search_separating("semi_n", "bogus")
    with pytest.raises(InputError):
        check_theorem("thm-SM-2", zn_reading="other")


def test_search_examples(std):
    w = search_separating("semi_n", "n_sub", std)
    assert "submodule W_N = gen Z12reg 2" in w["spec"]
    assert replay_witness(w)[0]
    assert search_separating("semi_n", "semi_n", std) is None
    w = search_separating("semi_r", "semi_n", std)
    assert w is not None and replay_witness(w)[0]


def test_ring_reading_of_zn(std):
    assert check_theorem("thm-SM-2", std, zn_reading="ring").status == "pass"


def test_seed_is_recorded(std):
    assert check_theorem("lemma-int", std, seed=7).as_dict()["seed"] == 7
