import numpy as np
import pytest

from smlab.constructions import (
    ModuleHomAcrossHom,
    amalgam,
    duplication,
    embed_ideal,
    embedding_is_ideal,
    identity_hom,
    idealization,
    idealization_ids,
    module_reduction,
    reduction_hom,
)
from smlab.errors import InputError
from smlab.module import classify_submodule, enumerate_submodules, make_cyclic_module, regular_module, semi_n
from smlab.ring import check_ring_axioms, classify_ideal, enumerate_ideals, make_zn

from oracle import BruteModule


def test_idealization_embedding():
    R = make_zn(12)
    M = make_cyclic_module(4, R)
    A = idealization(R, M)
    assert check_ring_axioms(A) is None
    X = embed_ideal(A, R.ideal([2]), M.submodule([2]))
    assert X.members == idealization_ids(A, R.ideal([2]).members, {0, 2})
    assert embed_ideal(A, R.whole, M.whole).members == frozenset(range(A.order))
    with pytest.raises(InputError, match="not contained"):
        embed_ideal(A, R.ideal([1]), M.zero)


def test_embedding_legality_matches_containment():
    R = make_zn(8)
    M = make_cyclic_module(4, R)
    A = idealization(R, M)
    for I in enumerate_ideals(R):
        IM = {int(M.act[r, m]) for r in I.members for m in range(M.order)}
        for N in enumerate_submodules(M):
            assert embedding_is_ideal(A, I, N) == (IM <= N.members)


def test_duplication_sizes():
    R = make_zn(8)
    M = regular_module(R)
    d = duplication(M, R.ideal([4]))
    assert d.ring.order == 16 and d.module.order == 16
    d0 = duplication(M, R.zero_ideal)
    assert d0.ring.order == 8 and d0.module.order == 8
    assert check_ring_axioms(d.ring) is None


def test_duplication_annihilator_and_faithfulness():
    R = make_zn(12)
    for k in (2, 4, 6, 12):
        M = make_cyclic_module(k, R)
        for J in enumerate_ideals(R):
            d = duplication(M, J)
            assert d.annihilator_formula_holds()
            assert d.faithfulness_matches()


def test_amalgam_order():
    R1, R2 = make_zn(8), make_zn(4)
    f = reduction_hom(R1, R2)
    M1 = make_cyclic_module(8, R1)
    M2 = make_cyclic_module(2, R2)
    phi = module_reduction(M1, M2, f)
    am = amalgam(f, R2.ideal([2]), phi)
    assert am.module.order == 8
    assert check_ring_axioms(am.ring) is None


def test_identity_amalgam_is_duplication():
    R = make_zn(12)
    M = make_cyclic_module(6, R)
    f = identity_hom(R)
    phi = ModuleHomAcrossHom(f, M, M, np.arange(M.order))
    for J in enumerate_ideals(R):
        am = amalgam(f, J, phi)
        d = duplication(M, J)
        assert am.ring.pair_ids == d.ring.pair_ids
        assert am.module.pair_ids == d.module.pair_ids
        assert np.array_equal(am.module.act, d.module.act)
        for N in enumerate_submodules(M):
            assert am.n1_join(N).members == d.n_join(N).members
            assert am.bar2(N).members == d.bar(N).members


def test_zero_ideal_amalgam_collapses():
    R1, R2 = make_zn(12), make_zn(6)
    f = reduction_hom(R1, R2)
    am = amalgam(f, R2.zero_ideal, module_reduction(make_cyclic_module(12, R1), make_cyclic_module(6, R2), f))
    assert am.ring.order == 12


def test_semilinearity_rejected():
    R = make_zn(4)
    M = make_cyclic_module(4, R)
    with pytest.raises(InputError):
        ModuleHomAcrossHom(identity_hom(R), M, M, np.array([0, 2, 0, 3]))


def test_bar2_counterexample_by_hand():
    # f = id on Z_12, J = 0, M1 = Z_12, M2 = Z_4, phi = reduction mod 4
    R = make_zn(12)
    f = identity_hom(R)
    M1, M2 = regular_module(R), make_cyclic_module(4, R)
    am = amalgam(f, R.zero_ideal, module_reduction(M1, M2, f))
    assert f.is_isomorphism and am.phi.is_surjective
    assert semi_n(M2.zero)
    E = am.bar2(M2.zero)
    # E = {(m, m mod 4) : 4 | m}, a copy of <4> in Z_12
    assert sorted(am.module.pair_ids[i][0] for i in E.members) == [0, 4, 8]
    assert BruteModule(12, 12).semi_n({(0, 0), (4, 0), (8, 0)}) is False
    assert classify_submodule(E)["semi_n"] is False


def test_idealization_counterexample_by_hand():
    # Z_6(+)Z_6: I(+)N is vacuously semi n (a^2 in it forces a nilpotent) but N = <2> is not an n-submodule
    R = make_zn(6)
    M = regular_module(R)
    A = idealization(R, M)
    X = idealization_ids(A, {0}, {0, 2, 4})
    assert classify_ideal(A, A.ideal_from_members(X))["semi_n"] is True
    assert BruteModule(6, 6).n_sub({(0, 0), (2, 0), (4, 0)}) is False
