import pytest

from smlab.errors import InputError
from smlab.module import (
    INTEGERS,
    ann_elem,
    ann_module,
    classify_submodule,
    colon_module,
    enumerate_submodules,
    is_n_submodule,
    is_prime_submodule,
    is_semi_n_submodule,
    localize,
    make_cyclic_module,
    product_module,
    quotient_module,
    rad_submodule,
    regular_module,
    residuals,
    sqrt_colon_decomposition_holds,
    torsion_and_zdiv,
)
from smlab.ring import make_zn

from oracle import BruteModule

Z12 = make_cyclic_module(12, INTEGERS)


def ids(N):
    return sorted(N.members)


def test_cyclic_modules():
    assert Z12.exponent == 12 and Z12.order == 12
    assert make_cyclic_module(1, INTEGERS).order == 1
    R = make_zn(12)
    M4 = make_cyclic_module(4, R)
    assert M4.order == 4
    with pytest.raises(InputError, match="5 does not divide 12"):
        make_cyclic_module(5, R)


def test_submodule_counts():
    assert len(enumerate_submodules(Z12)) == 6
    assert len(enumerate_submodules(make_cyclic_module(1, INTEGERS))) == 1


def test_annihilators_over_integers():
    a = ann_elem(Z12, 4)
    assert a.contains_int(3) and a.contains_int(-9) and not a.contains_int(2)
    assert ann_module(Z12).contains_int(12) and not ann_module(Z12).contains_int(6)
    R = make_zn(12)
    assert sorted(ann_elem(regular_module(R), 1).members) == [0]


def test_residuals():
    N = Z12.submodule([4])
    c = colon_module(N)
    assert all(c.contains_int(r) == (r % 4 == 0) for r in range(-30, 30))
    R = make_zn(12)
    reg = regular_module(R)
    for N in enumerate_submodules(reg):
        assert residuals(N, R.whole).members == N.members
    M4 = make_cyclic_module(4, R)
    N = M4.submodule([2])
    assert residuals(N, R.ideal([2])).members == frozenset(range(4))


def test_torsion():
    T, _ = torsion_and_zdiv(regular_module(make_zn(6)))
    assert sorted(T) == [0, 2, 3, 4]
    assert torsion_and_zdiv(make_cyclic_module(1, INTEGERS))[0] == {0}
    assert len(torsion_and_zdiv(Z12)[0]) == 12


def test_rad():
    assert ids(rad_submodule(Z12.submodule([4]))) == [0, 2, 4, 6, 8, 10]
    assert rad_submodule(Z12.whole).members == Z12.whole.members
    primes = {tuple(ids(N)) for N in enumerate_submodules(Z12) if N.is_proper and is_prime_submodule(N)}
    assert primes == {(0, 2, 4, 6, 8, 10), (0, 3, 6, 9)}


def test_classify_examples():
    pv = classify_submodule(Z12.submodule([4]))
    assert pv["semi_n"] is True and pv["n_sub"] is False
    assert pv.witnesses["n_sub"] == (2, 2)
    R = make_zn(12)
    M4 = make_cyclic_module(4, R)
    assert classify_submodule(M4.submodule([2]))["n_sub"] is True
    for M in (Z12, M4, regular_module(R)):
        assert classify_submodule(M.zero)["semi_n"] is True
    assert is_semi_n_submodule(regular_module(R).submodule([2]))[0] is True


def test_no_n_submodules_of_z12():
    for N in enumerate_submodules(Z12):
        if N.is_proper:
            assert is_n_submodule(N)[0] is False
            assert is_semi_n_submodule(N)[0] is True
        else:
            assert is_n_submodule(N)[0] is None


def test_sqrt_colon_decomposition():
    R = make_zn(12)
    reg = regular_module(R)
    assert sqrt_colon_decomposition_holds(reg.submodule([2]), 1) is True
    assert sqrt_colon_decomposition_holds(reg.zero, 5) is True
    # Ann(m) != 0: not applicable
    assert sqrt_colon_decomposition_holds(reg.zero, 2) is None
    assert sqrt_colon_decomposition_holds(Z12.zero, 1) is None


def test_quotient_and_localization():
    Q, proj = quotient_module(Z12, Z12.submodule([6]))
    assert Q.order == 6
    assert len(proj.kernel()) == 2
    assert len(proj.image(Z12.submodule([4]))) <= 3
    assert localize(Z12, [2])[0].order == 3
    assert localize(Z12, [6])[0].order == 1
    assert localize(Z12, [1])[0].order == 12
    with pytest.raises(InputError):
        localize(Z12, [0])


def _brute_of(M, n, a, b):
    """smlab module ids -> oracle tuples for Z_a (b == 1) or Z_a x Z_b."""
    return [(lab, 0) if b == 1 else tuple(lab) for lab in M.labels]


CASES = [(n, a, b) for n in (2, 4, 6, 8, 9, 12) for a in range(1, n + 1) if n % a == 0
         for b in (1, a) if a > 1 or b == 1]


@pytest.mark.parametrize("n,a,b", CASES)
def test_against_oracle(n, a, b):
    R = make_zn(n)
    M = make_cyclic_module(a, R)
    if b > 1:
        M = product_module(M, make_cyclic_module(b, R))
    B = BruteModule(n, a, b)
    tup = _brute_of(M, n, a, b)
    subs = enumerate_submodules(M)
    assert {frozenset(tup[i] for i in N.members) for N in subs} == B.submodules()
    for N in subs:
        if not N.is_proper:
            continue
        S = frozenset(tup[i] for i in N.members)
        pv = classify_submodule(N)
        assert pv["semi_n"] == B.semi_n(S)
        assert pv["n_sub"] == B.n_sub(S)
        assert pv["prime"] == B.prime(S)
