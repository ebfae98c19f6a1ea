import numpy as np
import pytest

from smlab.errors import CapacityError, InputError
from smlab.ring import (
    INTEGERS,
    ann_ring_elem,
    check_ring_axioms,
    classify_ideal,
    enumerate_ideals,
    ideal_arith,
    make_zn,
    nilradical,
    product_ring,
    quotient_ring,
    regular_and_zero_divisors,
)
from smlab.constructions import idealization
from smlab.module import make_cyclic_module

from oracle import zn_semi_n_ideal


def members(I):
    return sorted(I.members)


def test_zn_basics():
    assert make_zn(1).order == 1
    assert members(nilradical(make_zn(12))) == [0, 6]
    assert sorted(make_zn(4).units) == [1, 3]
    assert members(nilradical(make_zn(5))) == [0]


def test_zn_rejects_bad_order():
    with pytest.raises(InputError):
        make_zn(0)
    with pytest.raises(CapacityError):
        make_zn(100, cap=50)


def test_annihilators_and_zero_divisors():
    R = make_zn(12)
    assert members(ann_ring_elem(R, 4)) == [0, 3, 6, 9]
    assert members(ann_ring_elem(R, 1)) == [0]
    assert members(ann_ring_elem(R, 0)) == list(range(12))
    assert regular_and_zero_divisors(R)[0] == {1, 5, 7, 11}
    assert regular_and_zero_divisors(make_zn(5))[0] == {1, 2, 3, 4}
    assert regular_and_zero_divisors(make_zn(4))[1] == {0, 2}


def test_idealization_nilradical():
    R = make_zn(12)
    A = idealization(R, make_cyclic_module(4, R))
    assert A.order == 48
    nil = nilradical(A).members
    assert len(nil) == 8
    # (r, m) has id r*4 + m
    assert nil == frozenset(r * 4 + m for r in (0, 6) for m in range(4))


@pytest.mark.parametrize("n", [1, 2, 5, 12, 30, 36])
def test_ideals_of_zn_are_divisor_ideals(n):
    got = {I.members for I in enumerate_ideals(make_zn(n))}
    want = {frozenset(range(0, n, d)) for d in range(1, n + 1) if n % d == 0}
    assert got == want


def test_ideal_counts_small_products():
    assert len(enumerate_ideals(make_zn(5))) == 2
    assert len(enumerate_ideals(product_ring(make_zn(2), make_zn(2)))) == 4


def test_ideal_arith():
    R = make_zn(12)
    I2, I3, I4 = R.ideal([2]), R.ideal([3]), R.ideal([4])
    assert members(ideal_arith(R, I4, None, "radical")) == [0, 2, 4, 6, 8, 10]
    assert members(ideal_arith(R, I2, I3, "product")) == [0, 6]
    for I in enumerate_ideals(R):
        assert ideal_arith(R, I, R.whole, "residual").members == I.members


def test_classify_ideal_examples():
    R = make_zn(12)
    pv = classify_ideal(R, R.ideal([2]))
    assert pv["semi_n"] is True and pv["n"] is False
    assert pv.witnesses["n"] == (2, 1)
    pv = classify_ideal(R, R.ideal([4]))
    assert pv["semi_n"] is False
    assert pv.witnesses["semi_n"] == (2,)


@pytest.mark.parametrize("n", range(2, 37))
def test_zero_ideal_semi_n_and_oracle(n):
    R = make_zn(n)
    for I in enumerate_ideals(R):
        if I.is_proper:
            assert classify_ideal(R, I)["semi_n"] == zn_semi_n_ideal(n, I.members)
    assert classify_ideal(R, R.zero_ideal)["semi_n"] is True


def test_integer_semi_n_ideals():
    # dZ with d > 1 is semi n exactly when d is squarefree
    assert [d for d in range(2, 20) if INTEGERS.is_semi_n_ideal(d)] == [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19]
    assert INTEGERS.is_semi_n_ideal(0)


def test_quotient_ring_and_axioms():
    R = make_zn(12)
    Q, proj = quotient_ring(R, R.ideal([4]))
    assert Q.order == 4
    assert check_ring_axioms(Q) is None
    assert np.array_equal(np.sort(np.unique(proj)), np.arange(4))
