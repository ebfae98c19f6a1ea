"""Randomized properties checked against the brute-force oracle."""
from hypothesis import given, settings
from hypothesis import strategies as st

from smlab.constructions import duplication, idealization
from smlab.module import (
    classify_submodule,
    core_flags,
    enumerate_submodules,
    make_cyclic_module,
    product_module,
    regular_module,
    semi_n,
    sqrt_colon_decomposition_holds,
)
from smlab.ring import check_ring_axioms, classify_ideal, enumerate_ideals, make_zn
from smlab.suite import DIAGRAM
from smlab.workspace import parse_workspace

from oracle import BruteModule

SETTINGS = settings(max_examples=40, deadline=None)


@st.composite
def zn_module(draw):
    n = draw(st.integers(2, 24))
    divs = [d for d in range(1, n + 1) if n % d == 0]
    a = draw(st.sampled_from(divs))
    b = draw(st.sampled_from([1] + [d for d in divs if d > 1 and a * d <= 64]))
    return n, a, b


def _build(n, a, b):
    R = make_zn(n)
    M = make_cyclic_module(a, R)
    if b > 1:
        M = product_module(M, make_cyclic_module(b, R))
    tup = [(lab, 0) if b == 1 else tuple(lab) for lab in M.labels]
    return M, tup


@SETTINGS
@given(zn_module(), st.data())
def test_random_submodule_matches_oracle(spec, data):
    n, a, b = spec
    M, tup = _build(n, a, b)
    B = BruteModule(n, a, b)
    gens = data.draw(st.lists(st.integers(0, M.order - 1), max_size=2))
    N = M.submodule(gens)
    S = frozenset(tup[i] for i in N.members)
    assert S == B.span([tup[g] for g in gens])
    if N.is_proper:
        assert semi_n(N) == B.semi_n(S)
        assert classify_submodule(N)["n_sub"] == B.n_sub(S)


@SETTINGS
@given(zn_module())
def test_diagram_holds(spec):
    M, _ = _build(*spec)
    for N in enumerate_submodules(M):
        if N.is_proper:
            pv = core_flags(N)
            for x, y in DIAGRAM:
                assert not pv[x] or pv[y]


@SETTINGS
@given(zn_module())
def test_char1_pointwise(spec):
    M, _ = _build(*spec)
    t = M.tables
    for N in enumerate_submodules(M):
        if not N.is_proper:
            continue
        for m in range(M.order):
            v = sqrt_colon_decomposition_holds(N, m)
            assert (v is None) == (not t.ann_zero[m])
        if semi_n(N):
            assert all(sqrt_colon_decomposition_holds(N, m) in (True, None) for m in range(M.order))


@SETTINGS
@given(st.integers(2, 30))
def test_bridge(n):
    R = make_zn(n)
    reg = regular_module(R)
    subs = {N.members: N for N in enumerate_submodules(reg)}
    for I in enumerate_ideals(R):
        assert I.members in subs
        if I.is_proper:
            assert classify_ideal(R, I)["semi_n"] == semi_n(subs[I.members])


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 12), st.data())
def test_constructions_are_rings(n, data):
    R = make_zn(n)
    divs = [d for d in range(1, n + 1) if n % d == 0]
    k = data.draw(st.sampled_from(divs))
    M = make_cyclic_module(k, R)
    assert check_ring_axioms(idealization(R, M)) is None
    J = data.draw(st.sampled_from(enumerate_ideals(R)))
    d = duplication(M, J)
    assert check_ring_axioms(d.ring) is None
    assert d.module.order == M.order * len({int(M.act[j, m]) for j in J.members for m in range(M.order)})


@SETTINGS
@given(st.lists(st.tuples(st.sampled_from(["zn", "cyc"]), st.integers(2, 20)), min_size=1, max_size=5))
def test_workspace_round_trip(items):
    lines = []
    for i, (kind, v) in enumerate(items):
        lines.append(f"ring R{i} = zn {v}")
        if kind == "cyc":
            lines.append(f"module M{i} = cyclic {v} over R{i}")
    spec = parse_workspace("\n".join(lines))
    assert parse_workspace(spec.text()).text() == spec.text()


def test_zero_submodule_always_semi_n():
    for n in range(1, 20):
        for k in range(1, n + 1):
            if n % k == 0:
                M = make_cyclic_module(k, make_zn(n))
                if M.order > 1:
                    assert semi_n(M.zero)
