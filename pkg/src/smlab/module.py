"""Finite modules over a finite ring or over the integers, and their submodules.

Scalars are handled through a per-module :class:`ScalarDomain`.  Over a
finite ring it is the ring itself.  Over the integers it is the finite set of
representatives ``0, 1, ..., e`` where ``e`` is the module exponent: ``i < e``
stands for the integers congruent to ``i`` (nonzero when ``i > 0``) and the
extra representative ``e`` stands for a *nonzero* integer acting as zero.
Every predicate used here depends on an integer only through that class.
"""
from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import CapacityError, InputError
from .props import PropertyVector, SUBMODULE_FLAGS
from .ring import (
    DEFAULT_LATTICE_CAP,
    INTEGERS,
    FiniteRing,
    Ideal,
    IntegerBase,
    _first,
    _span,
    close_lattice,
    enumerate_ideals,
    minimal_gens,
)

DEFAULT_MODULE_CAP = 4096

BaseRing = FiniteRing | IntegerBase


@dataclass(frozen=True, eq=False)
class ScalarDomain:
    labels: tuple
    mul: np.ndarray
    nil: np.ndarray
    act: np.ndarray

    @property
    def size(self) -> int:
        return len(self.labels)

    @cached_property
    def power_matrix(self) -> np.ndarray:
        n = self.size
        ar = np.arange(n)
        P = np.zeros((n, n), dtype=bool)
        cur = ar.copy()
        for _ in range(n):
            P[ar, cur] = True
            cur = self.mul[cur, ar]
        return P


def _integer_rep_mul(e: int) -> np.ndarray:
    r = np.arange(e + 1, dtype=np.int64)
    prod = (r[:, None] * r[None, :]) % e if e > 0 else np.zeros((1, 1), dtype=np.int64)
    prod = np.where(prod == 0, e, prod)
    prod[0, :] = 0
    prod[:, 0] = 0
    return prod.astype(np.int32)


@dataclass(frozen=True, eq=False)
class FiniteModule:
    """A finite module; ``act[r, m]`` is the scalar action.

    Over the integers ``act`` has one row per residue ``r mod e``.
    """

    base: BaseRing
    add: np.ndarray
    act: np.ndarray
    labels: tuple
    construction: tuple
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __repr__(self) -> str:
        return f"FiniteModule({self.name or self.construction[0]}, order={self.order}, base={getattr(self.base, 'name', '?')})"

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def elems(self) -> range:
        return range(self.order)

    @property
    def over_integers(self) -> bool:
        return isinstance(self.base, IntegerBase)

    @property
    def exponent(self) -> int:
        if self.over_integers:
            return self.act.shape[0]
        return _group_exponent(self.add)

    @cached_property
    def neg(self) -> np.ndarray:
        return np.argmin(self.add, axis=1).astype(np.int32)

    @cached_property
    def index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def encode(self, label) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise InputError(f"{label!r} is not an element of {self.name or 'module'}") from None

    @cached_property
    def scalars(self) -> ScalarDomain:
        if self.over_integers:
            e = self.exponent
            act = np.vstack([self.act, self.act[:1]])
            nil = np.zeros(e + 1, dtype=bool)
            nil[0] = True
            return ScalarDomain(tuple(range(e + 1)), _integer_rep_mul(e), nil, act)
        R = self.base
        return ScalarDomain(R.labels, R.mul, R.nil_mask, self.act)

    @cached_property
    def cyclic(self) -> list[frozenset]:
        A = self.scalars.act
        return [frozenset(np.unique(A[:, m]).tolist()) for m in range(self.order)]

    def span(self, elems) -> frozenset:
        return _span(self.add, [np.fromiter(self.cyclic[int(x)], dtype=np.int64) for x in elems])

    def submodule(self, gens) -> Submodule:
        gens = tuple(int(g) for g in gens)
        for g in gens:
            if not 0 <= g < self.order:
                raise InputError(f"element id {g} out of range for {self.name or 'module'}")
        return Submodule(self, self.span(gens), gens)

    def submodule_from_members(self, members) -> Submodule:
        members = frozenset(int(x) for x in members)
        if self.span(members) != members:
            raise InputError("element set is not a submodule")
        return Submodule(self, members, self._gens_for(members))

    def _gens_for(self, members: frozenset) -> tuple:
        return minimal_gens(self.add, [np.fromiter(c, dtype=np.int64) for c in self.cyclic], members)

    @property
    def whole(self) -> Submodule:
        return self.submodule_from_members(range(self.order))

    @property
    def zero(self) -> Submodule:
        return Submodule(self, frozenset([0]), ())

    @cached_property
    def tables(self) -> _Tables:
        return _Tables(self)


@dataclass(frozen=True, eq=False)
class Submodule:
    module: FiniteModule
    members: frozenset
    gens: tuple

    def __eq__(self, other) -> bool:
        return isinstance(other, Submodule) and other.module is self.module and other.members == self.members

    def __hash__(self) -> int:
        return hash((id(self.module), self.members))

    def __repr__(self) -> str:
        M = self.module
        return f"Submodule({[M.labels[i] for i in sorted(self.members)]} of {M.name})"

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, m) -> bool:
        return int(m) in self.members

    def __le__(self, other: Submodule) -> bool:
        return self.members <= other.members

    def __lt__(self, other: Submodule) -> bool:
        return self.members < other.members

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.module.order, dtype=bool)
        m[list(self.members)] = True
        return m

    @property
    def is_proper(self) -> bool:
        return len(self.members) < self.module.order

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def __and__(self, other: Submodule) -> Submodule:
        members = self.members & other.members
        return Submodule(self.module, members, self.module._gens_for(members))

    def __add__(self, other: Submodule) -> Submodule:
        members = self.module.span(self.gens + other.gens)
        return Submodule(self.module, members, self.module._gens_for(members))


@dataclass(frozen=True)
class ScalarSet:
    """A set of scalars, stored as representative ids of one module's scalar domain.

    Over the integers ``gen`` is the nonnegative generator ``g`` of ``gZ``.
    """

    base: BaseRing
    members: frozenset
    gen: int | None = None

    def contains_int(self, r: int) -> bool:
        if self.gen is None:
            raise InputError("integer membership only applies over the integers")
        return r == 0 if self.gen == 0 else r % self.gen == 0

    def as_ideal(self) -> Ideal:
        if not isinstance(self.base, FiniteRing):
            raise InputError("a scalar set over Z has no finite ideal")
        return self.base.ideal_from_members(self.members)

    def is_zero(self) -> bool:
        return self.members == frozenset([0])


class _Tables:
    """Per-module arrays reused by every predicate."""

    def __init__(self, M: FiniteModule):
        sd = M.scalars
        self.A = sd.act
        S = sd.size
        self.A2 = self.A[np.arange(S)[:, None], self.A]
        self.nil = sd.nil
        self.zero_act = self.A == 0
        nonzero_m = np.arange(M.order) != 0
        self.injective = ~(self.zero_act & nonzero_m[None, :]).any(axis=1)
        nonzero_s = np.arange(S) != 0
        self.ann_zero = ~(self.zero_act & nonzero_s[:, None]).any(axis=0)
        self.torsion = (self.zero_act & nonzero_s[:, None]).any(axis=0)
        self.ann_M = self.zero_act.all(axis=1)
        self.powers = sd.power_matrix
        self.rad_ann_M = (self.powers & self.ann_M[None, :]).any(axis=1)


# --------------------------------------------------------- mutation harness
# Single-quantifier changes to the semi n / n predicates; used to confirm the
# theorem checks actually depend on these definitions.

MUTATIONS = {
    "semi_n:no-nilpotent-guard": "drop the r not in sqrt(0) hypothesis",
    "semi_n:no-ann-guard": "drop the Ann(m) = 0 hypothesis",
    "semi_n:first-power": "hypothesis rm in N instead of r^2 m in N",
    "n_sub:nilradical-guard": "r not in sqrt(0) instead of r not in sqrt(Ann(M))",
    "n_sub:no-radical": "r not in Ann(M) instead of r not in sqrt(Ann(M))",
    "n_sub:conclusion-rm": "conclude rm in N instead of m in N",
}

_active_mutation: list[str | None] = [None]


@contextlib.contextmanager
def mutated(name: str | None):
    if name is not None and name not in MUTATIONS:
        raise InputError(f"unknown mutation {name!r}")
    prev = _active_mutation[0]
    _active_mutation[0] = name
    try:
        yield
    finally:
        _active_mutation[0] = prev


def active_mutation() -> str | None:
    return _active_mutation[0]


def _semi_n_violations(t: _Tables, inN: np.ndarray) -> np.ndarray:
    mut = _active_mutation[0]
    hyp = inN[t.A2]
    if mut == "semi_n:first-power":
        hyp = inN[t.A]
    guard_r = ~t.nil[:, None]
    if mut == "semi_n:no-nilpotent-guard":
        guard_r = np.ones_like(guard_r)
    guard_m = t.ann_zero[None, :]
    if mut == "semi_n:no-ann-guard":
        guard_m = np.ones_like(guard_m)
    return hyp & guard_r & guard_m & ~inN[t.A]


def _n_sub_violations(t: _Tables, inN: np.ndarray) -> np.ndarray:
    mut = _active_mutation[0]
    guard = ~t.rad_ann_M
    if mut == "n_sub:nilradical-guard":
        guard = ~t.nil
    elif mut == "n_sub:no-radical":
        guard = ~t.ann_M
    concl = ~inN[None, :]
    if mut == "n_sub:conclusion-rm":
        concl = ~inN[t.A]
    return inN[t.A] & guard[:, None] & concl


# ------------------------------------------------------------- constructors

def _check_cap(order: int, cap: int | None, what: str) -> None:
    cap = DEFAULT_MODULE_CAP if cap is None else cap
    if order > cap:
        raise CapacityError(what, order, cap)


def _group_exponent(add: np.ndarray) -> int:
    n = add.shape[0]
    ar = np.arange(n)
    cur = ar.copy()
    e = 1
    while not (cur == 0).all():
        cur = add[cur, ar]
        e += 1
    return e


def _integer_action(add: np.ndarray) -> np.ndarray:
    """Rows ``r * m`` for ``r = 0 .. e-1`` of the finite abelian group with table ``add``."""
    n = add.shape[0]
    ar = np.arange(n)
    rows = [np.zeros(n, dtype=np.int32)]
    cur = ar.astype(np.int32)
    while not (cur == 0).all():
        rows.append(cur)
        cur = add[cur, ar].astype(np.int32)
    return np.vstack(rows)


def z_module(add: np.ndarray, labels: tuple, construction: tuple, name: str = "", cap: int | None = None) -> FiniteModule:
    """The Z-module structure of a finite abelian group."""
    _check_cap(len(labels), cap, "module")
    add = np.asarray(add, dtype=np.int32)
    return FiniteModule(INTEGERS, add, _integer_action(add), tuple(labels), construction, name)


def make_cyclic_module(k: int, base: BaseRing, cap: int | None = None, name: str = "") -> FiniteModule:
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InputError(f"cyclic module needs k >= 1, got {k!r}")
    k = int(k)
    _check_cap(k, cap, f"cyclic module Z_{k}")
    ar = np.arange(k, dtype=np.int64)
    add = ((ar[:, None] + ar[None, :]) % k).astype(np.int32)
    if isinstance(base, IntegerBase):
        act = ((ar[:, None] * ar[None, :]) % k).astype(np.int32)
        return FiniteModule(INTEGERS, add, act, tuple(range(k)), ("cyclic", k, base), name)
    if base.construction[0] != "zn":
        raise InputError("cyclic modules are defined over Z or Z_n only")
    n = base.construction[1]
    if n % k:
        raise InputError(f"{k} does not divide {n}")
    r = np.arange(n, dtype=np.int64)
    act = ((r[:, None] * ar[None, :]) % k).astype(np.int32)
    return FiniteModule(base, add, act, tuple(range(k)), ("cyclic", k, base), name)


def regular_module(R: FiniteRing, name: str = "") -> FiniteModule:
    return FiniteModule(R, R.add, R.mul, R.labels, ("regular", R), name)


def product_module(M1: FiniteModule, M2: FiniteModule, cap: int | None = None, name: str = "") -> FiniteModule:
    if M1.base is not M2.base:
        raise InputError("product of modules over different base rings")
    n1, n2 = M1.order, M2.order
    _check_cap(n1 * n2, cap, "product module")
    ids = np.arange(n1 * n2)
    a, b = ids // n2, ids % n2
    add = (M1.add[np.ix_(a, a)] * n2 + M2.add[np.ix_(b, b)]).astype(np.int32)
    labels = tuple((M1.labels[i], M2.labels[j]) for i in range(n1) for j in range(n2))
    if M1.over_integers:
        return z_module(add, labels, ("product", M1, M2), name, cap)
    act = (M1.act[:, a] * n2 + M2.act[:, b]).astype(np.int32)
    return FiniteModule(M1.base, add, act, labels, ("product", M1, M2), name)


def product_submodule(P: FiniteModule, N1: Submodule, N2: Submodule) -> Submodule:
    if P.construction[0] != "product":
        raise InputError("not a product module")
    _, M1, M2 = P.construction
    if N1.module is not M1 or N2.module is not M2:
        raise InputError("factors do not match the product")
    n2 = M2.order
    members = frozenset(a * n2 + b for a in N1.members for b in N2.members)
    gens = tuple(g * n2 for g in N1.gens) + tuple(g for g in N2.gens)
    return Submodule(P, members, gens)


def module_from_pairs(base: FiniteRing, M1: FiniteModule, M2: FiniteModule, pairs, construction: tuple, name: str = "") -> FiniteModule:
    """Submodule-of-product style module on (m1, m2) id pairs.

    ``base`` must be a pair-built ring (see ``subring_from_pairs``); its
    element ``(a, b)`` acts as ``(a m1, b m2)``.
    """
    pairs = sorted(set((int(a), int(b)) for a, b in pairs))
    if not pairs or pairs[0] != (0, 0):
        raise InputError("pair set must contain (0, 0)")
    X = np.array([p[0] for p in pairs], dtype=np.int64)
    Y = np.array([p[1] for p in pairs], dtype=np.int64)
    n2 = M2.order
    pos = np.full(M1.order * n2, -1, dtype=np.int64)
    pos[X * n2 + Y] = np.arange(len(pairs))
    add = pos[M1.add[np.ix_(X, X)].astype(np.int64) * n2 + M2.add[np.ix_(Y, Y)]]
    ring_pairs = base.pair_ids
    RA = np.array([p[0] for p in ring_pairs], dtype=np.int64)
    RB = np.array([p[1] for p in ring_pairs], dtype=np.int64)
    act = pos[M1.act[np.ix_(RA, X)].astype(np.int64) * n2 + M2.act[np.ix_(RB, Y)]]
    if (add < 0).any():
        raise InputError("pair set is not closed under addition")
    if (act < 0).any():
        i, j = np.argwhere(act < 0)[0]
        raise InputError(f"pair set is not closed under the action: {base.labels[i]} * {pairs[j]}")
    labels = tuple((M1.labels[a], M2.labels[b]) for a, b in pairs)
    out = FiniteModule(base, add.astype(np.int32), act.astype(np.int32), labels, construction, name)
    object.__setattr__(out, "pair_ids", pairs)
    return out


# ----------------------------------------------------------- lattices, Ann

def enumerate_submodules(M: FiniteModule, cap: int | None = None, lattice_cap: int = DEFAULT_LATTICE_CAP) -> list[Submodule]:
    """All submodules once, largest first."""
    _check_cap(M.order, cap, f"module {M.name}")
    if "submodules" in M._cache:
        return M._cache["submodules"]
    cyc = [(c, m) for m, c in enumerate(M.cyclic)]
    out = [Submodule(M, mem, gens) for mem, gens in close_lattice(M.add, cyc, lattice_cap, f"submodule of {M.name}")]
    M._cache["submodules"] = out
    return out


def proper_submodules(M: FiniteModule) -> list[Submodule]:
    return [N for N in enumerate_submodules(M) if N.is_proper]


def _scalar_set(M: FiniteModule, mask: np.ndarray) -> ScalarSet:
    members = frozenset(np.flatnonzero(mask).tolist())
    if M.over_integers:
        e = M.exponent
        positive = [s for s in range(1, e + 1) if mask[s]]
        return ScalarSet(M.base, members, positive[0])
    return ScalarSet(M.base, members)


def ann_module(M: FiniteModule) -> ScalarSet:
    return _scalar_set(M, M.tables.ann_M)


def ann_elem(M: FiniteModule, m: int) -> ScalarSet:
    return _scalar_set(M, M.tables.zero_act[:, m])


def ann_is_zero(M: FiniteModule, m: int) -> bool:
    """Ann_R(m) = 0; never true over Z for a finite module."""
    return bool(M.tables.ann_zero[m])


def base_ideals(M: FiniteModule) -> list[ScalarSet]:
    """Ideals of the base, as scalar sets of M (over Z: dZ for d | e, and 0)."""
    if "base_ideals" in M._cache:
        return M._cache["base_ideals"]
    if M.over_integers:
        e = M.exponent
        out = [ScalarSet(M.base, frozenset([0]), 0)]
        for d in range(1, e + 1):
            if e % d == 0:
                out.append(ScalarSet(M.base, frozenset(s for s in range(e + 1) if s % d == 0), d))
    else:
        out = [ScalarSet(M.base, I.members) for I in enumerate_ideals(M.base)]
    M._cache["base_ideals"] = out
    return out


def integer_ideal(M: FiniteModule, d: int) -> ScalarSet:
    """dZ as a scalar set of the Z-module M.

    A residue class mod e meets dZ exactly when gcd(d, e) divides it.
    """
    e = M.exponent
    d = abs(int(d))
    if d == 0:
        return ScalarSet(M.base, frozenset([0]), 0)
    g = math.gcd(d, e)
    return ScalarSet(M.base, frozenset(s for s in range(e + 1) if s % g == 0), d)


def ideal_scalars(M: FiniteModule, I: Ideal) -> ScalarSet:
    if I.ring is not M.base:
        raise InputError("ideal is not over the module's base ring")
    return ScalarSet(M.base, I.members)


def scalar_times(I: ScalarSet, K: Submodule) -> Submodule:
    """IK: the submodule spanned by all products a k."""
    M = K.module
    A = M.scalars.act
    prods = np.unique(A[np.ix_(sorted(I.members), K.sorted())])
    members = M.span(prods)
    return Submodule(M, members, M._gens_for(members))


# ----------------------------------------------------------------- residuals

def residuals(N: Submodule, x):
    """(N :_R M), (N :_R m), (N :_M I) or (N :_M a) depending on ``x``.

    ``x`` may be the ambient module, a submodule, an element id (``int``),
    an Ideal / ScalarSet, or ``("scalar", a)`` for a single scalar id.
    """
    M = N.module
    A = M.scalars.act
    inN = N.mask
    if isinstance(x, FiniteModule):
        if x is not M:
            raise InputError("residual by a different module")
        return _scalar_set(M, inN[A].all(axis=1))
    if isinstance(x, Submodule):
        if x.module is not M:
            raise InputError("residual by a submodule of a different module")
        return _scalar_set(M, inN[A[:, x.sorted()]].all(axis=1))
    if isinstance(x, (int, np.integer)):
        return _scalar_set(M, inN[A[:, int(x)]])
    if isinstance(x, Ideal):
        x = ideal_scalars(M, x)
    if isinstance(x, ScalarSet):
        if x.base is not M.base:
            raise InputError("scalar set over a different base ring")
        mask = inN[A[sorted(x.members)]].all(axis=0)
        members = frozenset(np.flatnonzero(mask).tolist())
        return Submodule(M, members, M._gens_for(members))
    if isinstance(x, tuple) and len(x) == 2 and x[0] == "scalar":
        mask = inN[A[int(x[1])]]
        members = frozenset(np.flatnonzero(mask).tolist())
        return Submodule(M, members, M._gens_for(members))
    raise InputError(f"cannot take a residual by {x!r}")


def colon_module(N: Submodule) -> ScalarSet:
    return residuals(N, N.module)


def scalar_radical(M: FiniteModule, S: ScalarSet) -> ScalarSet:
    mask = np.zeros(M.scalars.size, dtype=bool)
    mask[list(S.members)] = True
    rad = (M.scalars.power_matrix & mask[None, :]).any(axis=1)
    return _scalar_set(M, rad)


def torsion_and_zdiv(M: FiniteModule) -> tuple[frozenset, frozenset]:
    """(T(M), Z(M)); Z(M) is returned as scalar representative ids."""
    t = M.tables
    T = frozenset(np.flatnonzero(t.torsion).tolist()) | {0}
    nonzero_m = np.arange(M.order) != 0
    Z = frozenset(np.flatnonzero((t.zero_act & nonzero_m[None, :]).any(axis=1)).tolist())
    return T, Z


def is_torsion_free(M: FiniteModule) -> bool:
    return not M.tables.torsion[1:].any() if M.order > 1 else True


def is_faithful(M: FiniteModule) -> bool:
    return int(M.tables.ann_M.sum()) == 1


def submodule_torsion_free(K: Submodule) -> bool:
    """T(K) = {0}: every nonzero element of K has zero annihilator."""
    t = K.module.tables
    return all(t.ann_zero[k] for k in K.members if k != 0)


# --------------------------------------------------------- classification

def is_prime_submodule(N: Submodule) -> bool:
    if not N.is_proper:
        return False
    t = N.module.tables
    inN = N.mask
    colon = inN[t.A].all(axis=1)
    return _first(inN[t.A] & ~colon[:, None] & ~inN[None, :]) is None


def prime_submodules(M: FiniteModule) -> list[Submodule]:
    if "primes" not in M._cache:
        M._cache["primes"] = [N for N in enumerate_submodules(M) if is_prime_submodule(N)]
    return M._cache["primes"]


def rad_submodule(N: Submodule) -> Submodule:
    """Intersection of the prime submodules containing N; M when there are none."""
    M = N.module
    key = ("rad", N.members)
    if key not in M._cache:
        members = frozenset(range(M.order))
        for P in prime_submodules(M):
            if N.members <= P.members:
                members &= P.members
        M._cache[key] = Submodule(M, members, M._gens_for(members))
    return M._cache[key]


def is_multiplication_module(M: FiniteModule) -> bool:
    if "multiplication" not in M._cache:
        M._cache["multiplication"] = all(
            scalar_times(colon_module(L), M.whole).members == L.members for L in enumerate_submodules(M)
        )
    return M._cache["multiplication"]


def is_pure(N: Submodule, weakly: bool = False) -> tuple[bool, tuple | None]:
    M = N.module
    target = rad_submodule(N) if weakly else N
    whole = M.whole
    for idx, J in enumerate(base_ideals(M)):
        lhs = scalar_times(J, N).members
        rhs = scalar_times(J, whole).members & target.members
        if lhs != rhs:
            return False, (J.gen if J.gen is not None else min(set(J.members) - {0}, default=0),)
    return True, None


def core_flags(N: Submodule) -> PropertyVector:
    """The seven element-wise classification flags of N (``None`` when N = M)."""
    M = N.module
    key = ("core", N.members, _active_mutation[0])
    if key in M._cache:
        return M._cache[key]
    flags: dict = {}
    wit: dict = {}
    if N.is_proper:
        t = M.tables
        inN = N.mask
        colon = inN[t.A].all(axis=1)
        rad_colon = (t.powers & colon[None, :]).any(axis=1)
        in_rm = inN[t.A]
        in_r2m = inN[t.A2]
        out_m = ~inN[None, :]
        violations = {
            "prime": in_rm & ~colon[:, None] & out_m,
            "primary": in_rm & ~rad_colon[:, None] & out_m,
            "semiprime": in_r2m & ~in_rm,
            "r_sub": in_rm & t.injective[:, None] & out_m,
            "n_sub": _n_sub_violations(t, inN),
            "semi_r": in_r2m & t.injective[:, None] & t.ann_zero[None, :] & ~in_rm,
            "semi_n": _semi_n_violations(t, inN),
        }
        for k in SUBMODULE_FLAGS:
            w = _first(violations[k])
            flags[k] = w is None
            if w is not None:
                wit[k] = tuple(int(x) for x in w)
    else:
        flags.update({k: None for k in SUBMODULE_FLAGS})
    pv = PropertyVector(flags, wit)
    M._cache[key] = pv
    return pv


def classify_submodule(N: Submodule) -> PropertyVector:
    M = N.module
    key = ("pv", N.members, _active_mutation[0])
    if key in M._cache:
        return M._cache[key]
    core = core_flags(N)
    flags = dict(core.flags)
    wit = dict(core.witnesses)
    flags["multiplication"] = is_multiplication_module(M)
    flags["faithful"] = is_faithful(M)
    flags["torsion_free"] = is_torsion_free(M)
    for name, weakly in (("pure", False), ("weakly_pure", True)):
        ok, w = is_pure(N, weakly)
        flags[name] = ok
        if w is not None:
            wit[name] = w
    pv = PropertyVector(flags, wit)
    M._cache[key] = pv
    return pv


def is_semi_n_submodule(N: Submodule) -> tuple[bool | None, tuple | None]:
    if not N.is_proper:
        return None, None
    w = _first(_semi_n_violations(N.module.tables, N.mask))
    if w is None:
        return True, None
    return False, tuple(int(x) for x in w)


def is_n_submodule(N: Submodule) -> tuple[bool | None, tuple | None]:
    if not N.is_proper:
        return None, None
    w = _first(_n_sub_violations(N.module.tables, N.mask))
    if w is None:
        return True, None
    return False, tuple(int(x) for x in w)


def semi_n(N: Submodule) -> bool:
    """Semi n flag of a proper submodule (False for the whole module)."""
    return bool(N.is_proper and classify_flag(N, "semi_n"))


def n_sub(N: Submodule) -> bool:
    return bool(N.is_proper and classify_flag(N, "n_sub"))


def classify_flag(N: Submodule, flag: str) -> bool | None:
    """One classification flag without the module-level purity data."""
    if flag in SUBMODULE_FLAGS:
        return core_flags(N)[flag]
    return classify_submodule(N)[flag]


def sqrt_colon_decomposition_holds(N: Submodule, m: int) -> bool | None:
    """Whether sqrt((N:m)) = sqrt(0) u (N:m); ``None`` when Ann(m) != 0."""
    M = N.module
    if not ann_is_zero(M, m):
        return None
    colon = residuals(N, int(m))
    rad = scalar_radical(M, colon)
    nil = frozenset(np.flatnonzero(M.scalars.nil).tolist())
    return rad.members == (nil | colon.members)


# -------------------------------------------------------- quotients, homs

def quotient_module(M: FiniteModule, L: Submodule, name: str = "") -> tuple[FiniteModule, ModuleHom]:
    if L.module is not M:
        raise InputError("submodule of a different module")
    L_ids = np.fromiter(sorted(L.members), dtype=np.int64)
    rep_of = M.add[:, L_ids].min(axis=1)
    reps = np.unique(rep_of)
    pos = np.full(M.order, -1, dtype=np.int64)
    pos[reps] = np.arange(len(reps))
    proj = pos[rep_of].astype(np.int32)
    add = proj[M.add[np.ix_(reps, reps)]].astype(np.int32)
    labels = tuple(M.labels[r] for r in reps)
    if M.over_integers:
        Q = z_module(add, labels, ("quotient", M, L), name)
    else:
        act = proj[M.act[:, reps]].astype(np.int32)
        Q = FiniteModule(M.base, add, act, labels, ("quotient", M, L), name)
    return Q, ModuleHom(M, Q, proj)


@dataclass(frozen=True, eq=False)
class ModuleHom:
    """An R-linear map given by its full element map; validated on construction."""

    src: FiniteModule
    dst: FiniteModule
    map: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.map, dtype=np.int32)
        object.__setattr__(self, "map", f)
        S, T = self.src, self.dst
        if S.base is not T.base:
            raise InputError("homomorphism between modules over different base rings")
        if f.shape != (S.order,) or (f < 0).any() or (f >= T.order).any():
            raise InputError("map has the wrong shape or leaves the codomain")
        bad = np.argwhere(f[S.add] != T.add[f[:, None], f[None, :]])
        if len(bad):
            a, b = bad[0]
            raise InputError(f"map is not additive at ({a}, {b})")
        if S.over_integers:
            return
        bad = np.argwhere(f[S.act] != T.act[:, f])
        if len(bad):
            r, m = bad[0]
            raise InputError(f"map is not linear at scalar {S.base.labels[r]}, element {m}")

    def image(self, N: Submodule) -> Submodule:
        members = frozenset(self.map[N.sorted()].tolist())
        return Submodule(self.dst, members, self.dst._gens_for(members))

    def preimage(self, N: Submodule) -> Submodule:
        members = frozenset(np.flatnonzero(N.mask[self.map]).tolist())
        return Submodule(self.src, members, self.src._gens_for(members))

    def kernel(self) -> Submodule:
        return self.preimage(self.dst.zero)

    @property
    def is_injective(self) -> bool:
        return len(np.unique(self.map)) == self.src.order

    @property
    def is_surjective(self) -> bool:
        return len(np.unique(self.map)) == self.dst.order

    @property
    def is_isomorphism(self) -> bool:
        return self.is_injective and self.is_surjective


def hom_from_images(src: FiniteModule, dst: FiniteModule, gens, images) -> ModuleHom:
    """Extend generator images linearly; reject maps that violate a relation."""
    gens = [int(g) for g in gens]
    images = [int(v) for v in images]
    if len(gens) != len(images):
        raise InputError("generator and image lists differ in length")
    A_src, A_dst = src.scalars.act, dst.scalars.act
    if src.base is not dst.base:
        raise InputError("homomorphism between modules over different base rings")
    f = np.full(src.order, -1, dtype=np.int64)
    f[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, v in zip(gens, images):
                for s in range(A_src.shape[0]):
                    y = int(src.add[x, A_src[s, g]])
                    img = int(dst.add[f[x], A_dst[s, v]])
                    if f[y] < 0:
                        f[y] = img
                        nxt.append(y)
                    elif f[y] != img:
                        raise InputError(
                            f"generator images violate a relation: element {src.labels[y]} would map to "
                            f"both {dst.labels[f[y]]} and {dst.labels[img]}"
                        )
        frontier = nxt
    if (f < 0).any():
        raise InputError("generators do not span the domain")
    return ModuleHom(src, dst, f)


def localize(M: FiniteModule, s_gens) -> tuple[FiniteModule, ModuleHom]:
    """S^{-1}M for S the multiplicative closure of ``s_gens``.

    Over Z this is M / T_S(M); over a finite ring S must consist of units and
    the localization is M itself.
    """
    s_gens = [int(s) for s in s_gens]
    if M.over_integers:
        if any(s == 0 for s in s_gens):
            raise InputError("0 cannot belong to a subset of regular elements")
        e = M.exponent
        t = 1
        for s in s_gens:
            t = t * s % e if e else 0
        ar = np.arange(M.order)
        cur = ar.copy()
        killed = cur == 0
        for _ in range(max(M.order, 1)):
            cur = M.act[t % e, cur]
            killed |= cur == 0
        L = M.submodule_from_members(np.flatnonzero(killed))
        return quotient_module(M, L)
    R = M.base
    for s in s_gens:
        if not R.regular_mask[s]:
            raise InputError(f"{R.labels[s]} is not a regular element")
    return M, ModuleHom(M, M, np.arange(M.order))


def multiplicative_closure(M: FiniteModule, s_gens) -> frozenset:
    """Scalar representatives of the multiplicative closure of ``s_gens`` (1 included)."""
    sd = M.scalars
    if M.over_integers:
        e = M.exponent
        start = [1 if e > 1 else e] + [(s % e) or e for s in s_gens]
    else:
        start = [M.base.one] + list(s_gens)
    seen = set(start)
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for b in start:
                c = int(sd.mul[a, b])
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(seen)


def gcd_scalar_gen(M: FiniteModule, S: ScalarSet) -> int:
    return math.gcd(*S.members) if S.members else 0
