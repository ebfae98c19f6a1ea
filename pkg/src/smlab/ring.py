"""Finite commutative rings with identity, their ideals and ideal predicates.

Every ring exposes dense element ids ``0..order-1`` with ``0`` the additive
identity; ``labels[i]`` decodes id ``i`` to its construction-specific value
(an int for Z_n, a pair for products and pair-built rings, and so on).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import CapacityError, InputError
from .props import PropertyVector

DEFAULT_RING_CAP = 4096
DEFAULT_LATTICE_CAP = 10_000


@dataclass(frozen=True, eq=False)
class FiniteRing:
    add: np.ndarray
    mul: np.ndarray
    one: int
    labels: tuple
    construction: tuple
    name: str = ""

    zero = 0

    def __repr__(self) -> str:
        return f"FiniteRing({self.name or self.construction[0]}, order={self.order})"

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def elems(self) -> range:
        return range(self.order)

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
            raise InputError(f"{label!r} is not an element of {self.name or 'ring'}") from None

    def decode(self, i: int):
        return self.labels[i]

    def pow(self, a: int, k: int) -> int:
        out = self.one
        for _ in range(k):
            out = int(self.mul[out, a])
        return out

    # Derived sets are computed once; later reads see the same arrays.
    @cached_property
    def power_matrix(self) -> np.ndarray:
        """``P[a, b]`` is true iff ``b = a^k`` for some ``1 <= k <= order``."""
        n = self.order
        ar = np.arange(n)
        P = np.zeros((n, n), dtype=bool)
        cur = ar.copy()
        for _ in range(n):
            P[ar, cur] = True
            cur = self.mul[cur, ar]
        return P

    @cached_property
    def nil_mask(self) -> np.ndarray:
        return self.power_matrix[:, 0].copy()

    @cached_property
    def regular_mask(self) -> np.ndarray:
        # Ann(a) = {0}: the only zero in row a of the multiplication table is at b = 0.
        return (self.mul == 0).sum(axis=1) == 1

    @cached_property
    def unit_mask(self) -> np.ndarray:
        return (self.mul == self.one).any(axis=1)

    @cached_property
    def nilradical(self) -> Ideal:
        return nilradical(self)

    @cached_property
    def units(self) -> frozenset:
        return frozenset(np.flatnonzero(self.unit_mask).tolist())

    @cached_property
    def is_field(self) -> bool:
        return self.order > 1 and int(self.unit_mask.sum()) == self.order - 1

    @property
    def is_domain(self) -> bool:
        # finite integral domains are fields
        return self.is_field

    @property
    def is_zero_ring(self) -> bool:
        return self.order == 1

    def ideal(self, gens) -> Ideal:
        gens = tuple(int(g) for g in gens)
        for g in gens:
            if not 0 <= g < self.order:
                raise InputError(f"element id {g} out of range for {self.name or 'ring'}")
        members = _span(self.add, [self.mul[:, g] for g in gens])
        return Ideal(self, members, gens)

    def ideal_from_members(self, members) -> Ideal:
        members = frozenset(int(x) for x in members)
        if not is_ideal_set(self, members):
            raise InputError("element set is not an ideal")
        return Ideal(self, members, minimal_gens(self.add, [self.mul[:, g] for g in range(self.order)], members))

    @property
    def whole(self) -> Ideal:
        return Ideal(self, frozenset(range(self.order)), (self.one,))

    @property
    def zero_ideal(self) -> Ideal:
        return Ideal(self, frozenset([0]), ())


class IntegerBase:
    """The ring of integers acting on finite abelian groups.

    Only the facts needed by the predicates are encoded: the nilradical is
    {0} and every nonzero integer is regular.
    """

    name = "Z"
    is_domain = True
    is_field = False
    is_zero_ring = False

    def __repr__(self) -> str:
        return "IntegerBase()"

    @staticmethod
    def is_semi_n_ideal(g: int) -> bool:
        """Whether the proper ideal gZ is a semi n-ideal (g = 0 or squarefree g > 1)."""
        g = abs(g)
        if g == 1:
            return False
        return g == 0 or squarefree_kernel(g) == g

    @staticmethod
    def radical_gen(g: int) -> int:
        return 0 if g == 0 else squarefree_kernel(abs(g))


INTEGERS = IntegerBase()


def squarefree_kernel(n: int) -> int:
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            out *= p
            while n % p == 0:
                n //= p
        p += 1
    return out * n if n > 1 else out


@dataclass(frozen=True, eq=False)
class Ideal:
    ring: FiniteRing
    members: frozenset
    gens: tuple

    def __eq__(self, other) -> bool:
        return isinstance(other, Ideal) and other.ring is self.ring and other.members == self.members

    def __hash__(self) -> int:
        return hash((id(self.ring), self.members))

    def __repr__(self) -> str:
        labs = [self.ring.labels[i] for i in sorted(self.members)]
        return f"Ideal({labs})"

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, a) -> bool:
        return int(a) in self.members

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.ring.order, dtype=bool)
        m[list(self.members)] = True
        return m

    @property
    def is_proper(self) -> bool:
        return len(self.members) < self.ring.order

    def sorted(self) -> list[int]:
        return sorted(self.members)


def _span(add: np.ndarray, orbits) -> frozenset:
    """Additive span of a family of subgroups given as id arrays."""
    current = np.zeros(add.shape[0], dtype=bool)
    current[0] = True
    for orb in orbits:
        orb = np.unique(orb)
        if current[orb].all():
            continue
        cur_ids = np.flatnonzero(current)
        current[np.unique(add[np.ix_(cur_ids, orb)])] = True
    return frozenset(np.flatnonzero(current).tolist())


def minimal_gens(add: np.ndarray, orbit_of, members) -> tuple:
    """Greedy generator set: scan members in id order, keep those not yet spanned."""
    gens: list[int] = []
    span = frozenset([0])
    for x in sorted(members):
        if x in span:
            continue
        gens.append(x)
        span = _span(add, [np.asarray(orbit_of[g]) for g in gens])
        if span == members:
            break
    return tuple(gens)


def close_lattice(add: np.ndarray, cyclics: list[tuple[frozenset, int]], cap: int, what: str) -> list[tuple[frozenset, tuple]]:
    """All sums of the given cyclic subobjects, each found exactly once.

    Starts from the distinct cyclic subobjects and repeatedly adds one more
    cyclic summand until no new member set appears.
    """
    seen: dict[frozenset, tuple] = {}
    basis: list[tuple[frozenset, int]] = []
    for members, g in cyclics:
        if members not in seen:
            seen[members] = (g,) if members != frozenset([0]) else ()
            basis.append((members, g))
    if frozenset([0]) not in seen:
        seen[frozenset([0])] = ()
    frontier = list(seen)
    while frontier:
        new: list[frozenset] = []
        for A in frontier:
            a_ids = np.fromiter(A, dtype=np.int64)
            for C, g in basis:
                if C <= A:
                    continue
                c_ids = np.fromiter(C, dtype=np.int64)
                S = frozenset(np.unique(add[np.ix_(a_ids, c_ids)]).tolist())
                if S not in seen:
                    seen[S] = seen[A] + (g,)
                    new.append(S)
                    if len(seen) > cap:
                        raise CapacityError(f"{what} lattice", len(seen), cap)
        frontier = new
    out = sorted(seen.items(), key=lambda kv: (-len(kv[0]), sorted(kv[0])))
    return out


# ---------------------------------------------------------------- constructors

def _check_cap(order: int, cap: int | None, what: str) -> None:
    cap = DEFAULT_RING_CAP if cap is None else cap
    if order > cap:
        raise CapacityError(what, order, cap)


def make_zn(n: int, cap: int | None = None, name: str = "") -> FiniteRing:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InputError(f"Z_n needs n >= 1, got {n!r}")
    n = int(n)
    _check_cap(n, cap, f"Z_{n}")
    ar = np.arange(n, dtype=np.int64)
    add = ((ar[:, None] + ar[None, :]) % n).astype(np.int32)
    mul = ((ar[:, None] * ar[None, :]) % n).astype(np.int32)
    return FiniteRing(add, mul, 1 % n, tuple(range(n)), ("zn", n), name or f"Z{n}")


def product_ring(R1: FiniteRing, R2: FiniteRing, cap: int | None = None, name: str = "") -> FiniteRing:
    n1, n2 = R1.order, R2.order
    _check_cap(n1 * n2, cap, "product ring")
    ids = np.arange(n1 * n2)
    a, b = ids // n2, ids % n2
    add = (R1.add[np.ix_(a, a)] * n2 + R2.add[np.ix_(b, b)]).astype(np.int32)
    mul = (R1.mul[np.ix_(a, a)] * n2 + R2.mul[np.ix_(b, b)]).astype(np.int32)
    labels = tuple((R1.labels[i], R2.labels[j]) for i in range(n1) for j in range(n2))
    return FiniteRing(add, mul, R1.one * n2 + R2.one, labels, ("product", R1, R2), name)


def quotient_ring(R: FiniteRing, I: Ideal, name: str = "") -> tuple[FiniteRing, np.ndarray]:
    """R/I together with the projection map (array of ids)."""
    if I.ring is not R:
        raise InputError("ideal does not belong to the ring")
    I_ids = np.fromiter(sorted(I.members), dtype=np.int64)
    rep_of = R.add[:, I_ids].min(axis=1)
    reps = np.unique(rep_of)
    pos = np.full(R.order, -1, dtype=np.int64)
    pos[reps] = np.arange(len(reps))
    proj = pos[rep_of].astype(np.int32)
    add = proj[R.add[np.ix_(reps, reps)]]
    mul = proj[R.mul[np.ix_(reps, reps)]]
    labels = tuple(R.labels[r] for r in reps)
    Q = FiniteRing(add.astype(np.int32), mul.astype(np.int32), int(proj[R.one]), labels, ("quotient", R, I), name)
    return Q, proj


def subring_from_pairs(R1: FiniteRing, R2: FiniteRing, pairs, construction: tuple, name: str = "") -> FiniteRing:
    """The subring of R1 x R2 on the given set of (a, b) id pairs."""
    pairs = sorted(set((int(a), int(b)) for a, b in pairs))
    if not pairs or pairs[0] != (0, 0):
        raise InputError("pair set must contain (0, 0)")
    A = np.array([p[0] for p in pairs], dtype=np.int64)
    B = np.array([p[1] for p in pairs], dtype=np.int64)
    n2 = R2.order
    pos = np.full(R1.order * n2, -1, dtype=np.int64)
    pos[A * n2 + B] = np.arange(len(pairs))
    add = pos[R1.add[np.ix_(A, A)].astype(np.int64) * n2 + R2.add[np.ix_(B, B)]]
    mul = pos[R1.mul[np.ix_(A, A)].astype(np.int64) * n2 + R2.mul[np.ix_(B, B)]]
    if (add < 0).any() or (mul < 0).any():
        raise InputError("pair set is not closed under the ring operations")
    one = pos[R1.one * n2 + R2.one]
    if one < 0:
        raise InputError("pair set does not contain the identity")
    labels = tuple((R1.labels[a], R2.labels[b]) for a, b in pairs)
    R = FiniteRing(add.astype(np.int32), mul.astype(np.int32), int(one), labels, construction, name)
    object.__setattr__(R, "pair_ids", pairs)
    return R


# ------------------------------------------------------------- derived objects

def nilradical(R: FiniteRing) -> Ideal:
    members = frozenset(np.flatnonzero(R.nil_mask).tolist())
    return Ideal(R, members, minimal_gens(R.add, R.mul.T, members))


def ann_ring_elem(R: FiniteRing, a: int) -> Ideal:
    members = frozenset(np.flatnonzero(R.mul[a] == 0).tolist())
    return Ideal(R, members, minimal_gens(R.add, R.mul.T, members))


def regular_and_zero_divisors(R: FiniteRing) -> tuple[frozenset, frozenset]:
    """(reg(R), Z(R)); zero counts as a zero divisor unless R is the zero ring."""
    has_nonzero_killer = ((R.mul == 0) & (np.arange(R.order) != 0)[None, :]).any(axis=1)
    zdiv = frozenset(np.flatnonzero(has_nonzero_killer).tolist())
    reg = frozenset(range(R.order)) - zdiv
    return reg, zdiv


def is_ideal_set(R: FiniteRing, members) -> bool:
    ids = np.fromiter(sorted(int(x) for x in members), dtype=np.int64)
    if len(ids) == 0 or ids[0] != 0:
        return False
    mask = np.zeros(R.order, dtype=bool)
    mask[ids] = True
    return bool(mask[R.add[np.ix_(ids, ids)]].all() and mask[R.mul[:, ids]].all())


def check_ring_axioms(R: FiniteRing, full_limit: int = 64, samples: int = 4000, seed: int = 0) -> None:
    """Raise InputError on the first violated commutative-ring axiom.

    Orders up to ``full_limit`` are scanned exhaustively, larger rings on a
    seeded random sample of triples.
    """
    n = R.order
    add, mul = R.add, R.mul
    if (add < 0).any() or (add >= n).any() or (mul < 0).any() or (mul >= n).any():
        raise InputError("operation table leaves the element set")
    if not (add == add.T).all():
        raise InputError("addition is not commutative")
    if not (mul == mul.T).all():
        raise InputError("multiplication is not commutative")
    ar = np.arange(n)
    if not (add[0] == ar).all():
        raise InputError("0 is not an additive identity")
    if not (add[ar, R.neg] == 0).all():
        raise InputError("missing additive inverse")
    if not (mul[R.one] == ar).all():
        raise InputError("1 is not a multiplicative identity")
    if n <= full_limit:
        a, b, c = ar[:, None, None], ar[None, :, None], ar[None, None, :]
    else:
        rng = np.random.default_rng(seed)
        a, b, c = (rng.integers(0, n, samples) for _ in range(3))
    if not (add[add[a, b], c] == add[a, add[b, c]]).all():
        raise InputError("addition is not associative")
    if not (mul[mul[a, b], c] == mul[a, mul[b, c]]).all():
        raise InputError("multiplication is not associative")
    if not (mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]).all():
        raise InputError("multiplication does not distribute over addition")


def enumerate_ideals(R: FiniteRing, cap: int | None = None, lattice_cap: int = DEFAULT_LATTICE_CAP) -> list[Ideal]:
    """Every ideal of R once, largest first (ties broken by sorted members)."""
    _check_cap(R.order, cap, f"ring {R.name}")
    cached = R.__dict__.get("_ideals")
    if cached is not None:
        return cached
    principal = [(frozenset(np.unique(R.mul[:, a]).tolist()), a) for a in range(R.order)]
    out = [Ideal(R, m, g) for m, g in close_lattice(R.add, principal, lattice_cap, f"ideal of {R.name}")]
    R.__dict__["_ideals"] = out
    return out


def ideal_arith(R: FiniteRing, I: Ideal, J: Ideal | None, op: str) -> Ideal:
    if I.ring is not R or (J is not None and J.ring is not R):
        raise InputError("ideals belong to a different ring")
    if op == "radical":
        mask = (R.power_matrix & I.mask[None, :]).any(axis=1)
        return R.ideal_from_members(np.flatnonzero(mask))
    if J is None:
        raise InputError(f"{op} needs two ideals")
    if op == "product":
        ii, jj = I.sorted(), J.sorted()
        prods = np.unique(R.mul[np.ix_(ii, jj)])
        members = _span(R.add, [R.mul[:, p] for p in prods])
        return Ideal(R, members, minimal_gens(R.add, R.mul.T, members))
    if op == "intersect":
        members = I.members & J.members
        return Ideal(R, members, minimal_gens(R.add, R.mul.T, members))
    if op == "residual":
        jj = J.sorted()
        mask = I.mask[R.mul[:, jj]].all(axis=1)
        return R.ideal_from_members(np.flatnonzero(mask))
    if op == "sum":
        members = _span(R.add, [R.mul[:, g] for g in sorted(I.members | J.members)])
        return Ideal(R, members, minimal_gens(R.add, R.mul.T, members))
    raise InputError(f"unknown ideal operation {op!r}")


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    return None if len(hits) == 0 else tuple(int(x) for x in hits[0])


def classify_ideal(R: FiniteRing, I: Ideal) -> PropertyVector:
    """Prime, primary, semiprime, r-, n-, semi r- and semi n-ideal tests by full scan."""
    names = ("prime", "primary", "semiprime", "r", "n", "semi_r", "semi_n")
    if I.ring is not R:
        raise InputError("ideal belongs to a different ring")
    if not I.is_proper:
        return PropertyVector({k: None for k in names})
    inI = I.mask
    ar = np.arange(R.order)
    in_ab = inI[R.mul]
    sq_in = inI[R.mul[ar, ar]]
    rad = (R.power_matrix & inI[None, :]).any(axis=1)
    nil, reg = R.nil_mask, R.regular_mask
    outI = ~inI
    violations = {
        "prime": in_ab & outI[:, None] & outI[None, :],
        "primary": in_ab & outI[:, None] & ~rad[None, :],
        "semiprime": sq_in & outI,
        "r": in_ab & reg[:, None] & outI[None, :],
        "n": in_ab & ~nil[:, None] & outI[None, :],
        "semi_r": sq_in & reg & outI,
        "semi_n": sq_in & ~nil & outI,
    }
    flags, wit = {}, {}
    for k in names:
        w = _first(violations[k])
        flags[k] = w is None
        if w is not None:
            wit[k] = w
    return PropertyVector(flags, wit)


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, int(v))
    return g
