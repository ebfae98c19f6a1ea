"""Composite structures: idealization, duplication and amalgamation."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import InputError
from .module import (
    FiniteModule,
    ScalarSet,
    Submodule,
    ann_module,
    is_faithful,
    module_from_pairs,
    scalar_times,
)
from .ring import DEFAULT_RING_CAP, FiniteRing, Ideal, _check_cap, is_ideal_set, subring_from_pairs


# --------------------------------------------------------------------- homs

@dataclass(frozen=True, eq=False)
class RingHom:
    src: FiniteRing
    dst: FiniteRing
    map: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.map, dtype=np.int32)
        object.__setattr__(self, "map", f)
        S, T = self.src, self.dst
        if f.shape != (S.order,) or (f < 0).any() or (f >= T.order).any():
            raise InputError("ring map has the wrong shape or leaves the codomain")
        if f[S.one] != T.one:
            raise InputError("ring map does not send 1 to 1")
        for table, what in ((0, "addition"), (1, "multiplication")):
            src_t = S.add if table == 0 else S.mul
            dst_t = T.add if table == 0 else T.mul
            bad = np.argwhere(f[src_t] != dst_t[f[:, None], f[None, :]])
            if len(bad):
                a, b = bad[0]
                raise InputError(f"ring map does not preserve {what} at ({S.labels[a]}, {S.labels[b]})")

    @property
    def is_injective(self) -> bool:
        return len(np.unique(self.map)) == self.src.order

    @property
    def is_surjective(self) -> bool:
        return len(np.unique(self.map)) == self.dst.order

    @property
    def is_isomorphism(self) -> bool:
        return self.is_injective and self.is_surjective

    def image_set(self, members) -> frozenset:
        return frozenset(self.map[sorted(members)].tolist())


def identity_hom(R: FiniteRing) -> RingHom:
    return RingHom(R, R, np.arange(R.order))


def reduction_hom(Ra: FiniteRing, Rb: FiniteRing) -> RingHom:
    """Canonical Z_a -> Z_b for b | a."""
    if Ra.construction[0] != "zn" or Rb.construction[0] != "zn":
        raise InputError("reduce needs two rings of the form Z_n")
    a, b = Ra.construction[1], Rb.construction[1]
    if a % b:
        raise InputError(f"cannot reduce Z_{a} to Z_{b}: {b} does not divide {a}")
    return RingHom(Ra, Rb, np.arange(a) % b)


def restrict_scalars(M: FiniteModule, f: RingHom, name: str = "") -> FiniteModule:
    """M, a module over f.dst, viewed over f.src through r . m = f(r) m."""
    if M.base is not f.dst:
        raise InputError("module is not over the codomain of the ring map")
    return FiniteModule(f.src, M.add, M.act[f.map], M.labels, ("restrict", M, f), name)


@dataclass(frozen=True, eq=False)
class ModuleHomAcrossHom:
    """Additive map phi: M1 -> M2 with phi(r m) = f(r) phi(m)."""

    f: RingHom
    src: FiniteModule
    dst: FiniteModule
    map: np.ndarray

    def __post_init__(self):
        phi = np.asarray(self.map, dtype=np.int32)
        object.__setattr__(self, "map", phi)
        f, S, T = self.f, self.src, self.dst
        if S.base is not f.src or T.base is not f.dst:
            raise InputError("module bases do not match the ring map")
        if phi.shape != (S.order,) or (phi < 0).any() or (phi >= T.order).any():
            raise InputError("module map has the wrong shape or leaves the codomain")
        bad = np.argwhere(phi[S.add] != T.add[phi[:, None], phi[None, :]])
        if len(bad):
            a, b = bad[0]
            raise InputError(f"module map is not additive at ({S.labels[a]}, {S.labels[b]})")
        lhs = phi[S.act]
        rhs = T.act[f.map][:, phi]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            r, m = bad[0]
            raise InputError(f"module map is not semilinear at r={f.src.labels[r]}, m={S.labels[m]}")

    @property
    def is_injective(self) -> bool:
        return len(np.unique(self.map)) == self.src.order

    @property
    def is_surjective(self) -> bool:
        return len(np.unique(self.map)) == self.dst.order

    @property
    def is_isomorphism(self) -> bool:
        return self.is_injective and self.is_surjective


def module_reduction(M1: FiniteModule, M2: FiniteModule, f: RingHom) -> ModuleHomAcrossHom:
    """Z_a -> Z_b, m -> m mod b, for cyclic modules with b | a."""
    cyclic = lambda M: M.construction[0] == "cyclic" or (M.construction[0] == "regular" and M.construction[1].construction[0] == "zn")
    if not (cyclic(M1) and cyclic(M2)):
        raise InputError("reduce needs two cyclic modules")
    a, b = M1.order, M2.order
    if a % b:
        raise InputError(f"cannot reduce Z_{a} to Z_{b}: {b} does not divide {a}")
    return ModuleHomAcrossHom(f, M1, M2, np.arange(a) % b)


# ------------------------------------------------------------- idealization

def idealization(R: FiniteRing, M: FiniteModule, cap: int | None = None, name: str = "") -> FiniteRing:
    """R(+)M with (r1, m1)(r2, m2) = (r1 r2, r1 m2 + r2 m1); element id r*|M| + m."""
    if M.base is not R:
        raise InputError("idealization needs a module over the given ring")
    nR, nM = R.order, M.order
    _check_cap(nR * nM, cap if cap is not None else DEFAULT_RING_CAP, "idealization ring")
    ids = np.arange(nR * nM)
    r, m = ids // nM, ids % nM
    add = R.add[np.ix_(r, r)].astype(np.int64) * nM + M.add[np.ix_(m, m)]
    cross = M.add[M.act[np.ix_(r, m)], M.act[np.ix_(r, m)].T]
    mul = R.mul[np.ix_(r, r)].astype(np.int64) * nM + cross
    labels = tuple((R.labels[i], M.labels[j]) for i in range(nR) for j in range(nM))
    out = FiniteRing(add.astype(np.int32), mul.astype(np.int32), R.one * nM, labels, ("idealization", R, M), name)
    return out


def idealization_ids(A: FiniteRing, I_members, N_members) -> frozenset:
    nM = A.construction[2].order
    return frozenset(i * nM + n for i in I_members for n in N_members)


def embed_ideal(A: FiniteRing, I: Ideal, N: Submodule) -> Ideal:
    """I(+)N as an ideal of A = R(+)M; requires IM inside N."""
    if A.construction[0] != "idealization":
        raise InputError("embed_ideal needs an idealization ring")
    _, R, M = A.construction
    if I.ring is not R or N.module is not M:
        raise InputError("ideal or submodule does not match the idealization")
    IM = scalar_times(ScalarSet(R, I.members), M.whole)
    if not IM.members <= N.members:
        raise InputError("IM is not contained in N, so I(+)N is not an ideal")
    return A.ideal_from_members(idealization_ids(A, I.members, N.members))


def embedding_is_ideal(A: FiniteRing, I: Ideal, N: Submodule) -> bool:
    """Direct closure test of the set I x N in R(+)M."""
    return is_ideal_set(A, idealization_ids(A, I.members, N.members))


# ---------------------------------------------------------------- amalgams

def submodule_by_ideal(M: FiniteModule, J: Ideal) -> Submodule:
    """JM."""
    return scalar_times(ScalarSet(M.base, J.members), M.whole)


def amalgam_ring(f: RingHom, J: Ideal, name: str = "", construction: tuple | None = None) -> FiniteRing:
    """R1 |x|^f J = {(r, f(r) + j)} inside R1 x R2."""
    if J.ring is not f.dst:
        raise InputError("J must be an ideal of the codomain of f")
    R1, R2 = f.src, f.dst
    _check_cap(R1.order * len(J.members), DEFAULT_RING_CAP, "amalgam ring")
    pairs = [(r, int(R2.add[f.map[r], j])) for r in range(R1.order) for j in J.members]
    return subring_from_pairs(R1, R2, pairs, construction or ("amalgam", f, J), name)


def amalgam_module(A: FiniteRing, phi: ModuleHomAcrossHom, J: Ideal, name: str = "", construction: tuple | None = None) -> FiniteModule:
    """M1 |x|^phi JM2 = {(m1, phi(m1) + m2) : m2 in JM2} over the amalgam ring A."""
    M1, M2 = phi.src, phi.dst
    JM2 = submodule_by_ideal(M2, J)
    pairs = [(m, int(M2.add[phi.map[m], x])) for m in range(M1.order) for x in JM2.members]
    return module_from_pairs(A, M1, M2, pairs, construction or ("amalgam-mod", phi, J), name)


@dataclass(frozen=True, eq=False)
class Amalgam:
    f: RingHom
    J: Ideal
    phi: ModuleHomAcrossHom
    ring: FiniteRing
    module: FiniteModule

    @property
    def M1(self) -> FiniteModule:
        return self.phi.src

    @property
    def M2(self) -> FiniteModule:
        return self.phi.dst

    @cached_property
    def JM2(self) -> Submodule:
        return submodule_by_ideal(self.M2, self.J)

    def _select(self, keep) -> Submodule:
        P = self.module
        members = frozenset(i for i, (a, b) in enumerate(P.pair_ids) if keep(a, b))
        return Submodule(P, members, P._gens_for(members))

    def n1_join(self, N1: Submodule) -> Submodule:
        if N1.module is not self.M1:
            raise InputError("N1 must be a submodule of M1")
        return self._select(lambda a, b: a in N1.members)

    def bar2(self, N2: Submodule) -> Submodule:
        if N2.module is not self.M2:
            raise InputError("N2 must be a submodule of M2")
        return self._select(lambda a, b: b in N2.members)


def amalgam(f: RingHom, J: Ideal, phi: ModuleHomAcrossHom, ring: FiniteRing | None = None, name: str = "") -> Amalgam:
    if phi.f is not f:
        raise InputError("module map is not semilinear over the given ring map")
    A = ring if ring is not None else amalgam_ring(f, J)
    return Amalgam(f, J, phi, A, amalgam_module(A, phi, J, name))


def ring_nilradical_is_amalgam_of_nilradical(am_ring: FiniteRing, f: RingHom, J: Ideal) -> bool:
    """Whether sqrt(0) of R1 |x|^f J equals sqrt(0_R1) |x|^f J."""
    R2 = f.dst
    nil1 = np.flatnonzero(f.src.nil_mask)
    expected = {(int(r), int(R2.add[f.map[r], j])) for r in nil1 for j in J.members}
    actual = {am_ring.pair_ids[i] for i in np.flatnonzero(am_ring.nil_mask)}
    return expected == actual


# ------------------------------------------------------------- duplication

@dataclass(frozen=True, eq=False)
class Duplication:
    R: FiniteRing
    J: Ideal
    M: FiniteModule
    ring: FiniteRing
    module: FiniteModule

    @cached_property
    def JM(self) -> Submodule:
        return submodule_by_ideal(self.M, self.J)

    def _select(self, keep) -> Submodule:
        P = self.module
        members = frozenset(i for i, (a, b) in enumerate(P.pair_ids) if keep(a, b))
        return Submodule(P, members, P._gens_for(members))

    def n_join(self, N: Submodule) -> Submodule:
        """N |x| J = {(n, m) : n in N, n - m in JM}."""
        if N.module is not self.M:
            raise InputError("N must be a submodule of M")
        return self._select(lambda a, b: a in N.members)

    def bar(self, N: Submodule) -> Submodule:
        """{(m, n) : n in N, m - n in JM}."""
        if N.module is not self.M:
            raise InputError("N must be a submodule of M")
        return self._select(lambda a, b: b in N.members)

    def annihilator_formula_holds(self) -> bool:
        R = self.R
        ann = ann_module(self.M).members
        expected = {(r, int(R.add[r, j])) for r in ann for j in ann & self.J.members}
        t = self.module.tables
        actual = {self.ring.pair_ids[i] for i in np.flatnonzero(t.ann_M)}
        return expected == actual

    def faithfulness_matches(self) -> bool:
        return is_faithful(self.module) == is_faithful(self.M)


def dup_ring(R: FiniteRing, J: Ideal, name: str = "") -> FiniteRing:
    """R |x| J = {(r, r + j)}."""
    if J.ring is not R:
        raise InputError("J must be an ideal of R")
    pairs = [(r, int(R.add[r, j])) for r in range(R.order) for j in J.members]
    return subring_from_pairs(R, R, pairs, ("dup-ring", R, J), name)


def duplication(M: FiniteModule, J: Ideal, ring: FiniteRing | None = None, name: str = "") -> Duplication:
    R = M.base
    if not isinstance(R, FiniteRing) or J.ring is not R:
        raise InputError("duplication needs a module over a finite ring and an ideal of that ring")
    D = ring if ring is not None else dup_ring(R, J)
    JM = submodule_by_ideal(M, J)
    pairs = [(m, int(M.add[m, x])) for m in range(M.order) for x in JM.members]
    P = module_from_pairs(D, M, M, pairs, ("dup", M, J), name)
    return Duplication(R, J, M, D, P)
