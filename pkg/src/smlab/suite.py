"""Executable checks of every semi n-submodule result over an instance catalog.

Each checker walks the catalog, evaluates the hypotheses of one statement
exactly as stated, and asserts the conclusion where they hold.  A failure
carries a witness: a workspace fragment plus facts that replay to the same
verdict (see ``replay_witness``).
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .catalog import InstanceCatalog, default_catalog
from .constructions import (
    Amalgam,
    Duplication,
    idealization_ids,
    identity_hom,
    ring_nilradical_is_amalgam_of_nilradical,
)
from .errors import InputError
from .module import (
    MUTATIONS,
    FiniteModule,
    ModuleHom,
    ScalarSet,
    Submodule,
    _semi_n_violations,
    ann_module,
    base_ideals,
    classify_flag,
    classify_submodule,
    colon_module,
    core_flags,
    enumerate_submodules,
    integer_ideal,
    is_faithful,
    is_multiplication_module,
    is_prime_submodule,
    is_pure,
    is_torsion_free,
    localize,
    make_cyclic_module,
    multiplicative_closure,
    mutated,
    n_sub,
    product_submodule,
    quotient_module,
    rad_submodule,
    regular_module,
    residuals,
    scalar_radical,
    scalar_times,
    semi_n,
    sqrt_colon_decomposition_holds,
    submodule_torsion_free,
)
from .props import ALL_SUBMODULE_FLAGS, IDEAL_FLAGS, MODULE_FLAGS
from .ring import INTEGERS, FiniteRing, classify_ideal, enumerate_ideals, ideal_arith
from .workspace import Workspace, load_workspace

THEOREM_IDS = (
    "diagram", "thm-char1", "obs-colon-torsionfree", "thm-char-fwd", "thm-char-conv",
    "cor-torsionfree-equiv", "cor-colon-ideal", "lemma-smith", "lemma-majed", "thm-IM-1",
    "thm-IM-2", "cor-NM-equiv", "rad-remark", "lemma-N-colon-I", "prop-maximal-prime",
    "thm-IN-1", "thm-IN-2", "prop-fsub-1", "prop-fsub-2", "cor-quotient", "thm-SM-1",
    "thm-SM-2", "lemma-int", "thm-cart-fwd", "thm-cart-conv", "cor-cc", "thm-Ide-fwd",
    "thm-Ide-conv", "remark-Ide", "lemma-amalg-nilrad", "thm-Amalg-fwd", "thm-Amalg-conv",
    "thm-amalgN1-semi-1", "thm-amalgN1-semi-2", "thm-Amalg2-1", "thm-Amalg2-2",
    "thm-Amalg2-3", "thm-amalgN2-semi-1", "thm-amalgN2-semi-2", "cor-Dup1-n",
    "cor-Dup1-semin", "cor-Dup2-n", "cor-Dup2-semin",
)

ZN_READINGS = ("module", "ring")

DIAGRAM = (
    ("n_sub", "semi_n"), ("n_sub", "r_sub"), ("r_sub", "semi_r"),
    ("semi_n", "semi_r"), ("semiprime", "semi_n"), ("prime", "semiprime"),
)

QUOTIENT_ORDER_LIMIT = 64
RANDOM_FAMILIES = 32


@dataclass
class CheckReport:
    theorem: str
    instances_scanned: int = 0
    hypothesis_satisfied: int = 0
    status: str = "pass"
    witness: dict | None = None
    wall_time_ms: float | None = None
    seed: int = 0
    failures: int = 0
    note: str = ""

    @property
    def vacuous(self) -> int:
        return self.instances_scanned - self.hypothesis_satisfied

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self, timing: bool = False) -> dict:
        ms = None
        if timing and self.wall_time_ms is not None:
            ms = round(self.wall_time_ms, 3)
        return {
            "theorem": self.theorem,
            "instances_scanned": self.instances_scanned,
            "hypothesis_satisfied": self.hypothesis_satisfied,
            "vacuous": self.vacuous,
            "status": self.status,
            "witness": self.witness,
            "wall_time_ms": ms,
            "seed": self.seed,
        }


class _Scan:
    """Counts instances for one report and keeps the first failing witness."""

    def __init__(self, report: CheckReport):
        self.report = report

    def see(self, hyp: bool, ok: bool = True, witness=None) -> None:
        r = self.report
        r.instances_scanned += 1
        if not hyp:
            return
        r.hypothesis_satisfied += 1
        if ok:
            return
        r.failures += 1
        if r.witness is None and witness is not None:
            r.witness = witness()

    def skip(self, n: int) -> None:
        self.report.instances_scanned += int(n)


# ------------------------------------------------------------------ helpers

def _labels(N) -> str:
    M = N.module
    return str([M.labels[i] for i in sorted(N.members)])


def _proper(M: FiniteModule) -> list[Submodule]:
    return [N for N in enumerate_submodules(M) if N.is_proper]


def _domain(M: FiniteModule) -> bool:
    return M.over_integers or bool(M.base.is_domain)


def _nil_ids(M: FiniteModule) -> frozenset:
    return frozenset(np.flatnonzero(M.scalars.nil).tolist())


def _rad_ann_is_nil(M: FiniteModule) -> bool:
    return scalar_radical(M, ann_module(M)).members == _nil_ids(M)


def _smallest_prime_not_dividing(e: int) -> int:
    p = 2
    while e % p == 0 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        p += 1
    return p


def scalar_ideals(M: FiniteModule) -> list[ScalarSet]:
    """Ideals of the base quantified by the suite.

    Over a finite ring: all ideals.  Over Z: 0, dZ for d | e, and pZ for the
    smallest prime p not dividing e (the class of ideals with IM = M).
    """
    out = list(base_ideals(M))
    if M.over_integers:
        out.append(integer_ideal(M, _smallest_prime_not_dividing(M.exponent)))
    return out


_IDEAL_FLAGS_CACHE: dict = {}


def _ideal_pv(R: FiniteRing, members: frozenset):
    key = (id(R), members)
    if key not in _IDEAL_FLAGS_CACHE:
        _IDEAL_FLAGS_CACHE[key] = (R, classify_ideal(R, R.ideal_from_members(members)))
    return _IDEAL_FLAGS_CACHE[key][1]


def ideal_is_semi_n(M: FiniteModule, I: ScalarSet) -> bool:
    """Whether I is a (proper) semi n-ideal of the base of M."""
    if M.over_integers:
        return I.gen != 1 and INTEGERS.is_semi_n_ideal(I.gen)
    if len(I.members) == M.base.order:
        return False
    return bool(_ideal_pv(M.base, I.members)["semi_n"])


def fg_faithful_multiplication_ideal(M: FiniteModule, I: ScalarSet) -> bool:
    if M.over_integers:
        return I.gen != 0
    R = M.base
    key = ("fgfm", I.members)
    if key not in M._cache:
        ii = sorted(I.members)
        faithful = int((R.mul[:, ii] == 0).all(axis=1).sum()) == 1
        ok = faithful
        if ok:
            J = R.ideal_from_members(I.members)
            for K in enumerate_ideals(R):
                if K.members <= J.members:
                    c = ideal_arith(R, K, J, "residual")
                    if ideal_arith(R, c, J, "product").members != K.members:
                        ok = False
                        break
        M._cache[key] = ok
    return M._cache[key]


def _kpower_at(N: Submodule, m: int) -> bool:
    """r^k m in N, r not nilpotent, Ann(m) = 0  =>  rm in N, for one fixed m."""
    M = N.module
    t = M.tables
    if not t.ann_zero[m]:
        return True
    inN = N.mask
    col = inN[t.A[:, m]]
    hyp = (t.powers & col[None, :]).any(axis=1)
    return not (hyp & ~t.nil & ~col).any()


def _semi_n_at(N: Submodule, m: int) -> bool:
    return not _semi_n_violations(N.module.tables, N.mask)[:, m].any()


def _colon_square_stable(N: Submodule) -> bool:
    t = N.module.tables
    inN = N.mask
    return bool((inN[t.A2] == inN[t.A])[~t.nil].all())


def _power_subset(M: FiniteModule, r: int, k: int, K: Submodule, N: Submodule) -> bool:
    sd = M.scalars
    x = r
    for _ in range(k - 1):
        x = int(sd.mul[x, r])
    return bool(N.mask[sd.act[x, K.sorted()]].all())


def _torsion_free_subs(M: FiniteModule) -> list[Submodule]:
    return [K for K in enumerate_submodules(M) if len(K) > 1 and submodule_torsion_free(K)]


def _k_property(N: Submodule) -> bool:
    """r^2 K in N, r not nilpotent, T(K) = 0  =>  rK in N, for every K."""
    M = N.module
    t = M.tables
    inN = N.mask
    for K in _torsion_free_subs(M):
        kk = K.sorted()
        r2K = inN[t.A2[:, kk]].all(axis=1)
        rK = inN[t.A[:, kk]].all(axis=1)
        if (~t.nil & r2K & ~rK).any():
            return False
    return True


def _is_im_of_semi_n_ideal(N: Submodule) -> bool:
    M = N.module
    return any(ideal_is_semi_n(M, I) and scalar_times(I, M.whole).members == N.members for I in scalar_ideals(M))


def _smith_identity(N: Submodule, I: ScalarSet) -> bool:
    M = N.module
    R = M.base
    lhs = colon_module(scalar_times(I, N)).members
    colon = colon_module(N)
    rhs = ideal_arith(R, R.ideal_from_members(I.members), R.ideal_from_members(colon.members), "product").members
    return lhs == rhs


def _rad_identity(N: Submodule) -> bool:
    M = N.module
    return rad_submodule(N).members == scalar_times(scalar_radical(M, colon_module(N)), M.whole).members


def _majed_identity(N: Submodule, I: ScalarSet) -> bool:
    return residuals(scalar_times(I, N), I).members == N.members


def _semi_n_maximal(N: Submodule) -> bool:
    M = N.module
    return semi_n(N) and not any(N < K and semi_n(K) for K in _proper(M))


def _union_colon_proper(N: Submodule, S: frozenset) -> bool:
    M = N.module
    mask = np.zeros(M.order, dtype=bool)
    A = M.scalars.act
    for s in S:
        mask |= N.mask[A[s]]
    return not mask.all()


def zn_set(N: Submodule, reading: str = "module") -> frozenset:
    """Z_N under the chosen reading, as scalar ids.

    module: {r : rm in N for some m not in N}
    ring:   {r : rs in (N:M) for some s not in (N:M)}
    """
    M = N.module
    sd = M.scalars
    if reading == "module":
        hit = (N.mask[sd.act] & ~N.mask[None, :]).any(axis=1)
    elif reading == "ring":
        colon = np.zeros(sd.size, dtype=bool)
        colon[list(colon_module(N).members)] = True
        hit = (colon[sd.mul] & ~colon[None, :]).any(axis=1)
    else:
        raise InputError(f"unknown Z_N reading {reading!r}")
    return frozenset(np.flatnonzero(hit).tolist())


def _setup_props(setup) -> dict:
    """Hypothesis flags of an amalgamation or duplication setup."""
    if isinstance(setup, Amalgam):
        R2, M2, J = setup.f.dst, setup.M2, setup.J
        nil = set(np.flatnonzero(R2.nil_mask).tolist())
        ann = ann_module(M2).members
        return {
            "JM2_zero": setup.JM2.members == frozenset([0]),
            "J_in_nil": J.members <= nil,
            "J_in_nil_ann": J.members <= (nil & ann),
            "f_iso": setup.f.is_isomorphism,
            "f_epi": setup.f.is_surjective,
            "phi_iso": setup.phi.is_isomorphism,
            "phi_epi": setup.phi.is_surjective,
            "M2_faithful": is_faithful(M2),
            "nilrad_identity": ring_nilradical_is_amalgam_of_nilradical(setup.ring, setup.f, J),
        }
    R, M, J = setup.R, setup.M, setup.J
    nil = set(np.flatnonzero(R.nil_mask).tolist())
    ann = ann_module(M).members
    return {
        "JM2_zero": setup.JM.members == frozenset([0]),
        "J_in_nil": J.members <= nil,
        "J_in_nil_ann": J.members <= (nil & ann),
        "f_iso": True,
        "f_epi": True,
        "phi_iso": True,
        "phi_epi": True,
        "M2_faithful": is_faithful(M),
        "nilrad_identity": ring_nilradical_is_amalgam_of_nilradical(setup.ring, identity_hom(R), J),
    }


def _join(setup, N: Submodule) -> Submodule:
    return setup.n1_join(N) if isinstance(setup, Amalgam) else setup.n_join(N)


def _bar(setup, N: Submodule) -> Submodule:
    return setup.bar2(N) if isinstance(setup, Amalgam) else setup.bar(N)


def _setup_props_cached(ws: Workspace, name: str) -> dict:
    key = ("setup_props", name)
    M = ws[name]
    if key not in M._cache:
        M._cache[key] = _setup_props(ws.setups[name])
    return M._cache[key]


def _quotient(M: FiniteModule, L: Submodule):
    key = ("quotient", L.members)
    if key not in M._cache:
        M._cache[key] = quotient_module(M, L)
    return M._cache[key]


def _localization(M: FiniteModule, gens):
    key = ("localize", tuple(gens))
    if key not in M._cache:
        M._cache[key] = localize(M, gens)
    return M._cache[key]


def _same(X, Y) -> bool:
    return X.members == Y.members


# ------------------------------------------------------------------ witnesses

class _Witness:
    """Builds a replayable workspace fragment plus the facts of one verdict."""

    def __init__(self, ws: Workspace):
        self.ws = ws
        self.names: list[str] = []
        self.extra: list[str] = []
        self.facts: list[list] = []
        self.taken: set[str] = set()

    def ref(self, obj) -> str:
        n = self.ws.name_of(obj)
        if n is None:
            raise InputError("object is not part of the catalog workspace")
        if n not in self.names:
            self.names.append(n)
        return n

    def _fresh(self, tag: str) -> str:
        name, i = f"W_{tag}", 2
        while name in self.taken:
            name, i = f"W_{tag}{i}", i + 1
        self.taken.add(name)
        return name

    def sub(self, N: Submodule, tag: str = "N", module: str | None = None) -> str:
        owner = module or self.ref(N.module)
        name = self._fresh(tag)
        self.extra.append(f"submodule {name} = gen {owner}" + "".join(f" {g}" for g in N.gens))
        return name

    def ideal(self, R: FiniteRing, members, tag: str = "I", ring: str | None = None) -> str:
        owner = ring or self.ref(R)
        I = R.ideal_from_members(members)
        name = self._fresh(tag)
        self.extra.append(f"ideal {name} = gen {owner}" + "".join(f" {g}" for g in I.gens))
        return name

    def scalar_ideal(self, M: FiniteModule, I: ScalarSet, tag: str = "I"):
        """An int d for dZ, or the name of a declared finite ideal."""
        if M.over_integers:
            return int(I.gen)
        return self.ideal(M.base, I.members, tag)

    def quotient(self, M: FiniteModule, L: Submodule, tag: str = "Q") -> str:
        owner = self.ref(M)
        lname = self.sub(L, "L")
        name = self._fresh(tag)
        self.extra.append(f"module {name} = quotient {owner} {lname}")
        return name

    def fact(self, pred: str, *args) -> None:
        self.facts.append([pred, *args])

    def done(self, failures_hint: str = "", **detail) -> dict:
        spec = self.ws.fragment(self.names) + "".join(line + "\n" for line in self.extra)
        out = {"spec": spec, "facts": self.facts, "detail": {k: str(v) for k, v in detail.items()}}
        return out


def _flags_witness(ws, N: Submodule, facts, **detail) -> dict:
    w = _Witness(ws)
    n = w.sub(N)
    for flag, expected in facts:
        w.fact(flag, n, expected)
    return w.done(module=N.module.name, N=_labels(N), **detail)


# ----------------------------------------------------------------- fact replay

def _scalar_arg(ws: Workspace, M: FiniteModule, x) -> ScalarSet:
    if isinstance(x, int):
        return integer_ideal(M, x)
    I = ws[x]
    return ScalarSet(M.base, I.members)


def _module_of(ws: Workspace, x) -> FiniteModule:
    o = ws[x]
    return o.module if isinstance(o, Submodule) else o


def _fact_value(ws: Workspace, fact: list):
    pred, args = fact[0], fact[1:-1]
    g = lambda i: ws[args[i]]
    if pred in ALL_SUBMODULE_FLAGS:
        return classify_flag(g(0), pred)
    if pred.startswith("ideal:") and pred[6:] in IDEAL_FLAGS:
        R, I = g(0), g(1)
        return classify_ideal(R, I)[pred[6:]]
    if pred == "zideal:semi_n":
        d = int(args[0])
        return None if d == 1 else INTEGERS.is_semi_n_ideal(d)
    if pred.startswith("module:"):
        M, what = g(0), pred[7:]
        if what in MODULE_FLAGS:
            return {"multiplication": is_multiplication_module, "faithful": is_faithful,
                    "torsion_free": is_torsion_free}[what](M)
        if what == "domain_base":
            return _domain(M)
        if what == "rad_ann_is_nil":
            return _rad_ann_is_nil(M)
    if pred == "subset":
        return g(0).members <= g(1).members
    if pred == "equal":
        return g(0).members == g(1).members
    if pred == "times":
        K = g(1)
        K = K.whole if isinstance(K, FiniteModule) else K
        return scalar_times(_scalar_arg(ws, K.module, args[0]), K).members == g(2).members
    if pred == "ideal_times_subset":
        N = g(1)
        R = N.module.base
        return scalar_times(ScalarSet(R, g(0).members), N.module.whole).members <= N.members
    if pred == "semi_n_at":
        return _semi_n_at(g(0), int(args[1]))
    if pred == "kpower_at":
        return _kpower_at(g(0), int(args[1]))
    if pred == "sqrt_colon_at":
        return sqrt_colon_decomposition_holds(g(0), int(args[1]))
    if pred == "colon_square_stable":
        return _colon_square_stable(g(0))
    if pred == "torsion_free_sub":
        return submodule_torsion_free(g(0))
    if pred == "power_subset":
        K, N = g(2), g(3)
        return _power_subset(K.module, int(args[0]), int(args[1]), K, N)
    if pred == "nilpotent":
        return bool(g(0).scalars.nil[int(args[1])])
    if pred == "k_property":
        return _k_property(g(0))
    if pred == "colon_semi_n_ideal":
        N = g(0)
        return ideal_is_semi_n(N.module, colon_module(N))
    if pred == "rad_colon_semi_n_ideal":
        N = g(0)
        return ideal_is_semi_n(N.module, scalar_radical(N.module, colon_module(N)))
    if pred == "is_IM_of_semi_n_ideal":
        return _is_im_of_semi_n_ideal(g(0))
    if pred == "rad_is":
        return rad_submodule(g(0)).members == g(1).members
    if pred == "colon_by_ideal_is":
        N = g(0)
        return residuals(N, _scalar_arg(ws, N.module, args[1])).members == g(2).members
    if pred == "smith_identity":
        N = g(0)
        return _smith_identity(N, _scalar_arg(ws, N.module, args[1]))
    if pred == "rad_identity":
        return _rad_identity(g(0))
    if pred == "majed_identity":
        N = g(0)
        return _majed_identity(N, _scalar_arg(ws, N.module, args[1]))
    if pred == "fg_faithful_mult_ideal":
        M = _module_of(ws, args[0])
        return fg_faithful_multiplication_ideal(M, _scalar_arg(ws, M, args[1]))
    if pred == "scalar_semi_n_ideal":
        M = _module_of(ws, args[0])
        return ideal_is_semi_n(M, _scalar_arg(ws, M, args[1]))
    if pred == "maximal_semi_n":
        return _semi_n_maximal(g(0))
    if pred in ("hom_image_is", "hom_preimage_is", "hom_kernel_in", "hom:epi", "hom:iso"):
        h = g(0)
        if isinstance(h, FiniteModule):
            h = ws.setups[args[0]]
        if pred == "hom:epi":
            return h.is_surjective
        if pred == "hom:iso":
            return h.is_isomorphism
        if pred == "hom_kernel_in":
            return h.kernel().members <= g(1).members
        if pred == "hom_image_is":
            return h.image(g(1)).members == g(2).members
        return h.preimage(g(1)).members == g(2).members
    if pred == "loc_image_is":
        N, gens = g(0), list(args[1])
        Q, proj = _localization(N.module, gens)
        return proj.image(N).members == g(2).members and Q.order == _module_of(ws, args[2]).order
    if pred == "loc_kernel_is":
        M, gens = g(0), list(args[1])
        Q, proj = _localization(M, gens)
        return proj.kernel().members == g(2).members
    if pred == "union_colon_proper":
        N = g(0)
        return _union_colon_proper(N, multiplicative_closure(N.module, list(args[1])))
    if pred == "zn_disjoint":
        N = g(0)
        S = multiplicative_closure(N.module, list(args[1]))
        return not (S & zn_set(N, args[2]))
    if pred == "intersection_is":
        sets = [ws[n].members for n in args[0]]
        return reduce(frozenset.intersection, sets) == g(1).members
    if pred == "product_sub_is":
        return product_submodule(g(0), g(1), g(2)).members == g(3).members
    if pred == "ideal_embed_is":
        A, I, N, X = g(0), g(1), g(2), g(3)
        return idealization_ids(A, I.members, N.members) == X.members
    if pred in ("join_is", "bar_is"):
        setup = ws.setups[args[0]]
        Y = (_join if pred == "join_is" else _bar)(setup, g(1))
        return Y.members == g(2).members
    if pred == "setup":
        return _setup_props(ws.setups[args[0]])[args[1]]
    raise InputError(f"unknown fact predicate {pred!r}")


def evaluate_fact(ws: Workspace, fact: list):
    v = _fact_value(ws, fact)
    return bool(v) if isinstance(v, (bool, np.bool_)) else v


def replay_witness(witness: dict) -> tuple[bool, list]:
    """Rebuild the witness fragment and re-evaluate its facts.

    Returns (all facts reproduced, [(fact, actual value)]).
    """
    ws = load_workspace(witness["spec"])
    results = [(f, evaluate_fact(ws, f)) for f in witness["facts"]]
    return all(actual == f[-1] for f, actual in results), results


# ------------------------------------------------------------------ checkers

class _Ctx:
    def __init__(self, catalog: InstanceCatalog, seed: int, zn_reading: str):
        if zn_reading not in ZN_READINGS:
            raise InputError(f"unknown Z_N reading {zn_reading!r}")
        self.cat = catalog
        self.ws = catalog.workspace
        self.seed = seed
        self.zn_reading = zn_reading
        self.mods = list(catalog.iter_modules())

    def W(self) -> _Witness:
        return _Witness(self.ws)


def _chk_diagram(ctx: _Ctx, scan: _Scan):
    for _, M in ctx.mods:
        for N in _proper(M):
            pv = core_flags(N)
            bad = next(((a, b) for a, b in DIAGRAM if pv[a] and not pv[b]), None)
            scan.see(True, bad is None, lambda: _flags_witness(
                ctx.ws, N, [(bad[0], True), (bad[1], False)], implication=f"{bad[0]} => {bad[1]}"))


def _chk_char1(ctx: _Ctx, scan: _Scan):
    for _, M in ctx.mods:
        t = M.tables
        elig = np.flatnonzero(t.ann_zero).tolist()
        for N in _proper(M):
            scan.skip(M.order - len(elig))
            if not elig:
                continue
            viol = _semi_n_violations(t, N.mask)
            for m in elig:
                s1 = not viol[:, m].any()
                s2 = _kpower_at(N, m)
                s3 = sqrt_colon_decomposition_holds(N, m)

                def wit():
                    w = ctx.W()
                    n = w.sub(N)
                    w.fact("semi_n_at", n, m, s1)
                    w.fact("kpower_at", n, m, s2)
                    w.fact("sqrt_colon_at", n, m, s3)
                    return w.done(module=M.name, N=_labels(N), m=M.labels[m])
                scan.see(True, s1 == s2 == s3, wit)


def _chk_obs_colon(ctx: _Ctx, scan: _Scan):
    for _, M in ctx.mods:
        tf = is_torsion_free(M)
        for N in _proper(M):
            if not tf:
                scan.see(False)
                continue
            a, b = semi_n(N), _colon_square_stable(N)

            def wit():
                w = ctx.W()
                n = w.sub(N)
                w.fact("module:torsion_free", w.ref(M), True)
                w.fact("semi_n", n, a)
                w.fact("colon_square_stable", n, b)
                return w.done(module=M.name, N=_labels(N))
            scan.see(True, a == b, wit)


def _chk_char_fwd(ctx: _Ctx, scan: _Scan):
    for _, M in ctx.mods:
        props = _proper(M)
        Ks = [K for K in enumerate_submodules(M) if len(K) > 1]
        tfK = [K for K in Ks if submodule_torsion_free(K)]
        scan.skip(len(props) * (len(Ks) - len(tfK)))
        if not tfK:
            continue
        t = M.tables
        for N in props:
            sn = semi_n(N)
            inN = N.mask
            for K in tfK:
                kk = K.sorted()
                bad = ~t.nil & inN[t.A2[:, kk]].all(axis=1) & ~inN[t.A[:, kk]].all(axis=1)

                def wit():
                    r = int(np.flatnonzero(bad)[0])
                    w = ctx.W()
                    n, k = w.sub(N), w.sub(K, "K")
                    w.fact("semi_n", n, True)
                    w.fact("torsion_free_sub", k, True)
                    w.fact("nilpotent", w.ref(M), r, False)
                    w.fact("power_subset", r, 2, k, n, True)
                    w.fact("power_subset", r, 1, k, n, False)
                    return w.done(module=M.name, N=_labels(N), K=_labels(K), r=M.scalars.labels[r])
                scan.see(sn, not bad.any(), wit)


def _chk_char_conv(ctx: _Ctx, scan: _Scan):
    for _, M in ctx.mods:
        dom = _domain(M)
        for N in _proper(M):
            if not dom:
                scan.see(False)
                continue
            hyp = _k_property(N)

            def wit():
                w = ctx.W()
                n = w.sub(N)
                w.fact("module:domain_base", w.ref(M), True)
                w.fact("k_property", n, True)
                w.fact("semi_n", n, False)
                return w.done(module=M.name, N=_labels(N))
            scan.see(hyp, semi_n(N), wit)


def _chk_tf_equiv(ctx: _Ctx, scan: _Scan):
    for _, M in ctx.mods:
        tf = is_torsion_free(M)
        for N in _proper(M):
            if not tf:
                scan.see(False)
                continue
            pv = core_flags(N)
            vals = (pv["semi_r"], pv["semiprime"], pv["semi_n"])
            scan.see(True, len(set(vals)) == 1, lambda: _flags_witness(
                ctx.ws, N, list(zip(("semi_r", "semiprime", "semi_n"), vals))))


def _chk_colon_ideal(ctx: _Ctx, scan: _Scan):
    for _, M in ctx.mods:
        tf = is_torsion_free(M)
        for N in _proper(M):
            hyp = tf and semi_n(N)
            ok = ideal_is_semi_n(M, colon_module(N)) if hyp else True

            def wit():
                w = ctx.W()
                n = w.sub(N)
                w.fact("module:torsion_free", w.ref(M), True)
                w.fact("semi_n", n, True)
                w.fact("colon_semi_n_ideal", n, False)
                return w.done(module=M.name, N=_labels(N))
            scan.see(hyp, ok, wit)


def _faithful_mult(M: FiniteModule) -> bool:
    return is_faithful(M) and is_multiplication_module(M)


def _chk_smith(ctx: _Ctx, scan: _Scan):
    for _, M in ctx.mods:
        subs = enumerate_submodules(M)
        if not _faithful_mult(M):
            scan.skip(len(subs))
            continue
        ideals = scalar_ideals(M)
        for N in subs:
            bad = next((I for I in ideals if not _smith_identity(N, I)), None)
            rad_ok = _rad_identity(N)

            def wit():
                w = ctx.W()
                n = w.sub(N)
                mn = w.ref(M)
                w.fact("module:faithful", mn, True)
                w.fact("module:multiplication", mn, True)
                if bad is not None:
                    w.fact("smith_identity", n, w.scalar_ideal(M, bad), False)
                w.fact("rad_identity", n, rad_ok)
                return w.done(module=M.name, N=_labels(N))
            scan.see(True, bad is None and rad_ok, wit)


def _chk_majed(ctx: _Ctx, scan: _Scan):
    for _, M in ctx.mods:
        subs = enumerate_submodules(M)
        if not _faithful_mult(M):
            scan.skip(len(subs))
            continue
        good = [I for I in scalar_ideals(M) if fg_faithful_multiplication_ideal(M, I)]
        for N in subs:
            bad = next((I for I in good if not _majed_identity(N, I)), None)

            def wit():
                w = ctx.W()
                n = w.sub(N)
                mn = w.ref(M)
                i = w.scalar_ideal(M, bad)
                w.fact("module:faithful", mn, True)
                w.fact("module:multiplication", mn, True)
                w.fact("fg_faithful_mult_ideal", mn, i, True)
                w.fact("majed_identity", n, i, False)
                return w.done(module=M.name, N=_labels(N))
            scan.see(bool(good), bad is None, wit)


def _im_witness(ctx, M, I, N, facts, **detail):
    w = ctx.W()
    mn = w.ref(M)
    i = w.scalar_ideal(M, I)
    n = w.sub(N, "IM")
    w.fact("times", i, mn, n, True)
    for pred, arg, expected in facts:
        target = {"M": mn, "N": n, "I": i}[arg]
        if pred == "scalar_semi_n_ideal":
            w.fact(pred, mn, i, expected)
        else:
            w.fact(pred, target, expected)
    return w.done(module=M.name, I=(I.gen if M.over_integers else sorted(I.members)), IM=_labels(N), **detail)


def _chk_im1(ctx: _Ctx, scan: _Scan):
    for _, M in ctx.mods:
        mult_tf = is_torsion_free(M) and is_multiplication_module(M)
        for I in scalar_ideals(M):
            if not mult_tf:
                scan.see(False)
                continue
            N = scalar_times(I, M.whole)
            hyp = semi_n(N)
            ok = ideal_is_semi_n(M, I) if hyp else True
            scan.see(hyp, ok, lambda: _im_witness(ctx, M, I, N, [
                ("module:multiplication", "M", True), ("module:torsion_free", "M", True),
                ("semi_n", "N", True), ("scalar_semi_n_ideal", "I", False)]))


def _chk_im2(ctx: _Ctx, scan: _Scan):
    whole_hits = faithful_hits = 0
    for _, M in ctx.mods:
        base_ok = _domain(M) and is_multiplication_module(M)
        for I in scalar_ideals(M):
            hyp = base_ok and ideal_is_semi_n(M, I)
            if not hyp:
                scan.see(False)
                continue
            N = scalar_times(I, M.whole)
            ok = semi_n(N)
            if not ok:
                whole_hits += not N.is_proper
                faithful_hits += is_faithful(M)
            scan.see(True, ok, lambda: _im_witness(ctx, M, I, N, [
                ("module:domain_base", "M", True), ("module:multiplication", "M", True),
                ("scalar_semi_n_ideal", "I", True), ("semi_n", "N", classify_flag(N, "semi_n"))],
                IM_is_M=not N.is_proper, faithful=is_faithful(M)))
    r = scan.report
    if r.failures:
        r.note = (f"{whole_hits} of {r.failures} failures have IM = M; "
                  f"{faithful_hits} of them are on faithful modules")


def _chk_nm_equiv(ctx: _Ctx, scan: _Scan):
    for _, M in ctx.mods:
        hyp = is_torsion_free(M) and is_multiplication_module(M)
        for N in _proper(M):
            if not hyp:
                scan.see(False)
                continue
            vals = (semi_n(N), ideal_is_semi_n(M, colon_module(N)), _is_im_of_semi_n_ideal(N))

            def wit():
                w = ctx.W()
                n = w.sub(N)
                mn = w.ref(M)
                w.fact("module:multiplication", mn, True)
                w.fact("module:torsion_free", mn, True)
                w.fact("semi_n", n, vals[0])
                w.fact("colon_semi_n_ideal", n, vals[1])
                w.fact("is_IM_of_semi_n_ideal", n, vals[2])
                return w.done(module=M.name, N=_labels(N))
            scan.see(True, len(set(vals)) == 1, wit)


def _chk_rad_remark(ctx: _Ctx, scan: _Scan):
    for _, M in ctx.mods:
        base_ok = _domain(M) and is_multiplication_module(M)
        for N in enumerate_submodules(M):
            hyp = base_ok and ideal_is_semi_n(M, scalar_radical(M, colon_module(N)))
            if not hyp:
                scan.see(False)
                continue
            R = rad_submodule(N)

            def wit():
                w = ctx.W()
                n, rn = w.sub(N), w.sub(R, "rad")
                mn = w.ref(M)
                w.fact("module:domain_base", mn, True)
                w.fact("module:multiplication", mn, True)
                w.fact("rad_colon_semi_n_ideal", n, True)
                w.fact("rad_is", n, rn, True)
                w.fact("semi_n", rn, classify_flag(R, "semi_n"))
                return w.done(module=M.name, N=_labels(N), rad=_labels(R))
            scan.see(True, semi_n(R), wit)


def _chk_n_colon_i(ctx: _Ctx, scan: _Scan):
    for _, M in ctx.mods:
        dom = _domain(M)
        ideals = scalar_ideals(M)
        for N in _proper(M):
            hyp_n = dom and semi_n(N)
            for I in ideals:
                if not hyp_n:
                    scan.see(False)
                    continue
                X = residuals(N, I)
                hyp = X.is_proper

                def wit():
                    w = ctx.W()
                    n, x = w.sub(N), w.sub(X, "X")
                    w.fact("module:domain_base", w.ref(M), True)
                    w.fact("semi_n", n, True)
                    w.fact("colon_by_ideal_is", n, w.scalar_ideal(M, I), x, True)
                    w.fact("semi_n", x, False)
                    return w.done(module=M.name, N=_labels(N), colon=_labels(X))
                scan.see(hyp, semi_n(X) if hyp else True, wit)


def _chk_maximal_prime(ctx: _Ctx, scan: _Scan):
    for _, M in ctx.mods:
        F = [N for N in _proper(M) if semi_n(N)]
        maximal = [N for N in F if not any(N < K for K in F)]
        dom = _domain(M)
        for N in maximal:
            def wit():
                w = ctx.W()
                n = w.sub(N)
                w.fact("module:domain_base", w.ref(M), True)
                w.fact("maximal_semi_n", n, True)
                w.fact("prime", n, False)
                return w.done(module=M.name, N=_labels(N))
            scan.see(dom, is_prime_submodule(N) if dom else True, wit)


def _chk_in1(ctx: _Ctx, scan: _Scan):
    for _, M in ctx.mods:
        base_ok = _domain(M) and _faithful_mult(M)
        ideals = scalar_ideals(M)
        for N in _proper(M):
            for I in ideals:
                hyp = base_ok and ideal_is_semi_n(M, I) and semi_n(N) and is_pure(N, weakly=True)[0]
                if not hyp:
                    scan.see(False)
                    continue
                X = scalar_times(I, N)

                def wit():
                    w = ctx.W()
                    n, x = w.sub(N), w.sub(X, "IN")
                    mn = w.ref(M)
                    i = w.scalar_ideal(M, I)
                    w.fact("module:domain_base", mn, True)
                    w.fact("module:faithful", mn, True)
                    w.fact("module:multiplication", mn, True)
                    w.fact("scalar_semi_n_ideal", mn, i, True)
                    w.fact("semi_n", n, True)
                    w.fact("weakly_pure", n, True)
                    w.fact("times", i, n, x, True)
                    w.fact("semi_n", x, False)
                    return w.done(module=M.name, N=_labels(N), IN=_labels(X))
                scan.see(True, semi_n(X), wit)


def _chk_in2(ctx: _Ctx, scan: _Scan):
    for _, M in ctx.mods:
        base_ok = _domain(M) and _faithful_mult(M)
        ideals = scalar_ideals(M)
        for N in _proper(M):
            for I in ideals:
                if not (base_ok and fg_faithful_multiplication_ideal(M, I)):
                    scan.see(False)
                    continue
                X = scalar_times(I, N)

                def wit():
                    w = ctx.W()
                    n, x = w.sub(N), w.sub(X, "IN")
                    mn = w.ref(M)
                    i = w.scalar_ideal(M, I)
                    w.fact("module:domain_base", mn, True)
                    w.fact("fg_faithful_mult_ideal", mn, i, True)
                    w.fact("times", i, n, x, True)
                    w.fact("semi_n", x, True)
                    w.fact("semi_n", n, False)
                    return w.done(module=M.name, N=_labels(N), IN=_labels(X))
                scan.see(semi_n(X), semi_n(N), wit)


def _catalog_homs(ctx: _Ctx) -> list[tuple[str, ModuleHom]]:
    out = [(n, ctx.ws[n]) for n in ctx.cat.homs if isinstance(ctx.ws[n], ModuleHom)]
    out += [(n, h) for n, h in ctx.ws.setups.items() if isinstance(h, ModuleHom)]
    return out


def _chk_fsub1(ctx: _Ctx, scan: _Scan):
    for hname, f in _catalog_homs(ctx):
        epi = f.is_surjective
        ker = f.kernel()
        for N in _proper(f.src):
            hyp = epi and ker <= N and semi_n(N)
            if not hyp:
                scan.see(False)
                continue
            X = f.image(N)

            def wit():
                w = ctx.W()
                w.ref(f.dst)
                w.names.append(hname) if hname not in w.names else None
                n, x = w.sub(N), w.sub(X, "fN")
                w.fact("hom:epi", hname, True)
                w.fact("hom_kernel_in", hname, n, True)
                w.fact("semi_n", n, True)
                w.fact("hom_image_is", hname, n, x, True)
                w.fact("semi_n", x, classify_flag(X, "semi_n"))
                return w.done(hom=hname, N=_labels(N), image=_labels(X))
            scan.see(True, semi_n(X), wit)


def _chk_fsub2(ctx: _Ctx, scan: _Scan):
    for hname, f in _catalog_homs(ctx):
        iso = f.is_isomorphism
        for N in _proper(f.dst):
            hyp = iso and semi_n(N)
            if not hyp:
                scan.see(False)
                continue
            X = f.preimage(N)

            def wit():
                w = ctx.W()
                w.names.append(hname) if hname not in w.names else None
                n, x = w.sub(N), w.sub(X, "pre")
                w.fact("hom:iso", hname, True)
                w.fact("semi_n", n, True)
                w.fact("hom_preimage_is", hname, n, x, True)
                w.fact("semi_n", x, False)
                return w.done(hom=hname, N=_labels(N), preimage=_labels(X))
            scan.see(True, semi_n(X), wit)


def _chk_quotient(ctx: _Ctx, scan: _Scan):
    for _, M in ctx.mods:
        if M.order > QUOTIENT_ORDER_LIMIT:
            continue
        props = _proper(M)
        for L in props:
            above = [N for N in props if L <= N]
            Q, proj = None, None
            for N in above:
                if not semi_n(N):
                    scan.see(False)
                    continue
                if Q is None:
                    Q, proj = _quotient(M, L)
                X = proj.image(N)

                def wit():
                    w = ctx.W()
                    q = w.quotient(M, L)
                    n = w.sub(N)
                    x = w.sub(X, "NL", module=q)
                    w.fact("subset", "W_L", n, True)
                    w.fact("semi_n", n, True)
                    w.fact("hom_image_is", q, n, x, True)
                    w.fact("semi_n", x, classify_flag(X, "semi_n"))
                    return w.done(module=M.name, L=_labels(L), N=_labels(N))
                scan.see(True, semi_n(X), wit)


def _loc_witness(ctx, M, gens, N, Q, proj, facts, **detail):
    w = ctx.W()
    mn = w.ref(M)
    n = w.sub(N)
    g = [int(s) for s in gens]
    if M.over_integers:
        t = w.sub(proj.kernel(), "TS")
        q = w._fresh("Q")
        w.extra.append(f"module {q} = quotient {mn} {t}")
        w.fact("loc_kernel_is", mn, g, t, True)
        x = w.sub(proj.image(N), "SN", module=q)
        w.fact("hom_image_is", q, n, x, True)
    else:
        x = n
    for pred, which, expected in facts:
        if pred == "union_colon_proper":
            w.fact(pred, n, g, expected)
        elif pred == "zn_disjoint":
            w.fact(pred, n, g, ctx.zn_reading, expected)
        else:
            w.fact(pred, {"N": n, "SN": x}[which], expected)
    return w.done(module=M.name, S_gens=g, N=_labels(N), **detail)


def _chk_sm1(ctx: _Ctx, scan: _Scan):
    for mname, gens in ctx.cat.localizations:
        M = ctx.ws[mname]
        Q, proj = _localization(M, gens)
        S = multiplicative_closure(M, gens)
        for N in _proper(M):
            hyp = semi_n(N) and _union_colon_proper(N, S)
            if not hyp:
                scan.see(False)
                continue
            X = proj.image(N)
            scan.see(True, semi_n(X), lambda: _loc_witness(ctx, M, gens, N, Q, proj, [
                ("semi_n", "N", True), ("union_colon_proper", "N", True),
                ("semi_n", "SN", classify_flag(X, "semi_n"))]))


def _chk_sm2(ctx: _Ctx, scan: _Scan):
    for mname, gens in ctx.cat.localizations:
        M = ctx.ws[mname]
        Q, proj = _localization(M, gens)
        S = multiplicative_closure(M, gens)
        for N in _proper(M):
            X = proj.image(N)
            hyp = semi_n(X) and not (S & zn_set(N, ctx.zn_reading))
            scan.see(hyp, semi_n(N) if hyp else True, lambda: _loc_witness(ctx, M, gens, N, Q, proj, [
                ("semi_n", "SN", True), ("zn_disjoint", "N", True), ("semi_n", "N", False)]))


def _chk_int(ctx: _Ctx, scan: _Scan):
    for name, M in ctx.mods:
        F = [N for N in _proper(M) if semi_n(N)]
        if not F:
            continue
        rng = random.Random(f"{ctx.seed}:{name}")
        fams = [(i, j) for i in range(len(F)) for j in range(i + 1, len(F))]
        for _ in range(RANDOM_FAMILIES):
            k = rng.randint(1, len(F))
            fams.append(tuple(sorted(rng.sample(range(len(F)), k))))
        for fam in fams:
            X = reduce(lambda a, b: a & b, (F[i] for i in fam))

            def wit():
                w = ctx.W()
                names = [w.sub(F[i], "F") for i in fam]
                x = w.sub(X, "cap")
                for n in names:
                    w.fact("semi_n", n, True)
                w.fact("intersection_is", names, x, True)
                w.fact("semi_n", x, False)
                return w.done(module=M.name, family=[_labels(F[i]) for i in fam])
            scan.see(True, semi_n(X), wit)
        # unions of two-element chains
        for i, j in fams[: len(F) * (len(F) - 1) // 2]:
            A, B = F[i], F[j]
            if A <= B or B <= A:
                U = B if A <= B else A
                scan.see(True, semi_n(U), lambda: _flags_witness(ctx.ws, U, [("semi_n", False)], chain_union=True))


def _product_witness(ctx, P, N1, N2, N, flags, **detail):
    w = ctx.W()
    pn = w.ref(P)
    a, b, n = w.sub(N1, "N1"), w.sub(N2, "N2"), w.sub(N)
    w.fact("product_sub_is", pn, a, b, n, True)
    for which, pred, expected in flags:
        target = {"N1": a, "N2": b, "N": n, "M1": w.ref(N1.module), "M2": w.ref(N2.module)}[which]
        w.fact(pred, target, expected)
    return w.done(product=P.name, N1=_labels(N1), N2=_labels(N2), **detail)


def _iter_products(ctx):
    for pname, m1, m2 in ctx.cat.products:
        P, M1, M2 = ctx.ws[pname], ctx.ws[m1], ctx.ws[m2]
        for N1 in enumerate_submodules(M1):
            for N2 in enumerate_submodules(M2):
                yield P, M1, M2, N1, N2, product_submodule(P, N1, N2)


def _chk_cart_fwd(ctx: _Ctx, scan: _Scan):
    for P, M1, M2, N1, N2, N in _iter_products(ctx):
        if not N.is_proper:
            continue
        hyp = semi_n(N)
        parts = [(k, X) for k, X in (("N1", N1), ("N2", N2)) if X.is_proper]
        ok = all(semi_n(X) for _, X in parts) if hyp else True
        scan.see(hyp, ok, lambda: _product_witness(ctx, P, N1, N2, N, [("N", "semi_n", True)] + [
            (k, "semi_n", semi_n(X)) for k, X in parts]))


def _chk_cart_conv(ctx: _Ctx, scan: _Scan):
    for P, M1, M2, N1, N2, N in _iter_products(ctx):
        if not N.is_proper:
            continue
        parts = [(k, X) for k, X in (("N1", N1), ("N2", N2)) if X.is_proper]
        hyp = all(is_torsion_free(X.module) and semi_n(X) for _, X in parts)
        scan.see(hyp, semi_n(N) if hyp else True, lambda: _product_witness(ctx, P, N1, N2, N, [
            (k.replace("N", "M"), "module:torsion_free", True) for k, _ in parts] + [
            (k, "semi_n", True) for k, _ in parts] + [("N", "semi_n", False)]))


def _chk_cc(ctx: _Ctx, scan: _Scan):
    for P, M1, M2, N1, N2, N in _iter_products(ctx):
        if not (N1.is_proper and N2.is_proper):
            continue
        s, s1, s2 = semi_n(N), semi_n(N1), semi_n(N2)
        conv = is_torsion_free(M1) and is_torsion_free(M2) and s1 and s2
        ok = (not s or (s1 and s2)) and (not conv or s)
        scan.see(s or conv, ok, lambda: _product_witness(ctx, P, N1, N2, N, [
            ("M1", "module:torsion_free", is_torsion_free(M1)), ("M2", "module:torsion_free", is_torsion_free(M2)),
            ("N", "semi_n", s), ("N1", "semi_n", s1), ("N2", "semi_n", s2)]))


def _iter_idealizations(ctx):
    for aname, rname, mname in ctx.cat.idealizations:
        A, R, M = ctx.ws[aname], ctx.ws[rname], ctx.ws[mname]
        for I in enumerate_ideals(R):
            if not I.is_proper:
                continue
            IM = scalar_times(ScalarSet(R, I.members), M.whole)
            for N in enumerate_submodules(M):
                if IM.members <= N.members:
                    yield A, R, M, I, N, idealization_ids(A, I.members, N.members)


def _ide_witness(ctx, A, R, M, I, N, X, facts, **detail):
    w = ctx.W()
    an = w.ref(A)
    rn = w.ref(R)
    i = w.ideal(R, I.members)
    n = w.sub(N)
    x = w.ideal(A, X, "IpN")
    w.fact("ideal_times_subset", i, n, True)
    w.fact("ideal_embed_is", an, i, n, x, True)
    for pred, which, expected in facts:
        args = {"A": [an, x], "R": [rn, i], "N": [n], "M": [w.ref(M)]}[which]
        w.fact(pred, *args, expected)
    return w.done(ring=A.name, I=sorted(R.labels[a] for a in I.members), N=_labels(N), **detail)


def _chk_ide_fwd(ctx: _Ctx, scan: _Scan):
    # prefer a witness with N proper; N = M fails only because n-submodules are proper
    fallback = None
    proper = 0
    for A, R, M, I, N, X in _iter_idealizations(ctx):
        hyp = bool(_ideal_pv(A, X)["semi_n"])
        a = bool(_ideal_pv(R, I.members)["semi_n"])
        b = n_sub(N)
        build = lambda: _ide_witness(ctx, A, R, M, I, N, X, [
            ("ideal:semi_n", "A", True), ("ideal:semi_n", "R", a), ("n_sub", "N", classify_flag(N, "n_sub"))])
        if hyp and not (a and b):
            if N.is_proper:
                proper += 1
            elif fallback is None:
                fallback = build()
        scan.see(hyp, a and b, build if N.is_proper else None)
    if scan.report.failures:
        scan.report.note = f"{proper} of {scan.report.failures} failures have N proper"
        if scan.report.witness is None:
            scan.report.witness = fallback


def _chk_ide_conv(ctx: _Ctx, scan: _Scan):
    for A, R, M, I, N, X in _iter_idealizations(ctx):
        hyp = _rad_ann_is_nil(M) and bool(_ideal_pv(R, I.members)["semi_n"]) and n_sub(N)
        ok = bool(_ideal_pv(A, X)["semi_n"]) if hyp else True
        scan.see(hyp, ok, lambda: _ide_witness(ctx, A, R, M, I, N, X, [
            ("module:rad_ann_is_nil", "M", True), ("ideal:semi_n", "R", True), ("n_sub", "N", True),
            ("ideal:semi_n", "A", False)]))


def _chk_remark_ide(ctx: _Ctx, scan: _Scan):
    found = 0
    for A, R, M, I, N, X in _iter_idealizations(ctx):
        hyp = (not _rad_ann_is_nil(M)) and bool(_ideal_pv(R, I.members)["semi_n"]) and n_sub(N)
        scan.see(hyp)
        if hyp and not _ideal_pv(A, X)["semi_n"]:
            found += 1
            if scan.report.witness is None:
                scan.report.witness = _ide_witness(ctx, A, R, M, I, N, X, [
                    ("module:rad_ann_is_nil", "M", False), ("ideal:semi_n", "R", True), ("n_sub", "N", True),
                    ("ideal:semi_n", "A", False)])
    scan.report.note = f"{found} instances where the converse fails"
    if not found:
        scan.report.failures = 1
        scan.report.note = "no instance found where the converse fails"


def _chk_amalg_nilrad(ctx: _Ctx, scan: _Scan):
    seen: set[int] = set()
    both = {True: 0, False: 0}
    for name in ctx.cat.amalgams + ctx.cat.dups:
        setup = ctx.ws.setups[name]
        if id(setup.ring) in seen:
            continue
        seen.add(id(setup.ring))
        p = _setup_props_cached(ctx.ws, name)
        both[p["J_in_nil"]] += 1

        def wit():
            w = ctx.W()
            w.ref(ctx.ws[name])
            w.fact("setup", name, "J_in_nil", p["J_in_nil"])
            w.fact("setup", name, "nilrad_identity", p["nilrad_identity"])
            return w.done(module=name)
        scan.see(True, p["nilrad_identity"] == p["J_in_nil"], wit)
    scan.report.note = f"{both[True]} rings with J in sqrt(0), {both[False]} with J not in sqrt(0)"


def _setup_witness(ctx, name, side, N, Y, hyps, flags, **detail):
    w = ctx.W()
    w.ref(ctx.ws[name])
    n = w.sub(N)
    y = w.sub(Y, "E")
    w.fact("join_is" if side == "join" else "bar_is", name, n, y, True)
    for attr, expected in hyps:
        w.fact("setup", name, attr, expected)
    for which, pred, expected in flags:
        w.fact(pred, {"N": n, "E": y}[which], expected)
    return w.done(module=name, N=_labels(N), embedded=_labels(Y), **detail)


def _iter_setups(ctx, names, side):
    for name in names:
        setup = ctx.ws.setups[name]
        p = _setup_props_cached(ctx.ws, name)
        base = setup.M1 if (side == "join" and isinstance(setup, Amalgam)) else (
            setup.M2 if isinstance(setup, Amalgam) else setup.M)
        for N in _proper(base):
            key = ("embed", side, id(setup), N.members)
            P = ctx.ws[name]
            if key not in P._cache:
                P._cache[key] = (_join if side == "join" else _bar)(setup, N)
            yield name, p, N, P._cache[key]


def _implication_check(ctx, scan, names, side, hyp_fn, concl, hyps, flags):
    """Generic embedded-submodule check: hyp_fn(p, N, E) -> bool, concl(N, E) -> bool."""
    for name, p, N, E in _iter_setups(ctx, names, side):
        hyp = hyp_fn(p, N, E)
        ok = concl(N, E) if hyp else True
        scan.see(hyp, ok, lambda: _setup_witness(ctx, name, side, N, E, [(a, p[a]) for a in hyps], [
            (which, pred, classify_flag({"N": N, "E": E}[which], pred)) for which, pred in flags]))


def _amalg(ctx):
    return ctx.cat.amalgams


def _chk_amalg_fwd(ctx, scan):
    _implication_check(ctx, scan, _amalg(ctx), "join", lambda p, N, E: n_sub(E), lambda N, E: n_sub(N),
                       [], [("E", "n_sub"), ("N", "n_sub")])


def _chk_amalg_conv(ctx, scan):
    _implication_check(ctx, scan, _amalg(ctx), "join", lambda p, N, E: p["JM2_zero"] and n_sub(N),
                       lambda N, E: n_sub(E), ["JM2_zero"], [("N", "n_sub"), ("E", "n_sub")])


def _chk_n1_semi_1(ctx, scan):
    _implication_check(ctx, scan, _amalg(ctx), "join",
                       lambda p, N, E: p["JM2_zero"] and p["J_in_nil"] and semi_n(N),
                       lambda N, E: semi_n(E), ["JM2_zero", "J_in_nil"], [("N", "semi_n"), ("E", "semi_n")])


def _chk_n1_semi_2(ctx, scan):
    _implication_check(ctx, scan, _amalg(ctx), "join",
                       lambda p, N, E: p["JM2_zero"] and p["M2_faithful"] and semi_n(E),
                       lambda N, E: semi_n(N), ["JM2_zero", "M2_faithful"], [("E", "semi_n"), ("N", "semi_n")])


def _chk_amalg2_1(ctx, scan):
    _implication_check(ctx, scan, _amalg(ctx), "bar",
                       lambda p, N, E: p["JM2_zero"] and p["phi_iso"] and n_sub(N),
                       lambda N, E: n_sub(E), ["JM2_zero", "phi_iso"], [("N", "n_sub"), ("E", "n_sub")])


def _chk_amalg2_2(ctx, scan):
    _implication_check(ctx, scan, _amalg(ctx), "bar",
                       lambda p, N, E: p["f_epi"] and p["phi_epi"] and n_sub(E),
                       lambda N, E: n_sub(N), ["f_epi", "phi_epi"], [("E", "n_sub"), ("N", "n_sub")])


def _chk_amalg2_3(ctx, scan):
    _implication_check(ctx, scan, _amalg(ctx), "bar",
                       lambda p, N, E: p["f_iso"] and p["phi_epi"] and semi_n(E),
                       lambda N, E: semi_n(N), ["f_iso", "phi_epi"], [("E", "semi_n"), ("N", "semi_n")])


def _chk_n2_semi_2(ctx, scan):
    _implication_check(ctx, scan, _amalg(ctx), "bar",
                       lambda p, N, E: p["f_iso"] and p["phi_epi"] and p["J_in_nil_ann"] and semi_n(N),
                       lambda N, E: semi_n(E), ["f_iso", "phi_epi", "J_in_nil_ann"],
                       [("N", "semi_n"), ("E", "semi_n")])


def _dup_check(flag: str, side: str):
    pred = n_sub if flag == "n_sub" else semi_n
    conv_attr = "JM2_zero" if flag == "n_sub" else "J_in_nil_ann"

    def run(ctx, scan):
        for name, p, N, E in _iter_setups(ctx, ctx.cat.dups, side):
            fwd = pred(E)
            conv = p[conv_attr] and pred(N)
            ok = (not fwd or pred(N)) and (not conv or pred(E))
            scan.see(fwd or conv, ok, lambda: _setup_witness(
                ctx, name, side, N, E, [(conv_attr, p[conv_attr])],
                [("E", flag, classify_flag(E, flag)), ("N", flag, classify_flag(N, flag))]))
    return run


CHECKERS = {
    "diagram": _chk_diagram,
    "thm-char1": _chk_char1,
    "obs-colon-torsionfree": _chk_obs_colon,
    "thm-char-fwd": _chk_char_fwd,
    "thm-char-conv": _chk_char_conv,
    "cor-torsionfree-equiv": _chk_tf_equiv,
    "cor-colon-ideal": _chk_colon_ideal,
    "lemma-smith": _chk_smith,
    "lemma-majed": _chk_majed,
    "thm-IM-1": _chk_im1,
    "thm-IM-2": _chk_im2,
    "cor-NM-equiv": _chk_nm_equiv,
    "rad-remark": _chk_rad_remark,
    "lemma-N-colon-I": _chk_n_colon_i,
    "prop-maximal-prime": _chk_maximal_prime,
    "thm-IN-1": _chk_in1,
    "thm-IN-2": _chk_in2,
    "prop-fsub-1": _chk_fsub1,
    "prop-fsub-2": _chk_fsub2,
    "cor-quotient": _chk_quotient,
    "thm-SM-1": _chk_sm1,
    "thm-SM-2": _chk_sm2,
    "lemma-int": _chk_int,
    "thm-cart-fwd": _chk_cart_fwd,
    "thm-cart-conv": _chk_cart_conv,
    "cor-cc": _chk_cc,
    "thm-Ide-fwd": _chk_ide_fwd,
    "thm-Ide-conv": _chk_ide_conv,
    "remark-Ide": _chk_remark_ide,
    "lemma-amalg-nilrad": _chk_amalg_nilrad,
    "thm-Amalg-fwd": _chk_amalg_fwd,
    "thm-Amalg-conv": _chk_amalg_conv,
    "thm-amalgN1-semi-1": _chk_n1_semi_1,
    "thm-amalgN1-semi-2": _chk_n1_semi_2,
    "thm-Amalg2-1": _chk_amalg2_1,
    "thm-Amalg2-2": _chk_amalg2_2,
    "thm-Amalg2-3": _chk_amalg2_3,
    # same statement as thm-Amalg2-3, kept as its own id
    "thm-amalgN2-semi-1": _chk_amalg2_3,
    "thm-amalgN2-semi-2": _chk_n2_semi_2,
    "cor-Dup1-n": _dup_check("n_sub", "join"),
    "cor-Dup1-semin": _dup_check("semi_n", "join"),
    "cor-Dup2-n": _dup_check("n_sub", "bar"),
    "cor-Dup2-semin": _dup_check("semi_n", "bar"),
}
assert tuple(CHECKERS) == THEOREM_IDS


def _resolve(catalog) -> InstanceCatalog:
    if isinstance(catalog, InstanceCatalog):
        return catalog
    return default_catalog(catalog)


def check_theorem(theorem: str, catalog="standard", seed: int = 0, mutation: str | None = None,
                  zn_reading: str = "module") -> CheckReport:
    if theorem not in CHECKERS:
        raise InputError(f"unknown theorem id {theorem!r}")
    cat = _resolve(catalog)
    ctx = _Ctx(cat, seed, zn_reading)
    report = CheckReport(theorem, seed=seed)
    start = time.perf_counter()
    with mutated(mutation):
        CHECKERS[theorem](ctx, _Scan(report))
    report.wall_time_ms = (time.perf_counter() - start) * 1000.0
    if report.failures:
        report.status = "fail"
        if report.witness is not None:
            report.witness["failures"] = report.failures
    return report


def check_all(catalog="standard", seed: int = 0, ids=None, mutation: str | None = None,
              zn_reading: str = "module") -> list[CheckReport]:
    """Reports for the selected ids (all by default), sorted by id."""
    ids = THEOREM_IDS if ids is None else tuple(ids)
    for t in ids:
        if t not in CHECKERS:
            raise InputError(f"unknown theorem id {t!r}")
    cat = _resolve(catalog)
    return [check_theorem(t, cat, seed, mutation, zn_reading) for t in sorted(set(ids))]


def summarize(reports: list[CheckReport]) -> dict:
    return {
        "total": len(reports),
        "passed": sum(r.passed for r in reports),
        "failed": [r.theorem for r in reports if r.status == "fail"],
        "vacuous": [r.theorem for r in reports if r.hypothesis_satisfied == 0],
        "notes": {r.theorem: r.note for r in reports if r.note},
    }


# ------------------------------------------------------------------ searches

def search_separating(prop_a: str, prop_b: str, catalog="standard") -> dict | None:
    """First proper submodule (catalog order) with prop_a true and prop_b false."""
    for p in (prop_a, prop_b):
        if p not in ALL_SUBMODULE_FLAGS:
            raise InputError(f"unknown flag {p!r}; expected one of {', '.join(ALL_SUBMODULE_FLAGS)}")
    cat = _resolve(catalog)
    if prop_a == prop_b:
        return None
    for _, M in cat.iter_modules():
        for N in _proper(M):
            if classify_flag(N, prop_a) is True and classify_flag(N, prop_b) is False:
                w = _flags_witness(cat.workspace, N, [(prop_a, True), (prop_b, False)])
                wit = classify_submodule(N).witnesses.get(prop_b)
                if wit is not None:
                    w["detail"]["violation"] = str(_label_tuple(M, wit))
                return w
    return None


def _label_tuple(M: FiniteModule, wit: tuple) -> tuple:
    if len(wit) == 2 and all(isinstance(x, (int, np.integer)) for x in wit):
        return (M.scalars.labels[wit[0]], M.labels[wit[1]])
    return wit


def mutation_report(catalog="standard", seed: int = 0, ids=None) -> dict:
    """For each mutation: ids whose verdict got worse than at baseline."""
    base = {r.theorem: r for r in check_all(catalog, seed, ids)}
    out = {}
    for name in MUTATIONS:
        reps = check_all(catalog, seed, ids, mutation=name)
        worse = [r.theorem for r in reps if r.failures > base[r.theorem].failures]
        out[name] = {"detected_by": worse, "detected": bool(worse)}
    return out


# -------------------------------------------------------- supplementary reports

def _is_prime_power(k: int) -> bool:
    p = next(q for q in range(2, k + 1) if k % q == 0)
    while k % p == 0:
        k //= p
    return k == 1


def ex5_report(max_non_prime_power: int = 60, max_prime_power: int = 64) -> dict:
    """n- and semi n-submodules of the Z-modules Z_k."""
    bad, checked, pp = [], 0, {}
    for k in range(2, max(max_non_prime_power, max_prime_power) + 1):
        M = make_cyclic_module(k, INTEGERS)
        props = _proper(M)
        n_count = sum(n_sub(N) for N in props)
        all_semi = all(semi_n(N) for N in props)
        if _is_prime_power(k):
            if k <= max_prime_power:
                pp[k] = {"proper": len(props), "n_submodules": n_count, "all_semi_n": all_semi}
        elif k <= max_non_prime_power:
            checked += 1
            if n_count or not all_semi:
                bad.append(k)
    return {"non_prime_powers_checked": checked, "violations": bad, "prime_powers": pp, "ok": not bad}


def idealization_report(catalog="standard") -> dict:
    """Nilradical identity and ideal-embedding legality on every idealization."""
    cat = _resolve(catalog)
    nil_bad, legal_bad, pairs = [], [], 0
    for aname, rname, mname in cat.idealizations:
        A, R, M = cat.workspace[aname], cat.workspace[rname], cat.workspace[mname]
        expected = idealization_ids(A, np.flatnonzero(R.nil_mask).tolist(), range(M.order))
        if frozenset(np.flatnonzero(A.nil_mask).tolist()) != expected:
            nil_bad.append(aname)
        from .constructions import embedding_is_ideal
        for I in enumerate_ideals(R):
            IM = scalar_times(ScalarSet(R, I.members), M.whole)
            for N in enumerate_submodules(M):
                pairs += 1
                if embedding_is_ideal(A, I, N) != (IM.members <= N.members):
                    legal_bad.append((aname, sorted(I.members), sorted(N.members)))
    return {"idealizations": len(cat.idealizations), "nilradical_mismatches": nil_bad,
            "legality_pairs": pairs, "legality_mismatches": [str(x) for x in legal_bad],
            "ok": not nil_bad and not legal_bad}


def bridge_report(catalog="standard") -> dict:
    """Semi n-ideals versus semi n-submodules of R over itself, for every ring."""
    cat = _resolve(catalog)
    ws = cat.workspace
    mismatches, ideals = [], 0
    for name in ws.names_of("ring"):
        R = ws[name]
        reg = regular_module(R)
        for I in enumerate_ideals(R):
            if not I.is_proper:
                continue
            ideals += 1
            a = bool(classify_ideal(R, I)["semi_n"])
            b = semi_n(Submodule(reg, I.members, I.gens))
            if a != b:
                mismatches.append(f"{name}: {sorted(I.members)}")
    return {"rings": len(ws.names_of("ring")), "ideals": ideals, "mismatches": mismatches, "ok": not mismatches}


def constructions_report(catalog="standard") -> dict:
    """Duplication annihilator formula and the duplication-as-amalgam coincidence."""
    from .constructions import duplication
    cat = _resolve(catalog)
    ws = cat.workspace
    ann_bad, faith_bad = [], []
    for name in cat.dups:
        d = ws.setups[name]
        if not d.annihilator_formula_holds():
            ann_bad.append(name)
        if not d.faithfulness_matches():
            faith_bad.append(name)
    coincide, coincide_bad = 0, []
    for name in cat.amalgams:
        am = ws.setups[name]
        if not (am.f.src is am.f.dst and am.M1 is am.M2 and (am.phi.map == np.arange(am.M1.order)).all()):
            continue
        coincide += 1
        d = duplication(am.M1, am.J)
        same = (d.module.pair_ids == am.module.pair_ids and d.ring.pair_ids == am.ring.pair_ids
                and (d.module.act == am.module.act).all() and (d.module.add == am.module.add).all())
        for N in enumerate_submodules(am.M1):
            same = same and d.n_join(N).members == am.n1_join(N).members and d.bar(N).members == am.bar2(N).members
        if not same:
            coincide_bad.append(name)
    return {"duplications": len(cat.dups), "annihilator_mismatches": ann_bad, "faithfulness_mismatches": faith_bad,
            "identity_amalgams": coincide, "coincidence_mismatches": coincide_bad,
            "ok": not (ann_bad or faith_bad or coincide_bad)}


def supplementary(catalog="standard") -> dict:
    return {
        "ex5": ex5_report(),
        "idealization": idealization_report(catalog),
        "bridge": bridge_report(catalog),
        "constructions": constructions_report(catalog),
    }
