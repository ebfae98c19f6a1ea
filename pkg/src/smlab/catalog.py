"""Deterministic catalogs of small instances, generated as workspace text."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import CapacityError, InputError
from .module import FiniteModule, enumerate_submodules
from .workspace import Workspace, load_workspace

HARD_LIMITS = dict(ring_cap=65536, module_cap=65536, lattice_cap=200_000)


@dataclass(frozen=True)
class Caps:
    level: str = "standard"
    ring_cap: int = 4096
    module_cap: int = 4096
    lattice_cap: int = 10_000
    max_zn: int = 36
    max_zk: int = 60

    def __post_init__(self):
        for k, lim in HARD_LIMITS.items():
            v = getattr(self, k)
            if v <= 0:
                raise InputError(f"{k} must be positive")
            if v > lim:
                raise CapacityError(k, v, lim)


CAPS = {
    "minimal": Caps("minimal", 256, 256, 2000, 12, 12),
    "standard": Caps("standard", 4096, 4096, 10_000, 36, 60),
    "large": Caps("large", 16384, 16384, 50_000, 48, 64),
}


def caps_for(level: str | Caps) -> Caps:
    if isinstance(level, Caps):
        return level
    try:
        return CAPS[level]
    except KeyError:
        raise InputError(f"unknown caps level {level!r} (expected minimal, standard or large)") from None


@dataclass
class InstanceCatalog:
    caps: Caps
    workspace: Workspace
    rings: list[str] = field(default_factory=list)
    degenerate: list[str] = field(default_factory=list)
    modules: list[str] = field(default_factory=list)
    products: list[tuple[str, str, str]] = field(default_factory=list)
    idealizations: list[tuple[str, str, str]] = field(default_factory=list)
    dups: list[str] = field(default_factory=list)
    amalgams: list[str] = field(default_factory=list)
    homs: list[str] = field(default_factory=list)
    localizations: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)

    def module(self, name: str) -> FiniteModule:
        return self.workspace[name]

    def iter_modules(self):
        for n in self.modules:
            yield n, self.workspace[n]

    def proper_submodule_count(self) -> int:
        return sum(len(enumerate_submodules(M)) - 1 for _, M in self.iter_modules())

    def summary(self) -> dict:
        return {
            "caps": self.caps.level,
            "rings": len(self.rings),
            "degenerate_rings": list(self.degenerate),
            "modules": len(self.modules),
            "proper_submodules": self.proper_submodule_count(),
            "products": len(self.products),
            "idealizations": len(self.idealizations),
            "duplications": len(self.dups),
            "amalgam_modules": len(self.amalgams),
            "amalgam_rings": len({id(self.workspace[n].base) for n in self.amalgams}),
            "module_homs": len(self.homs),
            "localizations": len(self.localizations),
        }


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % p for p in range(2, int(n ** 0.5) + 1))


class _Text:
    def __init__(self):
        self.lines: list[str] = []
        self.declared: set[str] = set()

    def add(self, kind: str, name: str, rhs: str) -> str:
        if name not in self.declared:
            self.lines.append(f"{kind} {name} = {rhs}")
            self.declared.add(name)
        return name

    def zn(self, n: int) -> str:
        return self.add("ring", f"Z{n}", f"zn {n}")

    def reg(self, n: int) -> str:
        return self.add("module", f"Z{n}reg", f"regular {self.zn(n)}")

    def zmod(self, k: int) -> str:
        return self.add("module", f"ZZ{k}", f"cyclic {k} over Z")

    def cyc(self, n: int, k: int) -> str:
        if k == n:
            return self.reg(n)
        return self.add("module", f"Z{n}_M{k}", f"cyclic {k} over {self.zn(n)}")

    def ideal(self, n: int, d: int) -> str:
        return self.add("ideal", f"Z{n}_I{d}", f"gen {self.zn(n)} {d % n}")


# (a, b, d, k1, k2, phi): f = Z_a -> Z_b (reduction, identity when a = b),
# J = <d> in Z_b, M1 = Z_k1 over Z_a, M2 = Z_k2 over Z_b, phi reduction or zero.
_AMALGAMS = [
    (8, 4, 2, 8, 2, "reduce"),
    (8, 4, 2, 8, 4, "reduce"),
    (8, 4, 0, 8, 4, "reduce"),
    (8, 2, 0, 8, 2, "reduce"),
    (4, 2, 0, 4, 2, "reduce"),
    (12, 4, 2, 12, 4, "reduce"),
    (12, 6, 3, 12, 6, "reduce"),
    (12, 6, 2, 12, 2, "reduce"),
    (12, 12, 0, 12, 4, "reduce"),
    (4, 4, 2, 2, 2, "reduce"),
    (4, 4, 0, 4, 4, "reduce"),
    (6, 6, 3, 6, 6, "reduce"),
    (6, 3, 0, 6, 3, "reduce"),
    (9, 3, 0, 9, 3, "reduce"),
    (6, 6, 0, 6, 2, "reduce"),
    (8, 8, 4, 8, 2, "reduce"),
    (4, 2, 0, 4, 2, "zero"),
    (8, 4, 2, 8, 4, "zero"),
    (2, 2, 0, 2, 2, "reduce"),
    (3, 3, 0, 3, 3, "reduce"),
    (12, 4, 0, 4, 4, "reduce"),
    (9, 9, 3, 9, 3, "reduce"),
    (10, 5, 0, 10, 5, "reduce"),
]

# (n, d, k): R = Z_n, J = <d>, M = Z_k over Z_n
_DUPS = [
    (4, 2, 4), (4, 2, 2), (4, 0, 4), (8, 4, 8), (8, 2, 4), (8, 4, 2), (6, 3, 6), (6, 2, 6),
    (6, 3, 2), (6, 0, 6), (9, 3, 9), (9, 3, 3), (12, 6, 12), (12, 4, 4), (12, 6, 2), (2, 0, 2),
    (5, 0, 5), (12, 2, 4),
]

_IDEALIZATIONS = [(2, 2), (3, 3), (4, 2), (4, 4), (6, 2), (6, 3), (6, 6), (8, 2), (8, 4), (9, 3), (12, 4), (12, 6), (5, 5), (12, 2), (10, 5)]


def catalog_text(caps: Caps) -> tuple[str, dict]:
    """Workspace text of the catalog plus the role lists keyed by name."""
    t = _Text()
    roles: dict[str, list] = {k: [] for k in ("modules", "products", "idealizations", "dups", "amalgams", "homs", "localizations")}
    small = caps.level == "minimal"
    large = caps.level == "large"

    def module(name):
        if name not in roles["modules"]:
            roles["modules"].append(name)
        return name

    # featured instances first, so searches report them
    module(t.reg(12))
    module(t.zmod(12))
    module(t.cyc(12, 4))
    A = t.add("ring", "Z12pZ4", f"idealization Z12 {t.cyc(12, 4)}")
    roles["idealizations"].append((A, "Z12", "Z12_M4"))
    module(t.add("module", "Z12pZ4reg", "regular Z12pZ4"))
    A = t.add("ring", "Z4pZ4", f"idealization {t.zn(4)} {t.reg(4)}")
    roles["idealizations"].append((A, "Z4", "Z4reg"))
    module(t.add("module", "Z4pZ4reg", "regular Z4pZ4"))

    for n in range(1, caps.max_zn + 1):
        module(t.reg(n))
    for k in range(1, caps.max_zk + 1):
        module(t.zmod(k))
    for n in range(2, caps.max_zn + 1):
        for k in _divisors(n)[1:-1]:
            module(t.cyc(n, k))

    # vector spaces and other products
    spaces = [(2, 2), (3, 2), (2, 3)] if small else [(2, 2), (3, 2), (5, 2), (7, 2), (2, 3)]
    for p, dim in spaces:
        prev = t.reg(p)
        for d in range(2, dim + 1):
            name = t.add("module", f"V{p}_{d}", f"product {prev} {t.reg(p)}")
            roles["products"].append((name, prev, t.reg(p)))
            prev = name
        module(prev)
    zprods = [(2, 2), (2, 3), (2, 4), (3, 3)] if small else [(2, 2), (2, 3), (2, 4), (4, 4), (2, 6), (3, 3), (2, 8), (3, 9), (4, 3), (6, 6), (5, 5)]
    for a, b in zprods:
        name = t.add("module", f"ZZ{a}xZZ{b}", f"product {t.zmod(a)} {t.zmod(b)}")
        roles["products"].append((name, t.zmod(a), t.zmod(b)))
        module(name)
    rprods = [(6, 6, 6), (4, 4, 2), (6, 2, 3)] if small else [(6, 6, 6), (4, 4, 2), (6, 2, 3), (12, 4, 6), (8, 8, 4), (12, 3, 4), (9, 9, 3), (4, 2, 2)]
    for n, k1, k2 in rprods:
        m1, m2 = t.cyc(n, k1), t.cyc(n, k2)
        name = t.add("module", f"{m1}x{m2}", f"product {m1} {m2}")
        roles["products"].append((name, m1, m2))
        module(name)

    # product and quotient rings over themselves
    ring_prods = [(2, 2), (2, 3)] if small else [(2, 2), (2, 3), (2, 4), (3, 3), (2, 6), (4, 4), (3, 4), (2, 9), (5, 5), (2, 2 * 2 * 2)]
    for a, b in ring_prods:
        R = t.add("ring", f"Z{a}xZ{b}", f"product {t.zn(a)} {t.zn(b)}")
        module(t.add("module", f"Z{a}xZ{b}reg", f"regular {R}"))
    if not small:
        P = t.add("ring", "Z2xZ2xZ2", "product Z2xZ2 Z2")
        module(t.add("module", "Z2xZ2xZ2reg", f"regular {P}"))
    quots = [(12, 4)] if small else [(12, 4), (18, 6), (24, 8), (36, 9)]
    for n, d in quots:
        Q = t.add("ring", f"Z{n}mod{d}", f"quotient {t.zn(n)} {t.ideal(n, d)}")
        module(t.add("module", f"Z{n}mod{d}reg", f"regular {Q}"))
    for k, d in ([(12, 6)] if small else [(12, 6), (12, 4), (24, 6), (30, 5)]):
        L = t.add("submodule", f"ZZ{k}_L{d}", f"gen {t.zmod(k)} {d}")
        module(t.add("module", f"ZZ{k}q{d}", f"quotient ZZ{k} {L}"))

    # idealizations
    ideals = _IDEALIZATIONS[:6] if small else _IDEALIZATIONS + ([(12, 12), (8, 8)] if large else [])
    for n, k in ideals:
        M = t.cyc(n, k)
        A = t.add("ring", f"Z{n}pZ{k}", f"idealization {t.zn(n)} {M}")
        if (A, f"Z{n}", M) not in roles["idealizations"]:
            roles["idealizations"].append((A, f"Z{n}", M))
        module(t.add("module", f"{A}reg", f"regular {A}"))

    # duplications
    for n, d, k in (_DUPS[:6] if small else _DUPS):
        M, J = t.cyc(n, k), t.ideal(n, d)
        name = t.add("module", f"D{n}_{d}_{k}", f"dup {M} {J}")
        roles["dups"].append(name)
        module(name)

    # amalgams
    for a, b, d, k1, k2, kind in (_AMALGAMS[:8] if small else _AMALGAMS):
        Ra, Rb = t.zn(a), t.zn(b)
        f = t.add("hom", f"f{a}_{b}", f"{Ra} -> {Rb} : reduce")
        J = t.ideal(b, d)
        M1, M2 = t.cyc(a, k1), t.cyc(b, k2)
        if kind == "reduce":
            phi = t.add("modhom", f"phi{a}_{k1}_{b}_{k2}", f"{M1} -> {M2} via {f} : reduce")
        else:
            phi = t.add("modhom", f"zero{a}_{k1}_{b}_{k2}", f"{M1} -> {M2} via {f} : " + " ".join(["0"] * k1))
        t.add("ring", f"A{a}_{b}_{d}", f"amalgam {Ra} {Rb} {f} {J}")
        name = t.add("module", f"AM{a}_{b}_{d}_{k1}_{k2}{'z' if kind == 'zero' else ''}", f"amalgam-mod {M1} {M2} {f} {phi} {J}")
        roles["amalgams"].append(name)
        module(name)

    # module homomorphisms: automorphisms, CRT isomorphisms, reductions
    for k in ([5, 8] if small else [5, 7, 8, 9, 10, 12, 15]):
        for u in range(2, k):
            if gcd(u, k) == 1:
                images = " ".join(str(u * m % k) for m in range(k))
                roles["homs"].append(t.add("modhom", f"aut{k}_{u}", f"{t.zmod(k)} -> {t.zmod(k)} : {images}"))
                break
    for a, b in ([(2, 3)] if small else [(2, 3), (4, 3)]):
        P = f"ZZ{a}xZZ{b}"
        if P not in t.declared:
            t.add("module", P, f"product {t.zmod(a)} {t.zmod(b)}")
            roles["products"].append((P, t.zmod(a), t.zmod(b)))
            module(P)
        images = " ".join(str((m % a) * b + m % b) for m in range(a * b))
        roles["homs"].append(t.add("modhom", f"crt{a * b}", f"{t.zmod(a * b)} -> {P} : {images}"))
    if not small:
        m1, m2 = t.cyc(6, 2), t.cyc(6, 3)
        P = f"{m1}x{m2}"
        t.add("module", P, f"product {m1} {m2}")
        if (P, m1, m2) not in roles["products"]:
            roles["products"].append((P, m1, m2))
            module(P)
        images = " ".join(str((m % 2) * 3 + m % 3) for m in range(6))
        roles["homs"].append(t.add("modhom", "crt6_over_Z6", f"{t.reg(6)} -> {P} : {images}"))
    for a, b in ([(12, 6), (8, 4)] if small else [(12, 6), (12, 4), (8, 4), (6, 3), (9, 3), (30, 10), (16, 8)]):
        roles["homs"].append(t.add("modhom", f"red{a}_{b}", f"{t.zmod(a)} -> {t.zmod(b)} : reduce"))
    for n, k in ([(12, 4)] if small else [(12, 4), (8, 2), (18, 6)]):
        roles["homs"].append(t.add("modhom", f"red{n}reg_{k}", f"{t.reg(n)} -> {t.cyc(n, k)} : reduce"))

    # localizations
    zk = [6, 12] if small else [6, 10, 12, 18, 20, 24, 30, 36, 60]
    gens_list = [(1,), (2,), (3,), (5,), (2, 3), (6,), (7,)]
    for k in zk:
        if t.zmod(k) in t.declared:
            for g in gens_list:
                roles["localizations"].append((f"ZZ{k}", g))
    for n in ([8, 12] if small else [8, 9, 12, 15, 10]):
        units = tuple(u for u in range(1, n) if gcd(u, n) == 1)
        roles["localizations"].append((t.reg(n), (1,)))
        roles["localizations"].append((t.reg(n), units[1:2]))
        roles["localizations"].append((t.reg(n), units))

    text = "".join(line + "\n" for line in [f"option caps = {caps.level}"] + t.lines)
    return text, roles


_CATALOGS: dict = {}


def default_catalog(caps: str | Caps = "standard") -> InstanceCatalog:
    caps = caps_for(caps)
    if caps in _CATALOGS:
        return _CATALOGS[caps]
    text, roles = catalog_text(caps)
    ws = load_workspace(text)
    ws.caps.update(ring_cap=caps.ring_cap, module_cap=caps.module_cap, lattice_cap=caps.lattice_cap)
    rings = [n for n in ws.names_of("ring")]
    degenerate = [n for n in rings if ws[n].order == 1]
    cat = InstanceCatalog(
        caps=caps,
        workspace=ws,
        rings=[n for n in rings if n not in degenerate],
        degenerate=degenerate,
        **roles,
    )
    for _, M in cat.iter_modules():
        if M.order > caps.module_cap:
            raise CapacityError(f"catalog module {M.name}", M.order, caps.module_cap)
        enumerate_submodules(M, cap=caps.module_cap, lattice_cap=caps.lattice_cap)
    _CATALOGS[caps] = cat
    return cat
