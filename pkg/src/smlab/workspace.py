"""Line-oriented workspace files describing rings, modules, ideals, submodules and maps.

One declaration per line; ``#`` starts a comment::

    ring R = zn 12
    module M = cyclic 4 over R
    ring A = idealization R M
    ideal I = gen R 2
    submodule N = gen M 2
    hom f = R -> S : reduce
    modhom p = M -> M2 via f : reduce
    option seed = 7
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from . import constructions as C
from .errors import CapacityError, InputError, WorkspaceSyntaxError
from .module import (
    FiniteModule,
    ModuleHom,
    Submodule,
    make_cyclic_module,
    product_module,
    quotient_module,
    regular_module,
)
from .ring import INTEGERS, FiniteRing, Ideal, make_zn, product_ring, quotient_ring

KINDS = ("ring", "module", "ideal", "submodule", "hom", "modhom", "option")
OPTION_KEYS = ("caps", "seed", "ring_cap", "module_cap", "lattice_cap")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_'.]*\Z")
_TOKEN = re.compile(r"\S+")


@dataclass(frozen=True)
class Decl:
    kind: str
    name: str
    args: tuple[str, ...]
    line: int = field(default=0, compare=False)

    def text(self) -> str:
        return f"{self.kind} {self.name} = {' '.join(self.args)}".rstrip()


@dataclass(frozen=True)
class WorkspaceSpec:
    declarations: tuple[Decl, ...] = ()

    @property
    def options(self) -> dict:
        return {d.name: d.args[0] for d in self.declarations if d.kind == "option"}

    def names(self) -> list[str]:
        return [d.name for d in self.declarations if d.kind != "option"]

    def text(self) -> str:
        return "".join(d.text() + "\n" for d in self.declarations)


# ------------------------------------------------------------------- parser

def _tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]


def _expect_int(tok: str, col: int, lineno: int, what: str) -> None:
    if not re.fullmatch(r"-?\d+", tok):
        raise WorkspaceSyntaxError(f"expected an integer for {what}, got {tok!r}", lineno, col)


def _check_shape(kind: str, toks: list[tuple[str, int]], lineno: int, end_col: int) -> None:
    """Structural grammar check of the right-hand side of one declaration."""
    words = [t for t, _ in toks]

    def fail(msg, i):
        col = toks[i][1] if i < len(toks) else end_col
        raise WorkspaceSyntaxError(msg, lineno, col)

    def need(n, form):
        if len(words) != n:
            fail(f"expected '{form}'", min(len(words), n))

    def names(idxs):
        for i in idxs:
            if not _NAME.match(words[i]):
                fail(f"invalid name {words[i]!r}", i)

    def ints(idxs, what):
        for i in idxs:
            _expect_int(words[i], toks[i][1], lineno, what)

    if not words:
        fail(f"missing right-hand side for {kind}", 0)
    head = words[0]
    if kind == "ring":
        forms = {"zn": 2, "product": 3, "quotient": 3, "idealization": 3, "dup-ring": 3, "amalgam": 5}
        if head not in forms:
            fail(f"unknown ring construction {head!r}", 0)
        need(forms[head], f"{head} ...")
        if head == "zn":
            ints([1], "n")
        else:
            names(range(1, len(words)))
    elif kind == "module":
        forms = {"cyclic": 4, "product": 3, "quotient": 3, "dup": 3, "amalgam-mod": 6, "regular": 2}
        if head not in forms:
            fail(f"unknown module construction {head!r}", 0)
        need(forms[head], f"{head} ...")
        if head == "cyclic":
            ints([1], "k")
            if words[2] != "over":
                fail("expected 'over'", 2)
            names([3])
        else:
            names(range(1, len(words)))
    elif kind in ("ideal", "submodule"):
        if head != "gen":
            fail("expected 'gen'", 0)
        if len(words) < 2:
            fail("expected an owner name after 'gen'", 1)
        names([1])
        ints(range(2, len(words)), "element id")
    elif kind in ("hom", "modhom"):
        if len(words) < 5 or words[1] != "->":
            fail("expected '<src> -> <dst> : <images>'", 1 if len(words) > 1 else len(words))
        names([0, 2])
        i = 3
        if kind == "modhom" and words[i] == "via":
            if len(words) < 7:
                fail("expected 'via <hom> : <images>'", len(words))
            names([4])
            i = 5
        if words[i] != ":":
            fail("expected ':'", i)
        rest = words[i + 1:]
        if not rest:
            fail("expected images or 'reduce'", i + 1)
        if rest != ["reduce"]:
            ints(range(i + 1, len(words)), "image id")
    elif kind == "option":
        need(1, "<value>")


def parse_workspace(text: str, validate: bool = True) -> WorkspaceSpec:
    """Parse workspace text; with ``validate`` every declaration is also built."""
    decls: list[Decl] = []
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        kind, col = toks[0]
        if kind not in KINDS:
            raise WorkspaceSyntaxError(f"unknown declaration kind {kind!r}", lineno, col)
        if len(toks) < 3 or toks[2][0] != "=":
            where = toks[2][1] if len(toks) > 2 else len(line.rstrip()) + 1
            raise WorkspaceSyntaxError("expected '<kind> <name> = ...'", lineno, where)
        name, ncol = toks[1]
        if kind == "option":
            if name not in OPTION_KEYS:
                raise WorkspaceSyntaxError(f"unknown option {name!r}", lineno, ncol)
        elif not _NAME.match(name):
            raise WorkspaceSyntaxError(f"invalid name {name!r}", lineno, ncol)
        elif name == "Z":
            raise WorkspaceSyntaxError("'Z' is reserved for the integers", lineno, ncol)
        key = f"{kind}:{name}" if kind == "option" else name
        if key in seen:
            raise WorkspaceSyntaxError(f"duplicate name {name!r} (first declared on line {seen[key]})", lineno, ncol)
        seen[key] = lineno
        rhs = toks[3:]
        _check_shape(kind, rhs, lineno, len(line.rstrip()) + 1)
        decls.append(Decl(kind, name, tuple(t for t, _ in rhs), lineno))
    spec = WorkspaceSpec(tuple(decls))
    if validate:
        build_workspace(spec)
    return spec


# ------------------------------------------------------------------ builder

CAP_LEVELS = {
    "minimal": dict(ring_cap=256, module_cap=256, lattice_cap=2000),
    "standard": dict(ring_cap=4096, module_cap=4096, lattice_cap=10_000),
    "large": dict(ring_cap=16384, module_cap=16384, lattice_cap=50_000),
}


class Workspace:
    """Built objects of a workspace spec, with dependency tracking for replayable fragments."""

    def __init__(self, spec: WorkspaceSpec):
        self.spec = spec
        self.objects: dict[str, object] = {}
        self.kinds: dict[str, str] = {}
        self.deps: dict[str, tuple[str, ...]] = {}
        self.setups: dict[str, object] = {}
        self._decl = {d.name: d for d in spec.declarations if d.kind != "option"}
        self._dup_rings: dict = {}
        self._amalgam_rings: dict = {}
        opts = spec.options
        caps = dict(CAP_LEVELS[opts.get("caps", "standard")]) if opts.get("caps", "standard") in CAP_LEVELS else None
        if caps is None:
            raise InputError(f"option caps: unknown level {opts['caps']!r}")
        for k in ("ring_cap", "module_cap", "lattice_cap"):
            if k in opts:
                caps[k] = _positive_int(opts[k], f"option {k}")
        self.caps = caps
        self.seed = _positive_int(opts["seed"], "option seed", allow_zero=True) if "seed" in opts else 0

    def __getitem__(self, name: str):
        return self.objects[name]

    def names_of(self, kind: str) -> list[str]:
        return [n for n in self.objects if self.kinds[n] == kind]

    def name_of(self, obj) -> str | None:
        for n, o in self.objects.items():
            if o is obj:
                return n
        return None

    def closure(self, names) -> list[str]:
        need: set[str] = set()
        stack = list(names)
        while stack:
            n = stack.pop()
            if n in need:
                continue
            if n not in self.deps:
                raise InputError(f"unknown name {n!r}")
            need.add(n)
            stack.extend(self.deps[n])
        return [d.name for d in self.spec.declarations if d.kind != "option" and d.name in need]

    def fragment(self, names) -> str:
        """Workspace text declaring ``names`` and everything they depend on."""
        return "".join(self._decl[n].text() + "\n" for n in self.closure(names))


def _positive_int(s: str, what: str, allow_zero: bool = False) -> int:
    try:
        v = int(s)
    except ValueError:
        raise InputError(f"{what}: expected an integer, got {s!r}") from None
    if v < 0 or (v == 0 and not allow_zero):
        raise InputError(f"{what}: expected a positive integer, got {s!r}")
    return v


def build_workspace(spec: WorkspaceSpec) -> Workspace:
    ws = Workspace(spec)
    for d in spec.declarations:
        if d.kind == "option":
            continue
        try:
            obj, deps = _build(ws, d)
        except CapacityError:
            raise
        except InputError as e:
            if isinstance(e, WorkspaceSyntaxError):
                raise
            raise InputError(f"line {d.line}: {d.kind} {d.name}: {e}") from None
        ws.objects[d.name] = obj
        ws.kinds[d.name] = d.kind
        ws.deps[d.name] = tuple(deps)
    return ws


def load_workspace(text: str) -> Workspace:
    return build_workspace(parse_workspace(text, validate=False))


def _ref(ws: Workspace, name: str, kind: str):
    if name not in ws.objects:
        raise InputError(f"{name!r} is not declared before use")
    if ws.kinds[name] != kind:
        raise InputError(f"{name!r} is a {ws.kinds[name]}, expected a {kind}")
    return ws.objects[name]


def _ids(args) -> list[int]:
    return [int(a) for a in args]


def _build(ws: Workspace, d: Decl):
    a = d.args
    caps = ws.caps
    if d.kind == "ring":
        head = a[0]
        if head == "zn":
            n = int(a[1])
            if n < 1:
                raise InputError(f"zn needs n >= 1, got {n}")
            return make_zn(n, cap=caps["ring_cap"], name=d.name), ()
        if head == "product":
            R1, R2 = _ref(ws, a[1], "ring"), _ref(ws, a[2], "ring")
            return product_ring(R1, R2, cap=caps["ring_cap"], name=d.name), (a[1], a[2])
        if head == "quotient":
            R, I = _ref(ws, a[1], "ring"), _ref(ws, a[2], "ideal")
            if I.ring is not R:
                raise InputError(f"ideal {a[2]} is not an ideal of {a[1]}")
            return quotient_ring(R, I, name=d.name)[0], (a[1], a[2])
        if head == "idealization":
            R, M = _ref(ws, a[1], "ring"), _ref(ws, a[2], "module")
            return C.idealization(R, M, cap=caps["ring_cap"], name=d.name), (a[1], a[2])
        if head == "dup-ring":
            R, J = _ref(ws, a[1], "ring"), _ref(ws, a[2], "ideal")
            key = (id(R), id(J))
            if key not in ws._dup_rings:
                ws._dup_rings[key] = C.dup_ring(R, J, name=d.name)
            return ws._dup_rings[key], (a[1], a[2])
        if head == "amalgam":
            R1, R2 = _ref(ws, a[1], "ring"), _ref(ws, a[2], "ring")
            f, J = _ref(ws, a[3], "hom"), _ref(ws, a[4], "ideal")
            if f.src is not R1 or f.dst is not R2:
                raise InputError(f"hom {a[3]} is not a map {a[1]} -> {a[2]}")
            key = (id(f), id(J))
            if key not in ws._amalgam_rings:
                ws._amalgam_rings[key] = C.amalgam_ring(f, J, name=d.name)
            return ws._amalgam_rings[key], tuple(a[1:])
    if d.kind == "module":
        head = a[0]
        if head == "cyclic":
            base = INTEGERS if a[3] == "Z" else _ref(ws, a[3], "ring")
            deps = () if a[3] == "Z" else (a[3],)
            return make_cyclic_module(int(a[1]), base, cap=caps["module_cap"], name=d.name), deps
        if head == "regular":
            return regular_module(_ref(ws, a[1], "ring"), name=d.name), (a[1],)
        if head == "product":
            M1, M2 = _ref(ws, a[1], "module"), _ref(ws, a[2], "module")
            return product_module(M1, M2, cap=caps["module_cap"], name=d.name), (a[1], a[2])
        if head == "quotient":
            M, L = _ref(ws, a[1], "module"), _ref(ws, a[2], "submodule")
            if L.module is not M:
                raise InputError(f"submodule {a[2]} is not a submodule of {a[1]}")
            Q, proj = quotient_module(M, L, name=d.name)
            ws.setups[d.name] = proj
            return Q, (a[1], a[2])
        if head == "dup":
            M, J = _ref(ws, a[1], "module"), _ref(ws, a[2], "ideal")
            if not isinstance(M.base, FiniteRing) or J.ring is not M.base:
                raise InputError(f"ideal {a[2]} is not an ideal of the base ring of {a[1]}")
            key = (id(M.base), id(J))
            if key not in ws._dup_rings:
                ws._dup_rings[key] = C.dup_ring(M.base, J)
            dup = C.duplication(M, J, ring=ws._dup_rings[key], name=d.name)
            ws.setups[d.name] = dup
            return dup.module, (a[1], a[2])
        if head == "amalgam-mod":
            M1, M2 = _ref(ws, a[1], "module"), _ref(ws, a[2], "module")
            f, phi, J = _ref(ws, a[3], "hom"), _ref(ws, a[4], "modhom"), _ref(ws, a[5], "ideal")
            if not isinstance(phi, C.ModuleHomAcrossHom) or phi.f is not f:
                raise InputError(f"modhom {a[4]} must be declared 'via {a[3]}'")
            if phi.src is not M1 or phi.dst is not M2:
                raise InputError(f"modhom {a[4]} is not a map {a[1]} -> {a[2]}")
            if J.ring is not f.dst:
                raise InputError(f"ideal {a[5]} is not an ideal of the codomain of {a[3]}")
            key = (id(f), id(J))
            if key not in ws._amalgam_rings:
                ws._amalgam_rings[key] = C.amalgam_ring(f, J)
            am = C.amalgam(f, J, phi, ring=ws._amalgam_rings[key], name=d.name)
            ws.setups[d.name] = am
            return am.module, tuple(a[1:])
    if d.kind == "ideal":
        R = _ref(ws, a[1], "ring")
        gens = _ids(a[2:])
        for g in gens:
            if not 0 <= g < R.order:
                raise InputError(f"element id {g} out of range for ring {a[1]} of order {R.order}")
        return R.ideal(gens), (a[1],)
    if d.kind == "submodule":
        M = _ref(ws, a[1], "module")
        return M.submodule(_ids(a[2:])), (a[1],)
    if d.kind == "hom":
        S, T = _ref(ws, a[0], "ring"), _ref(ws, a[2], "ring")
        if a[4:] == ("reduce",):
            return C.reduction_hom(S, T), (a[0], a[2])
        images = _ids(a[4:])
        if len(images) != S.order:
            raise InputError(f"expected {S.order} images, got {len(images)}")
        return C.RingHom(S, T, np.array(images)), (a[0], a[2])
    if d.kind == "modhom":
        S, T = _ref(ws, a[0], "module"), _ref(ws, a[2], "module")
        deps = [a[0], a[2]]
        f = None
        rest = a[4:]
        if a[3] == "via":
            f = _ref(ws, a[4], "hom")
            deps.append(a[4])
            rest = a[6:]
        if rest == ("reduce",):
            a_, b_ = S.order, T.order
            if not (_is_cyclic(S) and _is_cyclic(T)) or a_ % b_:
                raise InputError("reduce needs cyclic modules Z_a -> Z_b with b | a")
            images = np.arange(a_) % b_
        else:
            images = np.array(_ids(rest))
            if len(images) != S.order:
                raise InputError(f"expected {S.order} images, got {len(images)}")
        if f is None:
            return ModuleHom(S, T, images), tuple(deps)
        return C.ModuleHomAcrossHom(f, S, T, images), tuple(deps)
    raise InputError(f"unsupported declaration {d.text()!r}")  # pragma: no cover


def _is_cyclic(M: FiniteModule) -> bool:
    c = M.construction
    return c[0] == "cyclic" or (c[0] == "regular" and c[1].construction[0] == "zn")


def resolve_submodule(ws: Workspace, name: str) -> Submodule:
    return _ref(ws, name, "submodule")


def resolve_module(ws: Workspace, name: str) -> FiniteModule:
    return _ref(ws, name, "module")


def resolve_ideal(ws: Workspace, name: str) -> Ideal:
    return _ref(ws, name, "ideal")
