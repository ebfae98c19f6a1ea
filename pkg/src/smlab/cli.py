"""smlab command line: classify, theorems, search, catalog."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import caps_for, default_catalog
from .errors import CapacityError, InputError, WorkspaceSyntaxError
from .module import FiniteModule, MUTATIONS, classify_submodule, enumerate_submodules
from .props import ALL_SUBMODULE_FLAGS
from .suite import THEOREM_IDS, ZN_READINGS, check_all, search_separating, summarize, supplementary
from .workspace import load_workspace

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _flag_cell(v) -> str:
    return "-" if v is None else ("yes" if v else "no")


def _modules(args) -> list[tuple[str, FiniteModule]]:
    if args.spec:
        try:
            text = Path(args.spec).read_text(encoding="utf-8")
        except OSError as e:
            raise InputError(f"cannot read {args.spec}: {e.strerror}") from None
        ws = load_workspace(text)
        names = ws.names_of("module")
    else:
        ws = default_catalog(args.caps).workspace
        names = default_catalog(args.caps).modules
    if args.module:
        if args.module not in ws.kinds or ws.kinds[args.module] != "module":
            raise InputError(f"no module named {args.module!r}")
        names = [args.module]
    return [(n, ws[n]) for n in names]


def cmd_classify(args) -> int:
    rows = []
    for name, M in _modules(args):
        for N in enumerate_submodules(M):
            pv = classify_submodule(N)
            rows.append({
                "module": name,
                "submodule": [M.labels[i] for i in N.sorted()],
                "gens": [M.labels[g] for g in N.gens],
                "flags": {f: pv[f] for f in ALL_SUBMODULE_FLAGS},
            })
    if args.format == "json":
        _emit(_dump({"rows": rows}), args.out)
        return EXIT_OK
    head = ["module", "submodule"] + list(ALL_SUBMODULE_FLAGS)
    table = [[r["module"], "<" + (",".join(str(g) for g in r["gens"]) or "0") + ">"]
             + [_flag_cell(r["flags"][f]) for f in ALL_SUBMODULE_FLAGS] for r in rows]
    widths = [max(len(str(x)) for x in col) for col in zip(head, *table)]
    lines = ["  ".join(str(x).ljust(w) for x, w in zip(line, widths)).rstrip() for line in [head] + table]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _selected_ids(args) -> list[str]:
    if args.ids:
        ids = [s.strip() for s in args.ids.split(",") if s.strip()]
        unknown = [i for i in ids if i not in THEOREM_IDS]
        if unknown:
            raise InputError(f"unknown theorem id(s): {', '.join(unknown)}")
        return ids
    if args.suite != "all":
        raise InputError(f"unknown suite {args.suite!r} (expected all)")
    return list(THEOREM_IDS)


def cmd_theorems(args) -> int:
    if args.mutation and args.mutation not in MUTATIONS:
        raise InputError(f"unknown mutation {args.mutation!r}; expected one of {', '.join(MUTATIONS)}")
    cat = default_catalog(args.caps)
    ids = _selected_ids(args)
    reports = check_all(cat, args.seed, ids, mutation=args.mutation, zn_reading=args.zn_reading)
    summary = summarize(reports)
    if args.supplementary:
        summary["supplementary"] = supplementary(cat)
    doc = {
        "seed": args.seed,
        "caps": cat.caps.level,
        "mutation": args.mutation,
        "zn_reading": args.zn_reading,
        "reports": [r.as_dict(args.timing) for r in reports],
        "summary": summary,
    }
    if args.format == "json":
        _emit(_dump(doc), args.out)
    else:
        lines = []
        for r in reports:
            t = f"  {r.wall_time_ms:.1f} ms" if args.timing else ""
            lines.append(f"{r.status.upper():4s}  {r.theorem:24s} scanned={r.instances_scanned} "
                         f"hypothesis={r.hypothesis_satisfied} vacuous={r.vacuous}{t}")
            if r.note:
                lines.append(f"      note: {r.note}")
            if r.status == "fail" and r.witness:
                lines.append("      witness:")
                lines += ["        " + ln for ln in r.witness["spec"].splitlines()]
                lines += [f"        fact {json.dumps(f)}" for f in r.witness["facts"]]
        lines.append(f"{summary['passed']}/{summary['total']} pass; failed: {', '.join(summary['failed']) or 'none'}; "
                     f"vacuous: {', '.join(summary['vacuous']) or 'none'}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_FAIL if summary["failed"] else EXIT_OK


def cmd_search(args) -> int:
    w = search_separating(args.a, args.b, default_catalog(args.caps))
    doc = {"a": args.a, "b": args.b, "caps": caps_for(args.caps).level,
           "result": "found" if w else "not_found", "witness": w}
    if args.format == "json":
        _emit(_dump(doc), args.out)
    elif w is None:
        _emit(f"not_found: no proper submodule with {args.a} true and {args.b} false\n", args.out)
    else:
        text = [f"found: {args.a} true, {args.b} false", f"  {w['detail']}", "replay spec:"]
        text += ["  " + ln for ln in w["spec"].splitlines()]
        text += [f"fact {json.dumps(f)}" for f in w["facts"]]
        _emit("\n".join(text) + "\n", args.out)
    return EXIT_OK


def cmd_catalog(args) -> int:
    cat = default_catalog(args.caps)
    if args.text:
        _emit(cat.workspace.spec.text(), args.out)
    elif args.format == "json":
        _emit(_dump(cat.summary()), args.out)
    else:
        _emit("".join(f"{k}: {v}\n" for k, v in cat.summary().items()), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smlab", description="Finite checks for semi n-submodules.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt="text"):
        sp.add_argument("--caps", default="standard", choices=["minimal", "standard", "large"])
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", default=fmt, choices=["json", "text"])

    c = sub.add_parser("classify", help="property table for submodules")
    common(c)
    c.add_argument("--spec", default=None, help="workspace file (default: the catalog)")
    c.add_argument("--module", default=None)

    t = sub.add_parser("theorems", help="run theorem checks")
    common(t, fmt="json")
    t.add_argument("--suite", default="all")
    t.add_argument("--ids", default=None, help="comma separated theorem ids")
    t.add_argument("--timing", action="store_true", help="fill wall_time_ms (breaks byte stability)")
    t.add_argument("--mutation", default=None, help="run under a predicate mutation")
    t.add_argument("--zn-reading", default="module", choices=list(ZN_READINGS))
    t.add_argument("--supplementary", action="store_true", help="add the side reports to the summary")

    s = sub.add_parser("search", help="find a submodule separating two flags")
    common(s)
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)

    k = sub.add_parser("catalog", help="summarize the default catalog")
    common(k)
    k.add_argument("--text", action="store_true", help="dump the catalog as a workspace spec")
    return p


COMMANDS = {"classify": cmd_classify, "theorems": cmd_theorems, "search": cmd_search, "catalog": cmd_catalog}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed < 0 or args.seed >= 2 ** 64:
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](args)
    except CapacityError as e:
        print(f"capacity error: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InputError, WorkspaceSyntaxError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
