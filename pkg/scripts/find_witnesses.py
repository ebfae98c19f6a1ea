"""Search the catalog for a submodule separating each ordered pair of flags and replay every hit."""
import argparse
import json

from smlab.catalog import default_catalog
from smlab.props import SUBMODULE_FLAGS
from smlab.suite import replay_witness, search_separating


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--caps", default="standard")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    cat = default_catalog(args.caps)
    found = {}
    for a in SUBMODULE_FLAGS:
        for b in SUBMODULE_FLAGS:
            if a == b:
                continue
            w = search_separating(a, b, cat)
            if w is None:
                print(f"{a:>10s} without {b:<10s} not found")
                continue
            ok, _ = replay_witness(w)
            found[f"{a}/{b}"] = w
            print(f"{a:>10s} without {b:<10s} {w['detail']['module']} N={w['detail']['N']} replay={'ok' if ok else 'MISMATCH'}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(found, fh, indent=2)


if __name__ == "__main__":
    main()
