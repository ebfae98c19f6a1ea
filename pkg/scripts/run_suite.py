"""Run every theorem check, print a table, and write a JSON report with the side reports."""
import argparse
import json
import time

from smlab.catalog import default_catalog
from smlab.suite import check_all, mutation_report, summarize, supplementary


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--caps", default="standard")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="suite_report.json")
    ap.add_argument("--mutations", action="store_true", help="also run the six predicate mutations")
    args = ap.parse_args()

    t0 = time.perf_counter()
    cat = default_catalog(args.caps)
    print(f"catalog built in {time.perf_counter() - t0:.2f} s: {cat.summary()}")
    reports = check_all(cat, args.seed)
    for r in reports:
        print(f"{r.status:5s} {r.theorem:24s} scanned={r.instances_scanned:6d} "
              f"hyp={r.hypothesis_satisfied:6d} fails={r.failures:4d} {r.wall_time_ms:8.1f} ms  {r.note}")
    doc = {"seed": args.seed, "caps": cat.caps.level,
           "reports": [r.as_dict(timing=True) for r in reports],
           "summary": summarize(reports), "supplementary": supplementary(cat)}
    if args.mutations:
        doc["mutations"] = mutation_report(cat, args.seed)
        for name, v in doc["mutations"].items():
            print(f"mutation {name}: caught by {', '.join(v['detected_by']) or 'nothing'}")
    with open(args.out, "w") as fh:
        json.dump(doc, fh, indent=2)
    print(f"failed: {doc['summary']['failed']}; total {time.perf_counter() - t0:.1f} s; wrote {args.out}")


if __name__ == "__main__":
    main()
