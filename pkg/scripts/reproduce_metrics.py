"""Per-timing average metrics of the FV translations under each semantics,
plus the four hand-picked requirements with their published FV values."""
from __future__ import annotations

import argparse
import json
from collections import defaultdict

from fret2mtl.fretish import TIMING_ORDER, enumerate_templates, parse_requirement
from fret2mtl.mtl import metrics
from fret2mtl.translator import Semantics, translate

PUBLISHED_FV = {
    "in Scope upon Condition MyComponent shall until StopCondition satisfy Response": (3, 9, 2, 24),
    "not in Scope upon Condition MyComponent shall until StopCondition satisfy Response": (3, 9, 2, 28),
    "only in Scope upon Condition MyComponent shall after 3 ticks satisfy Response": (8, 11, 3, 44),
    "only in Scope upon Condition MyComponent shall before StopCondition satisfy Response": (7, 15, 3, 53),
}


def averages(sigma: Semantics, k: int) -> dict[str, dict[str, float]]:
    rows = defaultdict(list)
    for r in enumerate_templates(k):
        rows[r.timing.kind.value].append(metrics(translate(r, sigma)).as_dict())
    return {
        t.value: {m: round(sum(x[m] for x in rows[t.value]) / len(rows[t.value]), 2) for m in rows[t.value][0]}
        for t in TIMING_ORDER
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    table = {s.value: averages(s, args.k) for s in Semantics}
    rows = {}
    for sentence, published in PUBLISHED_FV.items():
        rep = metrics(translate(parse_requirement(sentence), Semantics.FUTURE_FINITE))
        rows[sentence] = {"ours": [rep.temp_ops, rep.props, rep.temporal_depth, rep.size], "published": list(published)}
    if args.json:
        print(json.dumps({"averages": table, "rows": rows}, indent=2))
        return
    for sigma, by_timing in table.items():
        print(f"== {sigma}")
        print(f"{'timing':<13}{'size':>8}{'temp':>8}{'props':>8}{'depth':>8}")
        for timing, m in by_timing.items():
            print(f"{timing:<13}{m['size']:>8.2f}{m['temp_ops']:>8.2f}{m['props']:>8.2f}{m['temporal_depth']:>8.2f}")
    print("== selected requirements, finite semantics (temp, props, depth, size)")
    for sentence, row in rows.items():
        mark = "ok" if row["ours"] == row["published"] else "differs"
        print(f"{row['ours']} vs {row['published']} [{mark}]  {sentence}")


if __name__ == "__main__":
    main()
