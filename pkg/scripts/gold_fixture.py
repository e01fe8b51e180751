"""Translate the gold requirement and check it against the FRET formula."""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from fixtures import GOLD_FRET, GOLD_FV, GOLD_PROPS, GOLD_SENTENCE  # noqa: E402

from fret2mtl.equiv import CheckConfig, check_equiv  # noqa: E402
from fret2mtl.fretish import parse_requirement  # noqa: E402
from fret2mtl.mtl import metrics  # noqa: E402
from fret2mtl.text import parse_formula, print_formula  # noqa: E402
from fret2mtl.translator import Semantics, translate  # noqa: E402


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-prefix", type=int, default=4)
    ap.add_argument("--max-loop", type=int, default=2)
    ap.add_argument("--all-positions", action="store_true")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    ours = translate(parse_requirement(GOLD_SENTENCE), Semantics.FUTURE_INFINITE)
    print("requirement:", GOLD_SENTENCE)
    print("translation:", print_formula(ours))
    print("matches printed FV:", ours == parse_formula(GOLD_FV))
    print("metrics FV:  ", metrics(ours).as_dict())
    print("metrics FRET:", metrics(parse_formula(GOLD_FRET)).as_dict())
    cfg = CheckConfig(
        Semantics.FUTURE_INFINITE,
        GOLD_PROPS,
        max_prefix=args.max_prefix,
        max_loop=args.max_loop,
        workers=args.workers,
        positions="all" if args.all_positions else "initial",
    )
    start = time.perf_counter()
    verdict = check_equiv(parse_formula(GOLD_FRET), ours, cfg)
    print(f"{verdict.label} ({cfg.describe()}) in {time.perf_counter() - start:.1f}s")
    if not verdict:
        print(verdict.serialize(), end="")


if __name__ == "__main__":
    main()
