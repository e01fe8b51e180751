"""Command-line entry point: ``fret2mtl <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from collections import defaultdict
from pathlib import Path
from typing import Optional, Sequence

from .equiv import CheckConfig, Counterexample, TraceSpaceTooLarge, check_equiv, check_implication
from .export import wrap_export
from .fretish import (
    TIMING_ORDER,
    RequirementSyntaxError,
    enumerate_templates,
    parse_requirement,
    render_requirement,
    template_key,
)
from .mtl import metrics
from .text import Dialect, FormulaSyntaxError, parse_formula, print_formula
from .traces import evaluate, parse_trace_text
from .translator import Semantics, translate

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2
SEMANTICS = [s.value for s in Semantics]
METRIC_FIELDS = ("size", "temp_ops", "props", "temporal_depth")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _formula_file(path: str):
    """A formula file holds one formula; ``#`` lines are comments."""
    body = [ln for ln in _read(path).splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not body:
        raise UsageError(f"{path}: no formula found")
    return parse_formula(" ".join(body))


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fret2mtl", description="Translate FRETISH requirements into MTL and check them.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("translate", help="translate one requirement sentence")
    t.add_argument("--req", required=True)
    t.add_argument("--semantics", choices=SEMANTICS, required=True)
    t.add_argument("--dialect", choices=[d.value for d in Dialect], default=Dialect.CANONICAL.value)

    e = sub.add_parser("enumerate", help="write the translations of all 240 templates")
    e.add_argument("--k", type=_positive, default=3)
    e.add_argument("--out", required=True)
    e.add_argument("--semantics", choices=SEMANTICS, required=True)
    e.add_argument("--dialect", choices=[d.value for d in Dialect], default=Dialect.CANONICAL.value)

    m = sub.add_parser("metrics", help="structural metrics of a formula")
    m.add_argument("--formula", required=True)
    m.add_argument("--json", action="store_true")

    r = sub.add_parser("report", help="per-timing average metrics of enumerated directories")
    r.add_argument("--dir", action="append", required=True, dest="dirs")
    r.add_argument("--json", action="store_true")

    q = sub.add_parser("equiv", help="bounded equivalence or implication check")
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q.add_argument("--semantics", choices=SEMANTICS, required=True)
    q.add_argument("--props", required=True, help="comma-separated proposition names")
    q.add_argument("--max-len", type=_positive, default=6)
    q.add_argument("--max-prefix", type=_positive, default=4)
    q.add_argument("--max-loop", type=_positive, default=2)
    q.add_argument("--implication", action="store_true", help="check a -> b instead of a <-> b")
    q.add_argument("--all-positions", action="store_true", help="compare at every position, not only at 0")
    q.add_argument("--workers", type=_positive, default=1)
    q.add_argument("--out", help="write the counterexample trace here")

    v = sub.add_parser("eval", help="evaluate a formula on a trace file")
    v.add_argument("--formula", required=True)
    v.add_argument("--trace", required=True)
    v.add_argument("--t", type=_positive, default=None)

    x = sub.add_parser("export-last", help="encode a finite-trace formula for infinite-trace checkers")
    x.add_argument("--formula", required=True)
    x.add_argument("--dialect", choices=[d.value for d in Dialect], default=Dialect.NUXMV.value)
    return p


def _cmd_translate(args, out) -> int:
    req = parse_requirement(args.req)
    f = translate(req, Semantics(args.semantics))
    print(print_formula(f, Dialect(args.dialect)), file=out)
    return EXIT_OK


def _cmd_enumerate(args, out) -> int:
    sigma, dialect = Semantics(args.semantics), Dialect(args.dialect)
    root = Path(args.out)
    root.mkdir(parents=True, exist_ok=True)
    index = []
    for i, req in enumerate(enumerate_templates(args.k)):
        key = template_key(req)
        name = f"{i:03d}-{key.replace(' ', '_')}.mtl"
        sentence = render_requirement(req)
        (root / name).write_text(f"# {sentence}\n{print_formula(translate(req, sigma), dialect)}\n")
        index.append(
            {
                "file": name,
                "key": key,
                "scope": req.scope.kind.value,
                "condition": req.condition.kind.value,
                "timing": req.timing.kind.value,
                "sentence": sentence,
            }
        )
    manifest = {"semantics": sigma.value, "dialect": dialect.value, "k": args.k, "templates": index}
    (root / "index.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(index)} translations to {root}", file=out)
    return EXIT_OK


def _cmd_metrics(args, out) -> int:
    rep = metrics(_formula_file(args.formula))
    if args.json:
        print(json.dumps(rep.as_dict(), sort_keys=True), file=out)
    else:
        for k, val in rep.as_dict().items():
            print(f"{k}: {val}", file=out)
    return EXIT_OK


def timing_averages(directory: str) -> dict[str, dict[str, float]]:
    """Average metrics per timing over an ``enumerate`` output directory."""
    manifest = json.loads(_read(str(Path(directory) / "index.json")))
    sums: dict[str, list[dict[str, int]]] = defaultdict(list)
    for entry in manifest["templates"]:
        f = _formula_file(str(Path(directory) / entry["file"]))
        sums[entry["timing"]].append(metrics(f).as_dict())
    order = [t.value for t in TIMING_ORDER if t.value in sums]
    return {
        timing: {k: round(sum(r[k] for r in sums[timing]) / len(sums[timing]), 2) for k in METRIC_FIELDS}
        for timing in order
    }


def _cmd_report(args, out) -> int:
    table = {d: timing_averages(d) for d in args.dirs}
    if args.json:
        print(json.dumps(table, indent=2), file=out)
        return EXIT_OK
    header = f"{'timing':<13}" + "".join(f"{d[-14:]:>16}" for d in args.dirs)
    for field in METRIC_FIELDS:
        print(f"[{field}]", file=out)
        print(header, file=out)
        timings = list(next(iter(table.values())))
        for timing in timings:
            cells = "".join(f"{table[d].get(timing, {}).get(field, float('nan')):>16.2f}" for d in args.dirs)
            print(f"{timing:<13}{cells}", file=out)
    return EXIT_OK


def _cmd_equiv(args, out) -> int:
    a, b = _formula_file(args.a), _formula_file(args.b)
    props = tuple(p.strip() for p in args.props.split(",") if p.strip())
    try:
        cfg = CheckConfig(
            Semantics(args.semantics),
            props,
            max_len=args.max_len,
            max_prefix=args.max_prefix,
            max_loop=args.max_loop,
            workers=args.workers,
            positions="all" if args.all_positions else "initial",
        )
        verdict = (check_implication if args.implication else check_equiv)(a, b, cfg)
    except TraceSpaceTooLarge as exc:
        raise UsageError(str(exc)) from exc
    if isinstance(verdict, Counterexample):
        print(f"Counterexample at t={verdict.t} (a={verdict.left_value}, b={verdict.right_value})", file=out)
        text = verdict.serialize()
        if args.out:
            Path(args.out).write_text(text)
        else:
            print(text, end="", file=out)
        return EXIT_COUNTEREXAMPLE
    print(f"{verdict.label} ({verdict.bounds})", file=out)
    return EXIT_OK


def _cmd_eval(args, out) -> int:
    f = _formula_file(args.formula)
    trace, trailer = parse_trace_text(_read(args.trace))
    t = args.t if args.t is not None else (trailer or 0)
    try:
        value = evaluate(f, trace, t)
    except IndexError as exc:
        raise UsageError(str(exc)) from exc
    print("true" if value else "false", file=out)
    return EXIT_OK


def _cmd_export_last(args, out) -> int:
    print(print_formula(wrap_export(_formula_file(args.formula)), Dialect(args.dialect)), file=out)
    return EXIT_OK


COMMANDS = {
    "translate": _cmd_translate,
    "enumerate": _cmd_enumerate,
    "metrics": _cmd_metrics,
    "report": _cmd_report,
    "equiv": _cmd_equiv,
    "eval": _cmd_eval,
    "export-last": _cmd_export_last,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except (UsageError, FormulaSyntaxError, RequirementSyntaxError, ValueError, KeyError) as exc:
        print(f"fret2mtl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
