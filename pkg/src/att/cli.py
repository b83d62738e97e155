"""Command-line front end: ``att <command> ...``.

Exit status is 0 when everything checked passes, 1 when any check fails and
2 on usage errors (bad flags, missing files, unknown models).
"""
from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from pathlib import Path

import numpy as np

from .checker import CheckError, Checker, explain
from .derived import bench_family
from .groupoid import Report, SizeLimitError, set_max_size, size_limit
from .interpret import (INTERP_LIMIT, SplitError, Unsupported, check_soundness, interpret,
                        tabulate)
from .models import ModelError, load_model, models_dir
from .parser import ParseError, parse_document

BENCH_SIZES = (64, 128, 256, 512)
MAX_EXPONENT = 2.5
EXPECT = re.compile(r"^\s*--\s*expect-error:\s*(.*?)\s*$", re.M)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- helpers

def _read(path) -> str:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    return p.read_text(encoding="utf-8")


def resolve_model(spec):
    """A model file path, or the stem of a shipped model."""
    p = Path(spec)
    if not p.is_file():
        p = models_dir() / f"{spec}.json"
    if not p.is_file():
        raise UsageError(f"no such model: {spec}")
    return load_model(p)


def _models(specs):
    if specs:
        return [resolve_model(s) for s in specs]
    return [load_model(p) for p in sorted(models_dir().glob("*.json"))]


def _emit(args, payload, text):
    if args.report == "json":
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def check_text(text, want_derivations=False):
    """Check every judgment of a document.

    Returns a list of per-item dicts; a parse or signature error yields a
    single failing entry.
    """
    try:
        doc = parse_document(text)
    except ParseError as e:
        return [{"line": e.line or 0, "ok": False, "error": f"parse error: {e}"}]
    out, sigs = [], {}
    for item in doc.items:
        key = id(item.signature)
        if key not in sigs:
            ck = Checker(item.signature)
            try:
                ck.signature()
                sigs[key] = ck
            except CheckError as e:
                sigs[key] = e
        ck = sigs[key]
        if isinstance(ck, CheckError):
            out.append({"line": item.line, "ok": False, "error": str(ck)})
            continue
        try:
            _, d = ck.judgment(item.judgment)
        except CheckError as e:
            out.append({"line": item.line, "ok": False, "error": str(e), "rule": e.rule})
            continue
        row = {"line": item.line, "ok": True, "rules": sorted(d.rules())}
        if want_derivations:
            row["derivation"] = explain(d, ck.sig)
        out.append(row)
    if not out:
        out.append({"line": 0, "ok": False, "error": "no judgments to check"})
    return out


# ---------------------------------------------------------------- commands

def cmd_check(args) -> int:
    if args.bench is not None:
        if args.bench < 1:
            raise UsageError("--bench needs a positive size")
        _, rec = bench_family(args.bench)
        _emit(args, {"bench": rec},
              f"bench n={rec['n']}: {rec['nodes']} derivation nodes in {rec['seconds']:.4f}s")
        if not args.files:
            return 0
    if not args.files:
        raise UsageError("check needs at least one file")
    files, ok = [], True
    for path in args.files:
        text = _read(path)
        rows = check_text(text, args.explain)
        expected = EXPECT.findall(text)
        entry = {"path": str(path), "ok": all(r["ok"] for r in rows), "items": rows}
        if expected:
            errs = " ".join(r.get("error", "") for r in rows if not r["ok"])
            entry["expected_errors"] = expected
            entry["expectation_met"] = bool(errs) and all(x in errs for x in expected)
        ok &= entry["ok"]
        files.append(entry)
    lines = []
    for f in files:
        for r in f["items"]:
            if r["ok"]:
                lines.append(f"{f['path']}:{r['line']}: ok")
                if args.explain:
                    lines.append(r["derivation"])
            else:
                lines.append(f"{f['path']}:{r['line']}: error: {r['error']}")
    n = sum(len(f["items"]) for f in files)
    bad = sum(not r["ok"] for f in files for r in f["items"])
    lines.append(f"{n - bad}/{n} judgments accepted")
    _emit(args, {"command": "check", "ok": ok, "files": files}, "\n".join(lines))
    return 0 if ok else 1


def cmd_interpret(args) -> int:
    model = resolve_model(args.model)
    text = _read(args.file)
    try:
        doc = parse_document(text)
    except ParseError as e:
        _emit(args, {"command": "interpret", "ok": False, "error": str(e)}, f"parse error: {e}")
        return 1
    ck = Checker(model.signature)
    results, ok, lines = [], True, []
    with size_limit(INTERP_LIMIT):
        for item in doc.items:
            try:
                _, d = ck.judgment(item.judgment)
                sem = interpret(d, model)
                row = {"line": item.line, "ok": True, "semantics": tabulate(sem)}
                lines.append(f"{args.file}:{item.line}: {_describe(row['semantics'])}")
                if args.explain:
                    lines.append(json.dumps(row["semantics"], indent=2, ensure_ascii=False))
            except (CheckError, Unsupported, SplitError, SizeLimitError) as e:
                ok = False
                row = {"line": item.line, "ok": False, "error": str(e)}
                lines.append(f"{args.file}:{item.line}: error: {e}")
            results.append(row)
    _emit(args, {"command": "interpret", "model": model.name, "ok": ok, "items": results},
          "\n".join(lines))
    return 0 if ok else 1


def _describe(t) -> str:
    ctx = t["context"]
    head = f"{t['kind']} over {ctx['name']} ({ctx['objects']} objects, {ctx['morphisms']} morphisms)"
    if "display" in t:
        d = t["display"]
        fib = "; ".join(f"{k} ↦ {{{', '.join(v)}}}" for k, v in d["fibers"].items())
        head += f": display map with fibers {fib}"
    if "section" in t:
        objs = "; ".join(f"{k} ↦ {v}" for k, v in t["section"]["objects"].items())
        head += f": section {objs}"
    if "equal" in t:
        head += f" [sides {'equal' if t['equal'] else 'DIFFER'}]"
    return head


def cmd_model_verify(args) -> int:
    from .verify import verify_model
    reports = []
    t0 = time.perf_counter()
    for m in _models(args.models):
        reports.append(verify_model(m, args.limit))
    return _report_many(args, "model-verify", reports, time.perf_counter() - t0)


def cmd_soundness(args) -> int:
    d = Path(args.corpus) if args.corpus else models_dir().parent / "corpus" / "soundness"
    if not d.is_dir():
        raise UsageError(f"no such corpus directory: {d}")
    items = []
    for f in sorted(d.glob("*.att")):
        try:
            doc = parse_document(f.read_text(encoding="utf-8"))
        except ParseError as e:
            raise UsageError(f"{f}: {e}") from None
        items.extend((f"{f.name}:{it.line}", it.judgment) for it in doc.items)
    models = [resolve_model(args.model)] if args.model else _models(())
    t0 = time.perf_counter()
    reports = [check_soundness(items, m) for m in models]
    return _report_many(args, "soundness", reports, time.perf_counter() - t0)


def _report_many(args, command, reports, seconds) -> int:
    ok = all(r.ok for r in reports)
    payload = {"command": command, "ok": ok, "reports": [r.to_dict() for r in reports]}
    lines = [r.render(limit=args.show) if args.verbose else _summary(r) for r in reports]
    lines.append(f"{'PASS' if ok else 'FAIL'}: {sum(r.total_checks() for r in reports)} checks "
                 f"in {seconds:.2f}s")
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


def _summary(r: Report) -> str:
    mark = "PASS" if r.ok else "FAIL"
    out = [f"[{mark}] {r.name}: {r.total_checks()} checks"]
    out += [f"    - {m}" for m in r.all_failures()[:10]]
    notes = r.all_notes()
    if notes:
        out.append(f"    ({len(notes)} checks skipped over the size limit; use --verbose)")
    return "\n".join(out)


def cmd_counterexample(args) -> int:
    from .verify import counterexample_record
    model = resolve_model(args.model)
    rec = counterexample_record(model)
    ok = (not rec["judgmental"]) and rec["H_section"] and rec["H_checks"] and rec["coherent"]
    lines = [f"model {rec['model']}: motive {rec['motive']} over Id_{rec['type']}, "
             f"constant {rec['constant']}",
             f"  motive coherent: {rec['coherent']}",
             f"  J_c[r_A] = c judgmentally: {rec['judgmental']}",
             "  pointwise (element: J_c[r_A] vs c):"]
    for row in rec["table"]:
        mark = "" if row["J[r]"] == row["c"] else "   <- differs"
        lines.append(f"    {row['at']}: {row['J[r]']} vs {row['c']}{mark}")
    lines.append(f"  H_c is a valid section of {rec['H_over']}: {rec['H_section']}")
    lines.append(f"  J and H laws hold: {rec['H_checks']}")
    if ok:
        lines.append("the computation axiom holds (H_c) while the computation rule fails")
    else:
        lines.append("no counterexample in this model: J_c[r_A] coincides with c"
                     if rec["judgmental"] else "H_c failed its checks")
    _emit(args, {"command": "counterexample", "ok": ok, "record": rec}, "\n".join(lines))
    return 0 if ok else 1


def run_bench(sizes, seed=0, repeats=3):
    """Time bench_family at each size (best of ``repeats``) and fit a log-log slope."""
    order = list(sizes)
    random.Random(seed).shuffle(order)
    best = {n: float("inf") for n in sizes}
    nodes = {}
    t0 = time.perf_counter()
    bench_family(8)                                  # warm-up
    for _ in range(repeats):
        for n in order:
            _, rec = bench_family(n)
            best[n] = min(best[n], rec["seconds"])
            nodes[n] = rec["nodes"]
    total = time.perf_counter() - t0
    xs = np.log(np.array(sizes, dtype=float))
    ys = np.log(np.array([best[n] for n in sizes]))
    slope = float(np.polyfit(xs, ys, 1)[0])
    return {"sizes": list(sizes), "seconds": [best[n] for n in sizes],
            "nodes": [nodes[n] for n in sizes], "exponent": slope, "total_seconds": total,
            "seed": seed, "repeats": repeats}


def cmd_bench(args) -> int:
    sizes = tuple(args.sizes) if args.sizes else BENCH_SIZES
    if len(sizes) < 2 or any(n < 1 for n in sizes):
        raise UsageError("bench needs at least two positive sizes")
    rec = run_bench(sizes, args.seed, args.repeats)
    ok = rec["exponent"] <= MAX_EXPONENT and rec["total_seconds"] < 60
    lines = [f"n={n:5d}  {s * 1000:9.2f} ms  {k} nodes"
             for n, s, k in zip(rec["sizes"], rec["seconds"], rec["nodes"])]
    lines.append(f"fitted exponent {rec['exponent']:.3f} (limit {MAX_EXPONENT}), "
                 f"total {rec['total_seconds']:.1f}s")
    _emit(args, {"command": "bench", "ok": ok, "record": rec}, "\n".join(lines))
    return 0 if ok else 1


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-size", type=int, default=None,
                        help="groupoid morphism soft limit (default 64 or $ATT_MAX_GROUPOID_SIZE)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized choices")
    common.add_argument("--report", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="att", description="Axiomatic type theory checker "
                                "and finite groupoid model verifier.")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    c = sub.add_parser("check", parents=[common], help="type-check .att files")
    c.add_argument("files", nargs="*")
    c.add_argument("--explain", action="store_true", help="print derivation trees")
    c.add_argument("--bench", type=int, metavar="N", help="check the size-N stress judgment")
    c.set_defaults(fn=cmd_check)

    i = sub.add_parser("interpret", parents=[common], help="interpret judgments in a model")
    i.add_argument("file")
    i.add_argument("--model", required=True, help="model file or shipped model name")
    i.add_argument("--explain", action="store_true", help="print full tables")
    i.set_defaults(fn=cmd_interpret)

    for name, fn, hlp in (("model-verify", cmd_model_verify, "run the model axiom suite"),
                          ("soundness", cmd_soundness, "run the soundness harness")):
        m = sub.add_parser(name, parents=[common], help=hlp)
        if name == "model-verify":
            m.add_argument("models", nargs="*", help="model files or names (default: all shipped)")
            m.add_argument("--limit", type=int, default=4, help="instances per generated family")
        else:
            m.add_argument("corpus", nargs="?", help="directory of .att files")
            m.add_argument("--model", help="model file or name (default: all shipped)")
        m.add_argument("--verbose", action="store_true", help="print the full report tree")
        m.add_argument("--show", type=int, default=5, help="failures shown per report node")
        m.set_defaults(fn=fn)

    x = sub.add_parser("counterexample", parents=[common],
                       help="show J_c[r_A] ≠ c with a valid H_c")
    x.add_argument("--model", default="counterexample")
    x.set_defaults(fn=cmd_counterexample)

    b = sub.add_parser("bench", parents=[common], help="fit the type-checking time exponent")
    b.add_argument("--sizes", type=int, nargs="+")
    b.add_argument("--repeats", type=int, default=3)
    b.set_defaults(fn=cmd_bench)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    if args.max_size is not None:
        if args.max_size < 1:
            print("att: --max-size must be positive", file=sys.stderr)
            return 2
        set_max_size(args.max_size)
    try:
        return args.fn(args)
    except (UsageError, ModelError) as e:
        print(f"att: {e}", file=sys.stderr)
        return 2
    except SizeLimitError as e:
        print(f"att: {e}", file=sys.stderr)
        return 1
    finally:
        if args.max_size is not None:
            set_max_size(None)


def main() -> None:
    sys.exit(run())
