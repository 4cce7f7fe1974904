"""The ``emcx`` command line.

Exit codes: 0 success, 1 a checked failure (no proof found, a script that
does not replay, fuel exhausted), 2 usage or parse errors.  Defaults come
from ``emcx.toml`` in the working directory (or the file named by
``EMCX_CONFIG``), then the flags; ``EMCX_SEED`` overrides ``--seed``.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from pathlib import Path

from . import corpus
from .dot import to_dot
from .kernel import check_all
from .model import (ModelError, evaluate, from_literal, sample_value,
                    show_value)
from .rewrite import LEVELS, RewriteError, constants_of, normalize, prove_equal, rules_for
from .steps import Rewrite
from .sexpr import Script, SexprError, script_from_text, script_to_text
from .syntax import ParseError, parse, show, show_type, show_unicode
from .terms import Arrow, TermError, free_var_types, infer_type

DEFAULTS = {"calc": None, "fuel": 10000, "budget": 50000, "seed": 0, "trials": 100}


class UsageError(Exception):
    pass


def load_config(path=None) -> dict:
    """``key = value`` defaults; the file is read as TOML."""
    path = Path(path or os.environ.get("EMCX_CONFIG", "emcx.toml"))
    if not path.is_file():
        return {}
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    try:
        data = tomllib.loads(path.read_text(encoding="utf-8"))
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"{path}: {exc}") from None
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise UsageError(f"{path}: unknown keys {sorted(unknown)}")
    return data


def smallest_calculus(*terms) -> str:
    used = set().union(*(constants_of(t) for t in terms))
    for name in sorted(LEVELS, key=LEVELS.get):
        if used <= rules_for(name).constants:
            return name
    return "n-convex"


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--calc", choices=sorted(LEVELS, key=LEVELS.get),
                        help="calculus (default: the smallest one containing the constants)")
    common.add_argument("--fuel", type=int, help="normalization step budget (10000)")
    common.add_argument("--budget", type=int, help="search budget in expanded nodes (50000)")
    common.add_argument("--seed", type=int, help="random seed (0); EMCX_SEED overrides")
    common.add_argument("--trials", type=int, help="oracle trials (100)")

    ap = argparse.ArgumentParser(prog="emcx", description="dilation-term calculus toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)
    for name, help_ in [("parse", "parse and print a term"), ("type", "infer a type"),
                        ("norm", "normalize"), ("dot", "Graphviz DOT of the syntax tree")]:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("term")
    p = sub.add_parser("eq", parents=[common], help="search a proof of T1 = T2")
    p.add_argument("t1")
    p.add_argument("t2")
    p = sub.add_parser("eval", parents=[common], help="evaluate in the affine model")
    p.add_argument("term")
    p.add_argument("--env", default="", help="bindings such as a=2,e=1/2,x=3")
    p = sub.add_parser("check", parents=[common], help="replay proof scripts")
    p.add_argument("files", nargs="*", help="script files (default: the bundled corpus)")
    sub.add_parser("lemmas", parents=[common], help="list the lemma database with verdicts")
    return ap


def _settings(args) -> dict:
    out = dict(DEFAULTS)
    out.update(load_config())
    for key in DEFAULTS:
        v = getattr(args, key, None)
        if v is not None:
            out[key] = v
    if os.environ.get("EMCX_SEED"):
        try:
            out["seed"] = int(os.environ["EMCX_SEED"])
        except ValueError:
            raise UsageError("EMCX_SEED must be an integer") from None
    if out["calc"] is not None and out["calc"] not in LEVELS:
        raise UsageError(f"unknown calculus {out['calc']!r}")
    return out


def _emit(args, out, payload: dict, text: str):
    if args.json:
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def _term(text):
    t = parse(text)
    infer_type(t)
    return t


# --------------------------------------------------------------------------- #
# commands
# --------------------------------------------------------------------------- #

def cmd_parse(args, cfg, out):
    t = _term(args.term)
    _emit(args, out, {"term": show(t), "unicode": show_unicode(t)}, show(t))
    return 0


def cmd_type(args, cfg, out):
    t = parse(args.term)
    ty = infer_type(t)
    _emit(args, out, {"term": show(t), "type": show_type(ty)}, show_type(ty))
    return 0


def cmd_norm(args, cfg, out):
    t = _term(args.term)
    calc = cfg["calc"] or smallest_calculus(t)
    res = normalize(t, calc, cfg["fuel"])
    normal = res.status == "normal"
    _emit(args, out, {"term": show(t), "calculus": calc, "normal_form": show(res.term),
                      "status": res.status, "steps": len(res.trace)},
          show(res.term) + ("" if normal else "\n; fuel exhausted"))
    return 0 if normal else 1


def cmd_eq(args, cfg, out):
    t1, t2 = _term(args.t1), _term(args.t2)
    if infer_type(t1) != infer_type(t2):
        raise UsageError("the two terms have different types")
    calc = cfg["calc"] or smallest_calculus(t1, t2)
    proof = prove_equal(t1, t2, calc, cfg["budget"], fuel=cfg["fuel"])
    if proof is None:
        _emit(args, out, {"calculus": calc, "found": False, "script": None},
              "no proof found within the budget (this is not a disproof)")
        return 1
    rules = rules_for(calc)
    deps = sorted({d for st in proof.steps if isinstance(st, Rewrite)
                   for d in rules.rule(st.rule).requires})
    text = script_to_text(Script("eq", calc, t1, t2, list(proof.steps), tuple(deps)))
    _emit(args, out, {"calculus": calc, "found": True, "steps": len(proof.steps),
                      "script": text}, text)
    return 0


def _env(text: str, fvt: dict):
    env = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        if "=" not in item:
            raise UsageError(f"bad binding {item!r}; expected name=p/q")
        name, value = (s.strip() for s in item.split("=", 1))
        if name not in fvt:
            raise UsageError(f"{name} is not a free variable of the term")
        if isinstance(fvt[name], Arrow):
            raise UsageError(f"{name} has a function type and cannot be bound to a number")
        try:
            env[name] = from_literal(value, fvt[name])
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad number {value!r}") from None
    return env


def cmd_eval(args, cfg, out):
    t = _term(args.term)
    fvt = free_var_types(t)
    env = _env(args.env, fvt)
    missing = sorted(set(fvt) - set(env))
    rows = []
    runs = cfg["trials"] if missing else 1
    for k in range(runs):
        rng = random.Random(f"{cfg['seed']}:{k}")
        full = dict(env)
        for name in missing:
            full[name] = sample_value(fvt[name], rng)
        v = evaluate(t, full)
        rows.append({"env": {n: show_value(full[n]) for n in missing}, "value": show_value(v)})
    if not missing:
        _emit(args, out, {"term": show(t), "value": rows[0]["value"]}, rows[0]["value"])
    else:
        text = "\n".join(" ".join(f"{n}={v}" for n, v in r["env"].items()) + f" -> {r['value']}"
                         for r in rows)
        _emit(args, out, {"term": show(t), "sampled": missing, "seed": cfg["seed"],
                          "rows": rows}, text)
    return 0


def _report(entries, args, cfg, out, elapsed=None):
    ok = all(e.accepted for e in entries)
    counts = {}
    for e in entries:
        counts[e.verdict] = counts.get(e.verdict, 0) + 1
    payload = {"ok": ok, "seed": cfg["seed"], "trials": cfg["trials"],
               "summary": dict(sorted(counts.items())),
               "entries": [e.as_dict() for e in entries]}
    lines = []
    for e in entries:
        mark = "ok" if e.accepted else "FAIL"
        extra = []
        if e.oracle is not None:
            extra.append(f"oracle={'agrees' if e.oracle else 'REFUTES'}")
        if e.verdict == "postulate":
            extra.append("POSTULATE")
        elif e.relies:
            extra.append("relies on postulates: " + ", ".join(e.relies))
        if e.reason and not e.accepted:
            extra.append(e.reason)
        lines.append(f"{mark:4} {e.name} [{e.calculus}] {e.verdict}, {e.steps} steps"
                     + ("; " + "; ".join(extra) if extra else ""))
    summary = ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))
    lines.append(f"{len(entries)} scripts: {summary}" + (f" ({elapsed:.1f} s)" if elapsed else ""))
    _emit(args, out, payload, "\n".join(lines))
    return 0 if ok else 1


def cmd_check(args, cfg, out):
    start = time.perf_counter()
    bundled = corpus.load_scripts()
    if not args.files:
        entries = check_all(bundled, corpus.statements(), trials=cfg["trials"], seed=cfg["seed"])
        return _report(entries, args, cfg, out, None if args.json else time.perf_counter() - start)
    given = []
    for f in args.files:
        try:
            given.append(script_from_text(Path(f).read_text(encoding="utf-8")))
        except OSError as exc:
            raise UsageError(f"{f}: {exc.strerror}") from None
        except (SexprError, ParseError, TermError) as exc:
            raise UsageError(f"{f}: {exc}") from None
    names = [s.name for s in given]
    if len(set(names)) != len(names):
        raise UsageError("two files define the same script name")
    pool = {s.name: s for s in bundled}
    pool.update({s.name: s for s in given})
    entries = check_all(pool.values(), trials=cfg["trials"], seed=cfg["seed"])
    by_name = {e.name: e for e in entries}
    return _report([by_name[n] for n in names], args, cfg, out)


def cmd_lemmas(args, cfg, out):
    db = corpus.statements()
    entries = {e.name: e for e in check_all(corpus.load_scripts(), db,
                                            trials=cfg["trials"], seed=cfg["seed"])}
    topics = corpus.topics()
    rows, lines = [], []
    for lem in db:
        e = entries.get(lem.name)
        row = {"name": lem.name, "calculus": lem.calculus, "topic": topics.get(lem.name, ""),
               "lhs": show(lem.lhs), "rhs": show(lem.rhs),
               "hypotheses": [[h, show(l), show(r)] for h, l, r in lem.hyps],
               "verdict": e.verdict if e else "missing-script",
               "oracle": e.oracle if e else None}
        rows.append(row)
        lines.append(f"{row['name']:24} {row['calculus']:10} {row['verdict']:9} "
                     f"{row['topic']}\n    {row['lhs']}  =  {row['rhs']}")
    ok = all(entries.get(l.name) is not None and entries[l.name].accepted for l in db)
    _emit(args, out, {"ok": ok, "lemmas": rows}, "\n".join(lines))
    return 0 if ok else 1


def cmd_dot(args, cfg, out):
    t = _term(args.term)
    text = to_dot(t)
    _emit(args, out, {"term": show(t), "dot": text}, text)
    return 0


COMMANDS = {"parse": cmd_parse, "type": cmd_type, "norm": cmd_norm, "eq": cmd_eq,
            "eval": cmd_eval, "check": cmd_check, "lemmas": cmd_lemmas, "dot": cmd_dot}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        cfg = _settings(args)
        return COMMANDS[args.cmd](args, cfg, out)
    except UsageError as exc:
        err.write(f"emcx: {exc}\n")
        return 2
    except (ParseError, TermError, RewriteError, ModelError) as exc:
        if args.json:
            out.write(json.dumps({"error": type(exc).__name__, "message": str(exc)},
                                 sort_keys=True) + "\n")
        err.write(f"emcx: {type(exc).__name__}: {exc}\n")
        return 2


def main():
    sys.exit(run())
