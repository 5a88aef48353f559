"""Command line entry point: ``betabranch <command> [options]``.

Exit status is 0 for definite answers, 3 when an answer is Unknown (or a
graph was too large to finish) and 2 for bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__, special
from .branching import (
    Kind,
    Verdict,
    b_aleph0_membership,
    build_state_graph,
    classify_state_graph,
    default_max_states,
    export_tree,
    null_infinite_in_graph,
)
from .constants import ITEMS, lookup, registry, verify_item
from .errors import BetaBranchError, IncompleteGraph, ParseError
from .expansions import Base, greedy_lazy, is_unique, Uniqueness
from .parsing import parse_point, parse_polynomial

EXIT_OK, EXIT_USAGE, EXIT_UNKNOWN = 0, 2, 3

SWEEP_HEADER = ["base", "approx", "point", "classification", "k", "null_infinite", "states", "complete", "error"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    base: str | None = None
    point: str | None = None
    max_states: int | None = None
    max_steps: int = 10_000
    depth: int = 4
    digits: int = 20
    mode: str | None = None
    format: str = "text"
    out: str | None = None
    item: str | None = None
    all: bool = False
    transcript: str | None = None
    bases: list = field(default_factory=list)
    points: list = field(default_factory=list)
    jobs: int = 1


def parse_base(spec: str) -> Base:
    """``golden``/``q_2``/... or ``alpha_K``; ``poly:<p>`` (the root in
    (1, 2)) or ``poly:<p>@lo,hi``; or a rational such as ``3/2``."""
    s = spec.strip()
    if s.startswith("poly:"):
        body = s[5:]
        interval = None
        if "@" in body:
            body, _, rng = body.partition("@")
            try:
                lo, hi = (Fraction(t) for t in rng.split(","))
            except ValueError:
                raise ParseError(f"bad isolating interval {rng!r}; expected lo,hi", spec) from None
            interval = (lo, hi)
        poly = parse_polynomial(body)
        if interval is None:
            root = special.root_in_unit_gap(poly)
        else:
            from .algebraic import isolate_real_roots

            roots = isolate_real_roots(poly, *interval)
            if len(roots) != 1:
                raise ParseError(f"{poly} has {len(roots)} roots in ({interval[0]}, {interval[1]}), need exactly one", spec)
            root = roots[0]
        return Base(root, s)
    if s and (s[0].isdigit() or s[0] == "."):
        try:
            return Base(Fraction(s), s)
        except ValueError:
            raise ParseError(f"bad rational base {s!r}", spec) from None
    try:
        return lookup(s).base()
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _require(cfg: RunConfig, *names):
    for n in names:
        if getattr(cfg, n) in (None, ""):
            raise UsageError(f"{cfg.command} needs --{n.replace('_', '-')}")


def _check_format(cfg: RunConfig, allowed):
    if cfg.format not in allowed:
        raise UsageError(f"{cfg.command} supports --format {'|'.join(allowed)}, not {cfg.format}")


def _exit_for(kind_unknown: bool) -> int:
    return EXIT_UNKNOWN if kind_unknown else EXIT_OK


def _cmd_constants(cfg):
    _check_format(cfg, ("text", "json", "csv"))
    rows = [
        {"name": b.name, "relation": b.defining_relation, "minpoly": str(b.minpoly),
         "approx": b.approx, "computed": b.decimal(), "value": b.value.to_decimal(12)}
        for b in registry()
    ]
    if cfg.format == "json":
        return EXIT_OK, json.dumps(rows, indent=2)
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return EXIT_OK, buf.getvalue().rstrip("\n")
    return EXIT_OK, "\n".join(f"{r['name']:<9} {r['value']:<15} {r['relation']}" for r in rows)


def _cmd_expand(cfg):
    _require(cfg, "base", "point")
    _check_format(cfg, ("text", "json"))
    mode = cfg.mode or "greedy"
    if mode not in ("greedy", "lazy"):
        raise UsageError("expand --mode must be greedy or lazy")
    base = parse_base(cfg.base)
    x = parse_point(cfg.point, base)
    word = greedy_lazy(base, x, cfg.digits, mode)
    if cfg.format == "json":
        return EXIT_OK, json.dumps({"mode": mode, "digits": word})
    return EXIT_OK, word


def _classify_doc(base, x, max_states):
    g = build_state_graph(base, x, max_states)
    return g, classify_state_graph(g)


def _cmd_classify(cfg):
    _require(cfg, "base", "point")
    _check_format(cfg, ("text", "json"))
    base = parse_base(cfg.base)
    x = parse_point(cfg.point, base)
    g, c = _classify_doc(base, x, cfg.max_states)
    status = _exit_for(c.kind is Kind.UNKNOWN)
    if cfg.format == "json":
        doc = dict(c.to_dict(), states=len(g), complete=g.complete)
        return status, json.dumps(doc)
    return status, f"{c}  (states={len(g)}, complete={str(g.complete).lower()})"


def _cmd_unique(cfg):
    _require(cfg, "base", "point")
    _check_format(cfg, ("text", "json"))
    base = parse_base(cfg.base)
    x = parse_point(cfg.point, base)
    res = is_unique(base, x, cfg.max_steps)
    doc = {"status": res.status.value}
    if res.witness is not None:
        doc["witness"] = res.witness
    if res.expansion is not None:
        doc["expansion"] = str(res.expansion)
    status = _exit_for(res.status is Uniqueness.UNKNOWN)
    if cfg.format == "json":
        return status, json.dumps(doc)
    extra = doc.get("expansion") or doc.get("witness")
    return status, res.status.value + (f"  {extra}" if extra else "")


def _cmd_tree(cfg):
    _require(cfg, "base", "point")
    fmt = "dot" if cfg.format == "text" else cfg.format
    if fmt not in ("dot", "json"):
        raise UsageError("tree supports --format dot|json")
    mode = cfg.mode or "full"
    base = parse_base(cfg.base)
    x = parse_point(cfg.point, base)
    tree = export_tree(base, x, mode, cfg.depth, cfg.max_states)
    status = _exit_for(tree.classification.kind is Kind.UNKNOWN)
    if fmt == "json":
        return status, json.dumps(tree.to_json(), indent=1)
    return status, tree.to_dot()


def _cmd_verify(cfg):
    _check_format(cfg, ("text", "json"))
    if cfg.all == bool(cfg.item):
        raise UsageError("verify needs exactly one of --all or --item ID")
    base = parse_base(cfg.base) if cfg.base else None
    items = ITEMS if cfg.all else (cfg.item,)
    if cfg.item and cfg.item not in ITEMS:
        raise UsageError(f"unknown item {cfg.item!r}; known: {', '.join(ITEMS)}")
    reports = [r for item in items for r in verify_item(item, base)]
    transcript = json.dumps([r.to_dict() for r in reports], indent=1)
    if cfg.transcript:
        with open(cfg.transcript, "w") as fh:
            fh.write(transcript + "\n")
    if cfg.format == "json":
        return EXIT_OK, transcript
    return EXIT_OK, "\n".join(r.line() for r in reports)


def _cmd_null_infinite(cfg):
    _require(cfg, "base", "point")
    _check_format(cfg, ("text", "json"))
    base = parse_base(cfg.base)
    x = parse_point(cfg.point, base)
    v = null_infinite_in_graph(build_state_graph(base, x, cfg.max_states))
    status = _exit_for(v is Verdict.UNKNOWN)
    if cfg.format == "json":
        return status, json.dumps({"null_infinite": v.value})
    return status, v.value


def _cmd_membership(cfg):
    _require(cfg, "base")
    _check_format(cfg, ("text", "json"))
    base = parse_base(cfg.base)
    m = b_aleph0_membership(base, cfg.max_states)
    status = _exit_for(m.verdict == "Unknown")
    doc = {"membership": m.verdict, "witness": str(m.witness) if m.witness is not None else None,
           "checked": [{"point": str(y), "null_infinite": v.value} for y, v in m.details]}
    if cfg.format == "json":
        return status, json.dumps(doc, indent=1)
    return status, m.verdict + (f"  witness {m.witness} ~ {m.witness.to_decimal(6)}" if m.witness is not None else "")


def sweep_row(base_spec: str, point_spec: str, max_states: int | None) -> dict:
    """One sweep row; any error is recorded rather than raised."""
    row = dict.fromkeys(SWEEP_HEADER, "")
    row["base"], row["point"] = base_spec, point_spec
    try:
        base = parse_base(base_spec)
        row["approx"] = base.approx(6)
        x = parse_point(point_spec, base)
        g, c = _classify_doc(base, x, max_states)
        row["classification"] = c.kind.value
        row["k"] = c.k if c.kind is Kind.FINITE else ""
        row["null_infinite"] = null_infinite_in_graph(g).value
        row["states"] = len(g)
        row["complete"] = str(g.complete).lower()
        if c.kind is Kind.UNKNOWN:
            row["error"] = c.reason
    except (BetaBranchError, UsageError, ValueError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _sweep_task(args):
    return sweep_row(*args)


def sweep(bases: list[str], points: list[str], max_states: int | None = None, jobs: int = 1) -> list[dict]:
    if not bases or not points:
        raise UsageError("sweep needs at least one base and one point")
    tasks = [(b, p, max_states) for b in bases for p in points]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_task, tasks))
    return [sweep_row(*t) for t in tasks]


def _cmd_sweep(cfg):
    fmt = "csv" if cfg.format == "text" else cfg.format
    if fmt not in ("csv", "json"):
        raise UsageError("sweep supports --format csv|json")
    rows = sweep(cfg.bases, cfg.points, cfg.max_states, cfg.jobs)
    status = _exit_for(any(r["classification"] in ("Unknown", "") for r in rows))
    if fmt == "json":
        return status, json.dumps(rows, indent=1)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SWEEP_HEADER, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return status, buf.getvalue().rstrip("\n")


COMMANDS = {
    "constants": _cmd_constants,
    "expand": _cmd_expand,
    "classify": _cmd_classify,
    "unique": _cmd_unique,
    "tree": _cmd_tree,
    "verify": _cmd_verify,
    "null-infinite": _cmd_null_infinite,
    "membership": _cmd_membership,
    "sweep": _cmd_sweep,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Dispatch ``cfg``; returns (exit status, output text)."""
    if cfg.max_states is not None and cfg.max_states < 1:
        raise UsageError("--max-states must be positive")
    if cfg.max_steps < 1 or cfg.depth < 0 or cfg.digits < 0:
        raise UsageError("limits must be positive")
    return COMMANDS[cfg.command](cfg)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--base", help="base: golden, q_2, q_f, q_aleph0, r1..r5, alpha_K, 3/2, poly:<p>[@lo,hi]")
    common.add_argument("--x", dest="point", help='point: "word:PRE|PER" or "fe:<expression in q>"')
    common.add_argument("--max-states", type=int, default=None,
                        help=f"state limit (default {default_max_states()}, env BETA_BRANCH_MAX_STATES)")
    common.add_argument("--max-steps", type=int, default=10_000)
    common.add_argument("--depth", type=int, default=4)
    common.add_argument("--digits", type=int, default=20)
    common.add_argument("--mode")
    common.add_argument("--format", default="text", choices=("text", "json", "csv", "dot"))
    common.add_argument("--out", help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="betabranch", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("constants", "list the named bases"),
        ("expand", "greedy or lazy digits of a point"),
        ("classify", "cardinality of the expansion set"),
        ("unique", "does the point have a unique expansion"),
        ("tree", "branching tree as DOT or JSON"),
        ("null-infinite", "null-infinite test for a point"),
        ("membership", "search P_q for a null-infinite point"),
    ):
        sub.add_parser(name, parents=[common], help=help_)
    v = sub.add_parser("verify", parents=[common], help="re-derive the separating inequalities")
    v.add_argument("--item", choices=ITEMS)
    v.add_argument("--all", action="store_true")
    v.add_argument("--transcript", help="write the JSON comparison transcript here")
    s = sub.add_parser("sweep", parents=[common], help="classify every base/point pair, CSV out")
    s.add_argument("--bases", nargs="+", default=[])
    s.add_argument("--points", nargs="+", default=[])
    s.add_argument("--jobs", type=int, default=1)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__})
    try:
        status, text = run(cfg)
    except (UsageError, ParseError, KeyError) as exc:
        print(f"betabranch: error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_USAGE
    except IncompleteGraph as exc:
        print(f"betabranch: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except BetaBranchError as exc:
        print(f"betabranch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
