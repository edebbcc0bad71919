"""Command-line front end.

Exit codes: 0 success, 1 a claim failed, 2 usage or input error, 3 budget exceeded.
Environment overrides (flags win): DEEPCOMMUTING_CACHE_DIR, DEEPCOMMUTING_MAX_COSETS,
DEEPCOMMUTING_MAX_VERTICES, DEEPCOMMUTING_CLAIM_SECONDS.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import re
import sys
from pathlib import Path

from . import __version__
from . import analytics as an
from .catalog import covers
from .catalog.groups import build_group
from .catalog.specs import format_spec, parse_spec, spec_order
from .errors import (
    BudgetExceeded,
    CapExceeded,
    DeepCommutingError,
    InvalidParams,
    InvalidSpec,
    Unsupported,
)
from .fpgroup import DEFAULT_MAX_COSETS, CoverCache, enumerate_cached
from .graphs import Graph, build_hierarchy, commuting_graph, deep_commuting_graph, enhanced_power_graph, power_graph, to_dot, to_json
from .oracles import default_oracle, default_subgroup

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
KINDS = ("power", "enhanced", "deep", "commuting")
DEFAULT_MAX_VERTICES = 25_000


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        v = int(raw)
    except ValueError:
        raise InvalidParams(f"{name}={raw!r} is not an integer") from None
    if v < 1:
        raise InvalidParams(f"{name} must be positive")
    return v


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        v = float(raw)
    except ValueError:
        raise InvalidParams(f"{name}={raw!r} is not a number") from None
    if v <= 0:
        raise InvalidParams(f"{name} must be positive")
    return v


def default_cache_dir() -> Path:
    if os.environ.get("DEEPCOMMUTING_CACHE_DIR"):
        return Path(os.environ["DEEPCOMMUTING_CACHE_DIR"])
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "deepcommuting"


def _cache(args) -> CoverCache:
    root = Path(args.cache_dir) if args.cache_dir else default_cache_dir()
    try:
        root.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise InvalidParams(f"cannot create cache directory {root}: {e}") from None
    return CoverCache(root)


def _max_cosets(args, default: int = DEFAULT_MAX_COSETS) -> int:
    if args.max_cosets is not None:
        if args.max_cosets < 1:
            raise InvalidParams("--max-cosets must be positive")
        return args.max_cosets
    return _env_int("DEEPCOMMUTING_MAX_COSETS", default)


def _file_stem(spec_text: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", spec_text).strip("_")


# ---------------------------------------------------------------------------
# build


def stats_row(spec_text: str, kind: str, g: Graph, budget: an.PerfectnessBudget | None = None) -> list:
    st = an.basic_stats(g)
    red = an.reduced_graph(g)
    comps = an.components_and_diameter(red)
    verdict = an.perfectness_verdict(g, budget)
    witness = " ".join(verdict.witness_labels) if verdict.kind == "NotPerfect" else ""
    return [
        spec_text, kind, g.n, g.edge_count, "yes" if st.is_complete else "no",
        "yes" if st.is_eulerian else "no", len(an.dominant_vertices(g)), comps.count,
        comps.diameter, verdict.kind, witness,
    ]


STATS_HEADER = ["spec", "graph_kind", "vertices", "edges", "complete", "eulerian", "dominant",
                "reduced_components", "reduced_diameter", "perfectness", "witness"]


def cmd_build(args) -> int:
    spec = parse_spec(args.spec)
    text = format_spec(spec)
    limit = args.max_vertices or _env_int("DEEPCOMMUTING_MAX_VERTICES", DEFAULT_MAX_VERTICES)
    if spec_order(spec) > limit:
        raise BudgetExceeded(f"{text} has {spec_order(spec)} elements; vertex budget is {limit}")
    G = build_group(spec)
    kinds = KINDS if args.kind == "all" else (args.kind,)
    graphs: dict[str, Graph] = {}
    if args.kind == "all":
        graphs = build_hierarchy(G, default_oracle(G, max_cosets=_max_cosets(args), cache=_cache(args))).as_dict()
    else:
        k = args.kind
        if k == "deep":
            graphs[k] = deep_commuting_graph(G, default_oracle(G, max_cosets=_max_cosets(args), cache=_cache(args)))
        elif k == "power":
            graphs[k] = power_graph(G)
        elif k == "enhanced":
            graphs[k] = enhanced_power_graph(G)
        else:
            graphs[k] = commuting_graph(G)
    ext = args.format
    written = []
    for k in kinds:
        g = graphs[k]
        body = to_json(g, text, k) if ext == "json" else to_dot(g, f"{text} {k}")
        if args.out == "-":
            sys.stdout.write(body)
            continue
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / f"{_file_stem(text)}.{k}.{ext}"
        path.write_text(body)
        written.append(path)
    if args.stats:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(STATS_HEADER)
        for k in kinds:
            w.writerow(stats_row(text, k, graphs[k]))
        if args.stats == "-":
            sys.stdout.write(buf.getvalue())
        else:
            Path(args.stats).write_text(buf.getvalue())
    for p in written:
        print(p)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    from .verify import Budget, run_claims, select

    if args.list:
        for c in select(args.filter):
            print(f"{c.id:<40} {c.statement}")
        return EXIT_OK
    if not select(args.filter):
        raise InvalidParams(f"no claim matches {args.filter!r}")
    seconds = args.seconds if args.seconds is not None else _env_float("DEEPCOMMUTING_CLAIM_SECONDS", Budget.seconds)
    if seconds <= 0:
        raise InvalidParams("--seconds must be positive")
    budget = Budget(seconds=seconds, max_cosets=_max_cosets(args, Budget.max_cosets), seed=args.seed)

    def progress(r):
        if not args.quiet:
            print(f"{r.status:<8} {r.id:<40} {r.seconds:7.2f}s", file=sys.stderr, flush=True)

    report = run_claims(args.filter, budget, _cache(args), progress=progress)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.csv").write_text(report.to_csv())
    (out / "report.txt").write_text(report.to_text())
    sys.stdout.write(report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# multiplier, cache, embed


def cmd_multiplier(args) -> int:
    k = covers.metacyclic_multiplier_order(covers.MetacyclicParams(args.m, args.s, args.t, args.r))
    print(k)
    return EXIT_OK


def cmd_cache(args) -> int:
    cache = _cache(args)
    if args.action == "list":
        for key, degree, label in cache.entries():
            print(f"{key}  {degree}  {label}".rstrip())
        return EXIT_OK
    if args.action == "clear":
        print(f"removed {cache.clear()} table(s) from {cache.root}")
        return EXIT_OK
    if not args.spec:
        raise InvalidParams("cache warm needs a group spec")
    spec = parse_spec(args.spec)
    pres = covers.schur_cover_presentation(spec)
    if isinstance(pres, covers.SelfCover):
        print(f"{format_spec(spec)}: {pres.reason}; nothing to enumerate")
        return EXIT_OK
    max_cosets = _max_cosets(args)
    text = format_spec(spec)
    order = spec_order(spec) * covers.multiplier_order(spec)
    subgroups = [()]
    sub = default_subgroup(spec)
    if sub:
        subgroups = [sub] + ([()] if order <= max_cosets else [])
    for s in subgroups:
        label = text if not s else text + " / <" + ", ".join(pres.word_text(w) for w in s) + ">"
        rep = enumerate_cached(pres, s, max_cosets, cache, label)
        print(f"{label}: degree {rep.degree}  {cache.path_for(rep.presentation_hash)}")
    return EXIT_OK


def _parse_edges(text: str, n: int) -> list[tuple[int, int]]:
    edges = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        m = re.fullmatch(r"(\d+)\s*-\s*(\d+)", tok)
        if not m:
            raise InvalidParams(f"bad edge {tok!r}; use i-j with 0-based vertices")
        i, j = int(m.group(1)), int(m.group(2))
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise InvalidParams(f"edge {tok!r} out of range for {n} vertices")
        edges.append((i, j))
    return edges


def cmd_embed(args) -> int:
    if args.vertices < 1:
        raise InvalidParams("need at least one vertex")
    g = Graph.from_edges(args.vertices, _parse_edges(args.edges, args.vertices))
    res = an.universality_embed(g, cap=args.cap)
    print(f"group {format_spec(res.spec)} (order {spec_order(res.spec)})")
    for v, lab in enumerate(res.labels):
        print(f"v{v} -> {lab}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="deepcommuting", description="Deep commuting graphs of finite groups.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", help="cover cache directory (env DEEPCOMMUTING_CACHE_DIR)")
    common.add_argument("--max-cosets", type=int, help="coset enumeration budget (env DEEPCOMMUTING_MAX_COSETS)")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="build graphs of a group")
    b.add_argument("spec", help="group spec, e.g. sym:5, abelianp:3:2,1, prod(dih:8;cyc:9)")
    b.add_argument("kind", choices=KINDS + ("all",))
    b.add_argument("--format", choices=("dot", "json"), default="json")
    b.add_argument("--out", default=".", help="output directory, or - for stdout")
    b.add_argument("--stats", help="also write a CSV analytics row per graph to this file (- for stdout)")
    b.add_argument("--max-vertices", type=int, help="vertex budget (env DEEPCOMMUTING_MAX_VERTICES)")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", parents=[common], help="run the claim suite")
    v.add_argument("--filter", default="*", help="glob over claim ids, comma separated")
    v.add_argument("--seconds", type=float, help="per-claim time budget (env DEEPCOMMUTING_CLAIM_SECONDS)")
    v.add_argument("--seed", type=int, default=1729)
    v.add_argument("--out", default=".", help="directory for report.csv and report.txt")
    v.add_argument("--list", action="store_true", help="list matching claims and exit")
    v.add_argument("--quiet", action="store_true")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("multiplier", help="Schur multiplier order of <a,b | a^m, b^s=a^t, a^b=a^r>")
    for name in ("m", "s", "t", "r"):
        m.add_argument(name, type=int)
    m.set_defaults(func=cmd_multiplier)

    c = sub.add_parser("cache", parents=[common], help="manage enumerated cover tables")
    c.add_argument("action", choices=("list", "clear", "warm"))
    c.add_argument("spec", nargs="?")
    c.set_defaults(func=cmd_cache)

    e = sub.add_parser("embed", help="embed a small graph as an induced subgraph of a deep commuting graph")
    e.add_argument("vertices", type=int)
    e.add_argument("--edges", default="", help="comma separated i-j pairs, 0-based")
    e.add_argument("--cap", type=int, default=4)
    e.set_defaults(func=cmd_embed)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (BudgetExceeded, CapExceeded) as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvalidSpec, InvalidParams, Unsupported) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DeepCommutingError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"I/O error: {e.filename or ''}: {e.strerror or e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
