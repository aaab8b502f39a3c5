"""Command-line entry point: ``bicellular {count,sample,decompose,rebuild,stats,verify}``.

Every command can write a JSON manifest (``--manifest``) recording the
command, its full configuration, the seed, a hash of the count tables used,
the output files with their hashes and wall times.  Exit status is 0 iff the
command produced no failures.
"""
import argparse
import hashlib
import json
import logging
import os
import platform
import sys
import time

from . import __version__
from .counting import (
    CountTable, bicellular_count_paths, bicellular_count_rec, binom, catalan, diagram_count,
    plane_tree_count, split_table, unicellular_count,
)
from .duality import format_diagram, matching_of, matching_part, parse_diagram, poincare_dual
from .errors import BicellularError
from .map_core import format_map, parse_map
from .oracle import enumerate_diagrams, enumerate_planted_bicellular, enumerate_unicellular
from .surgery import decompose, format_trace, parse_trace, rebuild

log = logging.getLogger("bicellular")

SEED_ENV = "BICELLULAR_SEED"
ORACLE_LIMITS = {"trees": 6, "uni": 5, "bi": 5, "diagrams": 10}


class CommandFailed(Exception):
    pass


# -- helpers -----------------------------------------------------------------

def _sha256(data):
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


def _sizes(text):
    """'5' -> [5]; '2:6' -> [2, 3, 4, 5, 6]."""
    lo, colon, hi = str(text).partition(":")
    try:
        lo = int(lo)
        hi = int(hi) if colon else lo
    except ValueError:
        raise argparse.ArgumentTypeError("expected N or LO:HI, got %r" % text)
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError("bad range %r" % text)
    return list(range(lo, hi + 1))


def _load_config(path):
    if path is None:
        return {}
    if sys.version_info >= (3, 11):
        import tomllib
    else:
        import tomli as tomllib
    with open(path, "rb") as f:
        return tomllib.load(f)


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CommandFailed("%s must be an integer, got %r" % (SEED_ENV, env))
    return 0


def _emit(args, text):
    """Write command output to --out (returning its record) or stdout."""
    out = getattr(args, "out", None)
    if out and out != "-":
        with open(out, "w") as f:
            f.write(text)
        return [{"path": out, "sha256": _sha256(text)}]
    sys.stdout.write(text)
    return []


def _read(path):
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path) as f:
        return f.read()


def _write_manifest(args, record):
    if not args.manifest:
        return
    with open(args.manifest, "w") as f:
        json.dump(record, f, indent=2, sort_keys=True, default=str)
        f.write("\n")


# -- count -------------------------------------------------------------------

def _oracle_count(family, g, n, length):
    if family == "trees":
        return len(enumerate_unicellular(n, 0).instances)
    if family == "uni":
        return len(enumerate_unicellular(n, g).instances)
    if family == "bi":
        return len(enumerate_planted_bicellular(n, g).instances)
    return len(enumerate_diagrams(length, g, n).instances)


def _cross_check(family, g, n, length):
    """All available routes to one count; they must agree."""
    routes = {}
    if family == "trees":
        routes["catalan"] = catalan(n)
        routes["convolution"] = plane_tree_count(n)
    elif family == "uni":
        routes["recursion"] = unicellular_count(g, n)
    elif family == "bi":
        routes["recursion"] = bicellular_count_rec(g, n)
        routes["paths"] = bicellular_count_paths(g, n)
    else:
        routes["formula"] = diagram_count(g, length, n)
        routes["paths"] = 0 if 2 * n > length or n < 1 else binom(length, 2 * n) * bicellular_count_paths(g, n)
    size = length if family == "diagrams" else n
    if size <= ORACLE_LIMITS[family]:
        routes["oracle"] = _oracle_count(family, g, n, length)
    return routes


def cmd_count(args):
    table = CountTable()
    diag = args.family == "diagrams"
    if diag:
        if args.len is None:
            raise CommandFailed("--family diagrams needs --len")
        rows = [(length, n) for length in args.len
                for n in (args.n if args.n is not None else [None])]
    else:
        if args.n is None:
            raise CommandFailed("--family %s needs --n" % args.family)
        rows = [(None, n) for n in args.n]
    lines = ["family,g,len,n,count" if diag else "family,g,n,count"]
    mismatches = 0
    checks = []
    for length, n in rows:
        if diag and n is None:
            value = sum(table.get("diagrams", args.g, k, length) for k in range(length // 2 + 1))
            lines.append("diagrams,%d,%d,all,%d" % (args.g, length, value))
            continue
        value = table.get(args.family, args.g, n, length)
        if diag:
            lines.append("diagrams,%d,%d,%d,%d" % (args.g, length, n, value))
        else:
            lines.append("%s,%d,%d,%d" % (args.family, args.g, n, value))
        if args.cross_check:
            routes = _cross_check(args.family, args.g, n, length)
            ok = len(set(routes.values())) == 1
            mismatches += not ok
            checks.append({"g": args.g, "n": n, "len": length, "routes": routes, "agree": ok})
            log.info("cross-check g=%d n=%s len=%s: %s%s", args.g, n, length,
                     " ".join("%s=%d" % kv for kv in routes.items()), "" if ok else "  MISMATCH")
    text = "\n".join(lines) + "\n"
    outputs = _emit(args, text)
    if args.cross_check:
        for c in checks:
            print("# " + " ".join(str(v) for v in c["routes"].values()), file=sys.stderr)
    return {"counts_sha256": _sha256(text), "outputs": outputs, "cross_check": checks,
            "failures": mismatches}


# -- sample ------------------------------------------------------------------

def _table_hash(mode, g, size):
    """Content hash of the exact count table driving a sampling run."""
    if mode == "matching":
        t = split_table(g, size)
        blob = "split g=%d n=%d total=%d count=%d" % (g, size, t.total_weight, t.count)
    else:
        per = [diagram_count(g, size, n) for n in range(size // 2 + 1)]
        blob = "diagrams g=%d len=%d per_n=%s" % (g, size, per)
    return _sha256(blob)


def cmd_sample(args):
    from .sampler import MATCHING, SamplerConfig, sample_batch

    size = args.n if args.mode == MATCHING else args.len
    if size is None:
        raise CommandFailed("--mode %s needs %s" % (args.mode, "--n" if args.mode == MATCHING else "--len"))
    seed = _seed(args)
    config = SamplerConfig(seed, size, args.g, args.mode)
    t0 = time.perf_counter()
    table_hash = _table_hash(args.mode, args.g, size) if args.N else None
    t1 = time.perf_counter()
    items = sample_batch(config, args.N, threads=args.threads, start=args.start)
    t2 = time.perf_counter()
    if args.mode == MATCHING:
        lines = [format_diagram(matching_of(m)) for m in items]
    else:
        lines = [format_diagram(d) for d in items]
    text = "".join(x + "\n" for x in lines)
    outputs = _emit(args, text)
    log.info("sampled %d structures in %.2fs (tables %.2fs)", args.N, t2 - t1, t1 - t0)
    return {"seed": seed, "count_table_sha256": table_hash, "outputs": outputs,
            "output_sha256": _sha256(text),
            "timing": {"tables_s": t1 - t0, "sampling_s": t2 - t1,
                       "per_sample_s": (t2 - t1) / args.N if args.N else None},
            "failures": 0}


# -- decompose / rebuild -------------------------------------------------------

def _read_structure(text):
    """A map in the three-line form, or a matching line 'len1 len2 | i-j ...'."""
    stripped = [x for x in text.strip().splitlines() if x.strip() and not x.startswith("#")]
    if stripped and "|" in stripped[0]:
        if len(stripped) != 1:
            raise CommandFailed("expected one diagram line, got %d" % len(stripped))
        d = parse_diagram(stripped[0])
        mat, _ = matching_part(d)
        if d.unpaired:
            log.warning("ignoring %d unpaired vertices", len(d.unpaired))
        return poincare_dual(mat), "diagram"
    return parse_map(text), "map"


def cmd_decompose(args):
    m, fmt = _read_structure(_read(args.infile))
    ts = m.trisections()
    k = args.trisection
    if not 0 <= k < len(ts):
        raise CommandFailed("trisection index %d out of range: the map has %d trisections" % (k, len(ts)))
    trace = decompose(m, ts[k])
    text = "# format: %s\n# index: %d\n" % (fmt, k) + format_trace(trace)
    return {"outputs": _emit(args, text), "genus": m.genus, "failures": 0}


def cmd_rebuild(args):
    text = _read(args.infile)
    fmt = "map"
    for line in text.splitlines():
        if line.startswith("# format:"):
            fmt = line.partition(":")[2].strip()
    trace = parse_trace(text)
    m, tau = rebuild(trace)
    if trace.trisection_origin >= 0 and tau != trace.trisection_origin:
        raise CommandFailed("rebuilt trisection %d differs from the recorded %d" % (tau, trace.trisection_origin))
    out = format_diagram(matching_of(m)) + "\n" if fmt == "diagram" else format_map(m)
    return {"outputs": _emit(args, out), "trisection": tau, "failures": 0}


# -- stats -------------------------------------------------------------------

def cmd_stats(args):
    from .stats import KINDS, histogram_run, write_histograms

    which = args.which or list(KINDS)
    seed = _seed(args)
    t0 = time.perf_counter()
    hists, violations = histogram_run(args.len, args.g, args.N, seed, which, args.side, args.threads)
    dt = time.perf_counter() - t0
    outputs = []
    if args.out:
        for path in write_histograms(hists, args.out):
            with open(path) as f:
                outputs.append({"path": path, "sha256": _sha256(f.read())})
    else:
        for h in hists.values():
            sys.stdout.write(h.to_csv())
    if violations:
        log.error("%d structures violate the loop-count identity", violations)
    return {"seed": seed, "count_table_sha256": _table_hash("diagram", args.g, args.len),
            "outputs": outputs, "violations": violations,
            "timing": {"total_s": dt, "per_sample_s": dt / args.N if args.N else None},
            "failures": violations}


# -- verify ------------------------------------------------------------------

def cmd_verify(args):
    from .acceptance import SUITES

    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        for check in SUITES[name]:
            r = check()
            print(r.line(), flush=True)
            results.append({"suite": name, "name": r.name, "passed": r.passed,
                            "detail": r.detail, "seconds": r.seconds})
    return {"results": results, "failures": sum(not r["passed"] for r in results)}


# -- parser ------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="bicellular", description="Planted bicellular maps and two-backbone diagrams.")
    p.add_argument("--version", action="version", version="%(prog)s " + __version__)
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    p.add_argument("--config", help="TOML file; [command] tables supply defaults for flags")
    p.add_argument("--manifest", help="write a JSON run manifest here")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="exact counts as CSV")
    c.add_argument("--family", choices=CountTable.FAMILIES, required=True)
    c.add_argument("--g", type=int, default=0)
    c.add_argument("--n", type=_sizes, help="edges or arcs: N or LO:HI")
    c.add_argument("--len", type=_sizes, help="diagram length: N or LO:HI")
    c.add_argument("--out")
    c.add_argument("--cross-check", action="store_true", help="compare every available counting route")
    c.set_defaults(func=cmd_count)

    s = sub.add_parser("sample", help="uniform samples, one diagram line each")
    s.add_argument("--mode", choices=("matching", "diagram"), default="matching")
    s.add_argument("--g", type=int, default=0)
    s.add_argument("--n", type=int)
    s.add_argument("--len", type=int)
    s.add_argument("--N", type=int, default=1)
    s.add_argument("--seed", type=int)
    s.add_argument("--start", type=int, default=0, help="index of the first sample stream")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sample)

    d = sub.add_parser("decompose", help="slice a map at a trisection and print the trace")
    d.add_argument("--in", dest="infile", default="-")
    d.add_argument("--trisection", type=int, default=0)
    d.add_argument("--out")
    d.set_defaults(func=cmd_decompose)

    r = sub.add_parser("rebuild", help="glue a trace back into its map")
    r.add_argument("--in", dest="infile", default="-")
    r.add_argument("--out")
    r.set_defaults(func=cmd_rebuild)

    st = sub.add_parser("stats", help="loop and stack histograms of sampled diagrams")
    st.add_argument("--len", type=int, required=True)
    st.add_argument("--g", type=int, default=0)
    st.add_argument("--N", type=int, default=1000)
    st.add_argument("--seed", type=int)
    st.add_argument("--which", nargs="+", choices=("LOOP_LEN", "PK_LOOP_LEN", "STACK_LEN",
                                                    "BETA_STACKS", "ALL_STACKS"))
    st.add_argument("--side", choices=("ALPHA", "BETA"))
    st.add_argument("--threads", type=int, default=1)
    st.add_argument("--out", help="directory for the CSV files (default: stdout)")
    st.set_defaults(func=cmd_stats)

    v = sub.add_parser("verify", help="run acceptance suites")
    v.add_argument("--suite", choices=("counts", "invariants", "uniformity", "performance", "all"),
                   default="counts")
    v.set_defaults(func=cmd_verify)
    return p, sub.choices


def _apply_config(parser, subparsers, argv):
    """Load --config and install its [command] table as subcommand defaults."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    try:
        config = _load_config(known.config)
    except (OSError, ValueError) as e:
        parser.error("cannot read config: %s" % e)
    command = next((a for a in rest if a in subparsers), None)
    section = config.get(command, {}) if command else {}
    if section:
        sp = subparsers[command]
        actions = {a.dest: a for a in sp._actions}
        for key, value in section.items():
            dest = key.replace("-", "_")
            if dest not in actions:
                parser.error("unknown key %r in [%s]" % (key, command))
            if actions[dest].type is _sizes:
                value = _sizes(value)
            actions[dest].required = False
            sp.set_defaults(**{dest: value})
    return config


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser, subparsers = build_parser()
    config = _apply_config(parser, subparsers, argv)
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    t0 = time.perf_counter()
    try:
        record = args.func(args)
        status = 1 if record.get("failures") else 0
    except (BicellularError, CommandFailed, OSError) as e:
        print("bicellular: error: %s" % e, file=sys.stderr)
        record = {"error": "%s: %s" % (type(e).__name__, e)}
        status = 2
    config_echo = {k: v for k, v in vars(args).items() if k not in ("func", "manifest")}
    manifest = {"command": args.command, "argv": argv, "config": config_echo, "config_file": config,
                "seed": config_echo.get("seed"), "status": status,
                "versions": {"bicellular": __version__, "python": platform.python_version()},
                "wall_time_s": time.perf_counter() - t0}
    manifest.update(record)
    if "seed" in record:
        manifest["seed"] = record["seed"]
    _write_manifest(args, manifest)
    return status


if __name__ == "__main__":
    sys.exit(main())
