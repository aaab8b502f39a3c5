"""Acceptance checks, shared by the test-suite and ``bicellular verify``.

Each check returns a CheckResult; none of them raises on failure.  Sizes
default to the full acceptance protocol and can be scaled down for smoke runs.
"""
import statistics
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .counting import (
    bicellular_count_paths, bicellular_count_rec, diagram_counts, split_table, unicellular_count,
)
from .duality import dual_inverse, inflation_genus, poincare_dual, unplant, with_unpaired
from .map_core import validate
from .oracle import (
    chi_square_uniformity, enumerate_diagrams, enumerate_planted_bicellular, enumerate_unicellular,
)
from .rng import make_rng
from .sampler import uniform_2backbone_diagram, uniform_bi_matching
from .stats import GENUS0_SHAPES, KINDS, histogram_run, shape_class, shape_project, structure_records
from .surgery import decompose, glue, glue_at, intertwined_triples, rebuild, slice


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self):
        return "%s %s (%.1fs): %s" % ("PASS" if self.passed else "FAIL", self.name, self.seconds, self.detail)


def _timed(name, budget=None):
    def wrap(fn):
        def run(*args, **kw):
            t = time.perf_counter()
            ok, detail = fn(*args, **kw)
            dt = time.perf_counter() - t
            if budget is not None and kw.get("enforce_budget", True) and dt > budget:
                ok = False
                detail += "; over the %gs budget" % budget
            return CheckResult(name, bool(ok), detail, dt)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


def _families(gmax=3, nmax=20):
    out = []
    for g in range(gmax + 1):
        for n in range(max(1, 2 * g), nmax + 1):
            if bicellular_count_rec(g, n) if n <= 12 else split_table(g, n).count:
                out.append((g, n))
    return out


@_timed("1 trisection count", budget=30)
def check_trisections(samples=10_000, seed=1, enforce_budget=True):
    """Sampled maps of genus g carry exactly 2(g+1) trisections."""
    fams = _families()
    bad = 0
    for i in range(samples):
        g, n = fams[i % len(fams)]
        m = uniform_bi_matching(n, g, make_rng(seed, i))
        if m.genus != g or m.n != n or len(m.trisections()) != 2 * (g + 1) or validate(m):
            bad += 1
    return bad == 0, "%d samples over %d (g, n) families, %d exceptions" % (samples, len(fams), bad)


@_timed("2 counting consistency", budget=300)
def check_counts(gmax=3, nmax=12, oracle_n=5, enforce_budget=True):
    """Recursion = path sum (g <= 3, n <= 12) = oracle (g <= 2, n <= 5)."""
    bad = []
    for g in range(gmax + 1):
        for n in range(nmax + 1):
            if bicellular_count_rec(g, n) != bicellular_count_paths(g, n):
                bad.append(("paths", g, n))
    for n in range(1, oracle_n + 1):
        r = enumerate_planted_bicellular(n)
        for g in range(3):
            if len(r.buckets.get(g, [])) != bicellular_count_rec(g, n):
                bad.append(("oracle", g, n))
        u = enumerate_unicellular(n)
        for g in range(3):
            if len(u.buckets.get(g, [])) != unicellular_count(g, n):
                bad.append(("uni", g, n))
    return not bad, "mismatches: %s" % (bad or "none")


@_timed("3 bijection round-trips")
def check_roundtrips(nmax=4):
    """Every surgery round trip on all maps with n <= nmax."""
    n_sg = n_gs = n_rd = 0
    bad = 0
    traces = set()
    for n in range(1, nmax + 1):
        for m in enumerate_planted_bicellular(n).instances:
            for trip in combinations(m.eligible_vertices(), 3):
                r = glue(m, trip)
                n_sg += 1
                bad += slice(r.result, *r.triple).result != m
            for trip in intertwined_triples(m):
                o = slice(m, *trip)
                n_gs += 1
                bad += glue_at(o.result, *o.new_vertices).result != m
            for t in m.trisections():
                tr = decompose(m, t)
                n_rd += 1
                bad += rebuild(tr) != (m, t)
                traces.add(tr.to_text())
    bad += len(traces) != n_rd
    return bad == 0, "slice.glue %d, glue.slice %d, rebuild.decompose %d cases, %d failures" % (
        n_sg, n_gs, n_rd, bad)


@_timed("4 uniform matchings", budget=60)
def check_uniform_matchings(n=5, g=1, samples=100_000, seed=2024, enforce_budget=True):
    support = [m.key() for m in enumerate_planted_bicellular(n, g).instances]
    keys = (uniform_bi_matching(n, g, make_rng(seed, i)).key() for i in range(samples))
    r = chi_square_uniformity(keys, support)
    ok = r.passed and r.hits == r.support
    return ok, "chi2=%.1f dof=%d threshold=%.1f p=%.3f, %d/%d support elements hit" % (
        r.statistic, r.dof, r.threshold, r.pvalue, r.hits, r.support)


@_timed("5 uniform diagrams")
def check_uniform_diagrams(length=10, g=1, samples=100_000, seed=77):
    support = enumerate_diagrams(length, g).instances
    ds = [uniform_2backbone_diagram(length, g, make_rng(seed, i)) for i in range(samples)]
    r = chi_square_uniformity(ds, support)
    dc = diagram_counts(g, length)
    emp = Counter(d.n_arcs for d in ds)
    tv = sum(abs(Fraction(emp.get(n, 0), samples) - p) for n, p in enumerate(dc.distribution())) / 2
    ok = r.passed and float(tv) < 0.01
    return ok, "chi2=%.1f dof=%d threshold=%.1f p=%.3f; arc-count TV=%.4f" % (
        r.statistic, r.dof, r.threshold, r.pvalue, float(tv))


@_timed("6 duality")
def check_duality(max_length=10):
    total = bad = 0
    for length in range(1, max_length + 1):
        for d in enumerate_diagrams(length).instances:
            total += 1
            m = poincare_dual(d)
            back = with_unpaired(unplant(dual_inverse(m)), d.unpaired, d.length)
            gi, _ = inflation_genus(d)
            if back != d or m.genus != gi or poincare_dual(back) != m:
                bad += 1
    return bad == 0, "%d diagrams (length <= %d), %d failures" % (total, max_length, bad)


@_timed("7 loop identity and genus-0 shapes")
def check_loops_and_shapes(samples=10_000, shape_samples=100_000, length=40, shape_length=30, seed=5):
    bad = 0
    for i in range(samples):
        g = i % 4
        d = uniform_2backbone_diagram(length, g, make_rng(seed, i))
        _, _, ok = structure_records(d, g)
        bad += not ok
    catalog = set(GENUS0_SHAPES)
    seen = Counter()
    strays = 0
    for i in range(shape_samples):
        d = uniform_2backbone_diagram(shape_length, 0, make_rng(seed + 1, i))
        s = shape_project(d)
        c = shape_class(s)
        if c is None or s not in catalog:
            strays += 1
        seen[c] += 1
    ok = bad == 0 and strays == 0 and set(seen) <= {"E", "F"}
    return ok, "loop identity failures %d/%d; shape classes %s, %d outside {E, F}" % (
        bad, samples, dict(seen), strays)


@_timed("8 linear time")
def check_linear_time(g=1, sizes=(100_000, 200_000), reps=7, seed=9):
    built = {}
    for n in sizes:
        t = time.perf_counter()
        split_table(g, n)
        built[n] = time.perf_counter() - t
    med = {}
    for n in sizes:
        ts = []
        for i in range(reps):
            rng = make_rng(seed, n, i)
            t = time.perf_counter()
            uniform_bi_matching(n, g, rng)
            ts.append(time.perf_counter() - t)
        med[n] = statistics.median(ts)
    a, b = sizes
    ratio = med[b] / med[a]
    ok = ratio <= 2.6 and med[a] <= 1.0
    return ok, "median %.3fs at n=%d, %.3fs at n=%d, ratio %.2f; table build %s" % (
        med[a], a, med[b], b, ratio, ", ".join("%.1fs" % built[n] for n in sizes))


@_timed("9 statistics pipeline", budget=300)
def check_stats_pipeline(length=500, genera=(0, 1, 2, 3, 4), samples=10_000, seed=11, threads=1,
                         enforce_budget=True):
    viol = 0
    kinds = set()
    for g in genera:
        hists, v = histogram_run(length, g, samples, seed + g, KINDS, threads=threads)
        viol += v
        kinds |= {k for k, h in hists.items() if h.total > 0 or k == "PK_LOOP_LEN"}
        if hists["ALL_STACKS"].total != samples:
            viol += 1
    ok = viol == 0 and kinds == set(KINDS)
    return ok, "%d genera x %d structures, %d violations, kinds %s" % (len(genera), samples, viol, sorted(kinds))


SUITES = {
    "counts": (check_counts,),
    "invariants": (check_trisections, check_roundtrips, check_duality, check_loops_and_shapes),
    "uniformity": (check_uniform_matchings, check_uniform_diagrams),
    "performance": (check_linear_time, check_stats_pipeline),
}


def run_suite(name):
    return [f() for f in SUITES[name]]
