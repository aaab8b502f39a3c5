"""Uniformity of the map and diagram samplers against exhaustive enumeration."""
import time
from collections import Counter

from bicellular.oracle import chi_square_uniformity, enumerate_diagrams, enumerate_planted_bicellular
from bicellular.rng import make_rng
from bicellular.sampler import uniform_2backbone_diagram, uniform_bi_matching

N = 20_000
support = [m.key() for m in enumerate_planted_bicellular(4, 1).instances]
t = time.perf_counter()
keys = [uniform_bi_matching(4, 1, make_rng(1, i)).key() for i in range(N)]
dt = time.perf_counter() - t
r = chi_square_uniformity(keys, support)
print("maps n=4 g=1: %d draws over %d maps in %.1fs" % (N, len(support), dt))
print("  chi2 = %.1f on %d dof (threshold %.1f), p = %.3f, hit %d/%d" % (
    r.statistic, r.dof, r.threshold, r.pvalue, r.hits, r.support))
freq = Counter(Counter(keys).values())
print("  spread of per-map counts: min %d, max %d, expected %.1f" % (min(freq), max(freq), N / len(support)))

support = enumerate_diagrams(8, 1).instances
ds = [uniform_2backbone_diagram(8, 1, make_rng(2, i)) for i in range(N)]
r = chi_square_uniformity(ds, support)
print("diagrams length 8 g=1: %d diagrams, chi2 p = %.3f" % (len(support), r.pvalue))

print("\nlarge samples (linear time per sample)")
for n in (1000, 10_000, 100_000):
    uniform_bi_matching(n, 1, make_rng(0))            # build the split table
    t = time.perf_counter()
    m = uniform_bi_matching(n, 1, make_rng(3))
    print("  n=%6d  %.3fs  genus %d, %d vertices" % (n, time.perf_counter() - t, m.genus, m.vertex_count))
