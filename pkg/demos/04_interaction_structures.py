"""Loop statistics and shapes of random RNA-RNA interaction structures.

Structures are uniform two-backbone diagrams of fixed length and genus.  The
loop count obeys loops = arcs + 2 - 2g, and every genus-0 structure reduces
to one of eight shapes, four of class E and four of class F.
"""
from collections import Counter

from bicellular.rng import make_rng
from bicellular.sampler import uniform_2backbone_diagram
from bicellular.stats import GENUS0_SHAPES, histogram_run, shape_class, shape_project

d = uniform_2backbone_diagram(40, 1, make_rng(7))
print("a genus-1 structure on 40 vertices:", d)

print("\nloop and stack statistics, length 200, 2000 structures per genus")
for g in range(3):
    hists, bad = histogram_run(200, g, 2000, seed=g)
    loops = hists["LOOP_LEN"]
    mean = sum(v * c for v, c in loops.bins.items()) / loops.total
    stacks = hists["ALL_STACKS"]
    ms = sum(v * c for v, c in stacks.bins.items()) / stacks.total
    pk = hists["PK_LOOP_LEN"].total
    print("  g=%d: %d loops (mean length %.2f), %d crossing loops, %.1f stacks per structure, "
          "%d identity violations" % (g, loops.total, mean, pk, ms, bad))

print("\ngenus-0 shapes")
seen = Counter()
for i in range(5000):
    s = shape_project(uniform_2backbone_diagram(30, 0, make_rng(8, i)))
    seen[s] += 1
for s in GENUS0_SHAPES:
    print("  %-26s class %s  %5d" % (s, shape_class(s), seen[s]))
print("  outside the catalog:", sum(v for s, v in seen.items() if s not in GENUS0_SHAPES))
