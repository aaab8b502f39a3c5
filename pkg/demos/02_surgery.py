"""Slicing a map at a trisection, down to a pair of plane trees, and back.

A genus-2 map is decomposed at each of its six trisections.  Every trace
records the marks of each slicing step and ends in two plane trees; gluing
the trace back recovers the map and the trisection.
"""
from bicellular.map_core import format_map
from bicellular.rng import make_rng
from bicellular.sampler import uniform_bi_matching
from bicellular.surgery import decompose, format_trace, intertwined_triples, rebuild, slice

m = uniform_bi_matching(7, 2, make_rng(42))
print(m)
print(format_map(m))
print("vertex cycles:", m.vertices())
print("trisections: %s, expected 2(g+1) = %d of them" % (m.trisections(), 2 * (m.genus + 1)))

for t in m.trisections():
    trace = decompose(m, t)
    back, tau = rebuild(trace)
    print("\n-- trisection %d --" % t)
    print(format_trace(trace), end="")
    print("rebuilt:", back == m and tau == t)

trip = intertwined_triples(m)[0]
out = slice(m, *trip)
print("\nslicing the triple %s gives %s: %r" % (trip, out.tag, out.result))
