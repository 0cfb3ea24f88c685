"""
Sweeping every small graph
==========================

Run the classifier over every labeled graph up to a vertex bound,
fold the verdicts into a (vertices, edges) table, and look for the
smallest graph whose group fails to be coherent.
"""

from graphcoherence import CensusConfig, run_census
from graphcoherence.census import graph_from_key

# with order-2 vertex groups nothing goes wrong through 5 vertices
report = run_census(CensusConfig(flavor="racg", max_vertices=5))
print("order-2 vertex groups, up to 5 vertices")
print(report.table())
print("smallest incoherent cell:", report.smallest_incoherent())
print()

# at 6 vertices a single bad isomorphism class appears, at 9 edges
report = run_census(CensusConfig(flavor="racg", min_vertices=6, max_vertices=6))
print("order-2 vertex groups, exactly 6 vertices")
print(report.table())
print("smallest incoherent cell:", report.smallest_incoherent())
for n, e, key in report.incoherent:
    G = graph_from_key(key)
    print(f"the bad class at ({n}, {e}):", sorted(G.edges))
for n, e, key, codes in report.unknown:
    print(f"unresolved class at ({n}, {e}):", ", ".join(codes))
print()

# infinite cyclic vertex groups fail earlier: the plain square does it
report = run_census(CensusConfig(flavor="raag", max_vertices=4, dedup=True))
print("infinite cyclic vertex groups, up to 4 vertices, one row per class")
print(report.table())
print("smallest incoherent cell:", report.smallest_incoherent())
