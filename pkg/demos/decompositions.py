"""
Splitting walks at a first or last visit
========================================

Every decomposition writes a count as a sum of products of smaller counts.
"""

from walkident import walks

rep = walks.check_decomposition("cross-left", {"N": 4, "m": 0, "r": 1})
print(rep.lhs, "=", " + ".join(str(t) for t in rep.terms if t), "->", rep.status)

rep = walks.check_decomposition("band", {"N": 4, "m": 0, "r": -1})
print(rep.lhs, "=", " + ".join(str(t) for t in rep.terms if t), "->", rep.status)

# the whole catalogue on its valid grid
for which, d in walks.DECOMPOSITIONS.items():
    grid = walks.decomposition_grid(which, 12)
    statuses = {walks.check_decomposition(which, p).status for p in grid}
    print(f"{which:12s} {len(grid):4d} points {sorted(statuses)}   {d.description}")

# outside its range a decomposition reports why it was skipped
print(walks.check_decomposition("reach-2", {"N": 2, "m": 0}).reason)

# the S recursion breaks where the barrier sits one above the end point
for point in [(4, 0, -1), (6, 2, 3)]:
    rep = walks.check_recursion(*point)
    print("recursion at", point, rep.lhs, "vs", rep.rhs, rep.status)
