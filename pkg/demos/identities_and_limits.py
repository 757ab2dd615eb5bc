"""
Binomial sums at regular and degenerate points
==============================================

Both sides of each identity are evaluated exactly.  Where a denominator
vanishes the free symbols are shifted by a small eps and the limit is taken.
"""

from fractions import Fraction

from walkident.identities import eval_identity, registry

for ident in registry().values():
    print(f"{ident.id:4s} {ident.title}")

# ordinary integer and rational points
print(eval_identity("I4", 5, 2, 3))
print(eval_identity("I2", 4, Fraction(1, 2), Fraction(-3, 2)))

# at m = -1 the first summand of I7 is 0/0; its limit is 2
rep = eval_identity("I7", 3, -1, keep_terms=True)
print("I7 at m=-1:", rep.terms, "sum", rep.lhs, "rhs", rep.rhs, rep.reason)

# at m = -3 single terms diverge but their poles cancel in the sum
rep = eval_identity("I8", 4, -3, keep_terms=True)
print("I8 at m=-3:", [str(t) for t in rep.terms], "sum", rep.lhs, "rhs", rep.rhs)

# lower indices that contain m are continued through Gamma functions
for m in (-1, -2, 3):
    print("I6, n=3, m =", m, "->", eval_identity("I6", 3, m).status)

# the two special cases without a free symbol
print([eval_identity("I9", n).lhs for n in range(8)])
